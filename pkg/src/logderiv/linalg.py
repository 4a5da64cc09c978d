"""Exact linear algebra over Q and Q(sqrt d), plus the two-prime modular path.

The exact route clears denominators and runs fraction-free (Bareiss) forward
elimination over Z or Z[sqrt d] -- every division is checked to be exact --
followed by field back-substitution.  The modular route reduces entries mod
deterministic 31-bit-plus primes and defers to the _kernels package; two
agreeing primes mark a result as certified.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterator, Sequence

import numpy as np

from . import _kernels
from .scalar import Scalar

try:
    from gmpy2 import gcd as _gcd
    from gmpy2 import mpz
except ImportError:  # pragma: no cover
    from math import gcd as _gcd

    mpz = int

_ZERO = Scalar(Fraction(0))
_ONE = Scalar(Fraction(1))

Vector = list[Scalar]
Matrix = Sequence[Vector]

MAX_PRIME = _kernels.MAX_PRIME


class UnluckyPrimeError(ArithmeticError):
    """A modulus hit a denominator or a missing square root; re-draw the prime."""


# ---------------------------------------------------------------------------
# exact elimination


def _clear_rows(rows: Matrix) -> tuple[list[list], int | None]:
    """Scale each row to integer entries; quadratic entries become (a, b) pairs."""
    d = None
    for row in rows:
        for x in row:
            if x.d is not None:
                d = x.d
                break
        if d is not None:
            break
    cleared = []
    for row in rows:
        den = lcm(*(x.a.denominator for x in row), *(x.b.denominator for x in row), 1)
        if d is None:
            cleared.append([mpz(x.a.numerator * (den // x.a.denominator)) for x in row])
        else:
            cleared.append(
                [
                    (
                        mpz(x.a.numerator * (den // x.a.denominator)),
                        mpz(x.b.numerator * (den // x.b.denominator)),
                    )
                    for x in row
                ]
            )
    return cleared, d


def _bareiss_int(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    pivots: list[int] = []
    r = 0
    prev = mpz(1)
    for c in range(ncols):
        if r == len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        pc = prow[c]
        for i in range(r + 1, len(rows)):
            row = rows[i]
            f = row[c]
            row[c] = mpz(0)
            for j in range(c + 1, ncols):
                q, rem = divmod(row[j] * pc - f * prow[j], prev)
                if rem:
                    raise ArithmeticError("inexact Bareiss division")
                row[j] = q
        prev = pc
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _quad_mul(x, y, d):
    return (x[0] * y[0] + d * x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _quad_div(x, w, d):
    """Exact division in Z[sqrt d]; raises when the quotient leaves the ring."""
    n = w[0] * w[0] - d * w[1] * w[1]
    za = x[0] * w[0] - d * x[1] * w[1]
    zb = x[1] * w[0] - x[0] * w[1]
    qa, ra = divmod(za, n)
    qb, rb = divmod(zb, n)
    if ra or rb:
        raise ArithmeticError("inexact Bareiss division")
    return (qa, qb)


def _bareiss_quad(rows: list[list], ncols: int, d: int) -> tuple[list[list], list[int]]:
    zero = (mpz(0), mpz(0))
    pivots: list[int] = []
    r = 0
    prev = (mpz(1), mpz(0))
    for c in range(ncols):
        if r == len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != zero), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        pc = prow[c]
        for i in range(r + 1, len(rows)):
            row = rows[i]
            f = row[c]
            row[c] = zero
            for j in range(c + 1, ncols):
                a = _quad_mul(row[j], pc, d)
                b = _quad_mul(f, prow[j], d)
                row[j] = _quad_div((a[0] - b[0], a[1] - b[1]), prev, d)
        prev = pc
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _to_scalar_rows(rows: list[list], d: int | None) -> list[Vector]:
    if d is None:
        return [[Scalar(Fraction(int(x))) for x in row] for row in rows]
    return [[Scalar(Fraction(int(a)), Fraction(int(b)), d) for a, b in row] for row in rows]


def rref(rows: Matrix, ncols: int | None = None) -> tuple[list[Vector], list[int]]:
    """Exact reduced row echelon form; returns (nonzero rows, pivot columns)."""
    if not rows:
        return [], []
    n = ncols if ncols is not None else len(rows[0])
    cleared, d = _clear_rows(rows)
    if d is None:
        eche, pivots = _bareiss_int(cleared, n)
    else:
        eche, pivots = _bareiss_quad(cleared, n, d)
    out = _to_scalar_rows(eche, d)
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        inv = out[k][c].inverse()
        out[k] = [x * inv for x in out[k]]
        for i in range(k):
            f = out[i][c]
            if f:
                out[i] = [a - f * b for a, b in zip(out[i], out[k])]
    return out, pivots


def rank(rows: Matrix, ncols: int | None = None) -> int:
    if not rows:
        return 0
    n = ncols if ncols is not None else len(rows[0])
    cleared, d = _clear_rows(rows)
    if d is None:
        _, pivots = _bareiss_int(cleared, n)
    else:
        _, pivots = _bareiss_quad(cleared, n, d)
    return len(pivots)


def kernel_basis(rows: Matrix, ncols: int) -> tuple[list[Vector], list[int]]:
    """Exact right-kernel basis in reduced echelon form.

    Returns (basis, free_columns).  Basis vector k has a 1 in free_columns[k]
    and zeros in the other free columns, so for any v in the kernel the
    coordinates with respect to the basis are [v[c] for c in free_columns].
    """
    R, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [_ZERO] * ncols
        v[f] = _ONE
        for i, c in enumerate(pivots):
            if R[i][f]:
                v[c] = -R[i][f]
        basis.append(v)
    return basis, free


class ScalarEchelon:
    """Incremental exact row space for rank growth and membership queries."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[Vector] = []
        self.pivots: list[int] = []

    def residual(self, v: Vector) -> Vector:
        v = list(v)
        for row, c in zip(self.rows, self.pivots):
            f = v[c]
            if f:
                for j in range(c, self.ncols):
                    if row[j]:
                        v[j] = v[j] - f * row[j]
        return v

    def add(self, v: Vector) -> bool:
        """Insert v; True when it enlarged the span."""
        res = self.residual(v)
        c = next((j for j, x in enumerate(res) if x), None)
        if c is None:
            return False
        inv = res[c].inverse()
        row = [x * inv for x in res]
        at = next((k for k, pc in enumerate(self.pivots) if pc > c), len(self.pivots))
        self.rows.insert(at, row)
        self.pivots.insert(at, c)
        return True

    def contains(self, v: Vector) -> bool:
        return not any(self.residual(v))

    @property
    def rank(self) -> int:
        return len(self.rows)


def complement_in(U: Matrix, W: Matrix) -> tuple[list[int], list[Vector]]:
    """Extend a basis of span(U) to span(W) by members of W.

    Requires span(U) <= span(W).  Returns the selected W indices (chosen
    greedily in W order, so the selection is deterministic) and the matching
    coordinate vectors with respect to W.
    """
    if W and U and len(U[0]) != len(W[0]):
        raise ValueError("ambient dimension mismatch")
    ncols = len(W[0]) if W else (len(U[0]) if U else 0)
    eche = ScalarEchelon(ncols)
    for u in U:
        eche.add(u)
    indices = []
    for i, w in enumerate(W):
        if eche.add(w):
            indices.append(i)
    coords = []
    for i in indices:
        v = [_ZERO] * len(W)
        v[i] = _ONE
        coords.append(v)
    return indices, coords


def solve_affine(rows: Matrix, rhs: Vector) -> Vector | None:
    """One exact solution of rows * x = rhs (free variables set to 0), or None."""
    if not rows:
        return [] if not any(rhs) else None
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [_ZERO] * n
    for i, c in enumerate(pivots):
        x[c] = R[i][n]
    return x


# ---------------------------------------------------------------------------
# modular path


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sqrt_mod(a: int, p: int) -> int:
    """Tonelli-Shanks square root of a mod p; raises UnluckyPrimeError if none."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise UnluckyPrimeError(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def prime_stream(d: int | None = None, start: int = 2**31 + 1) -> Iterator[int]:
    """Deterministic primes above 2**31, skipping those where sqrt(d) is missing."""
    n = start | 1
    while n <= MAX_PRIME:
        if _is_probable_prime(n) and (d is None or (d % n and pow(d, (n - 1) // 2, n) == 1)):
            yield n
        n += 2
    raise UnluckyPrimeError("prime window exhausted")


def default_primes(d: int | None = None, count: int = 2) -> list[int]:
    stream = prime_stream(d)
    return [next(stream) for _ in range(count)]


def residue_matrix(rows: Matrix, p: int, d: int | None = None) -> np.ndarray:
    """Entrywise residues as an int64 array; UnluckyPrimeError on bad denominators."""
    s = sqrt_mod(d, p) if d is not None else None
    out = np.zeros((len(rows), len(rows[0]) if rows else 0), dtype=np.int64)
    try:
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                if x:
                    out[i, j] = x.residue(p, s)
    except ZeroDivisionError as exc:
        raise UnluckyPrimeError(str(exc)) from None
    return out


def modular_rank(rows: Matrix, primes: Sequence[int], d: int | None = None) -> tuple[int, bool]:
    """Rank mod each prime: (agreed rank, certified).  Never exceeds the exact rank."""
    if len(primes) != 2:
        raise ValueError("exactly two primes expected")
    ranks = []
    for p in primes:
        mat = residue_matrix(rows, p, d)
        ranks.append(_kernels.rank_mod(mat, p))
    return max(ranks), ranks[0] == ranks[1]
