"""Logarithmic derivation modules: graded pieces, generators, resolutions.

D(A) consists of the derivations sending every defining form into its own
ideal; D0(A) is the kernel of theta -> theta(Q) for the defining polynomial
Q of the arrangement.  Derivations of degree d live in the coordinate space
indexed by (component i, degree-d monomial m), and every computation here is
a kernel or span statement about that space.

Exact arithmetic carries the whole computation for ell <= 3.  In higher
dimension the graded dimensions are computed modulo two independent primes
that must agree, with one exact spot check at the first generator degree;
only dimension data is reported on that route.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ._kernels import kernel_basis_mod, matmul_mod
from .arrangement import Arrangement, restrict
from .linalg import (
    ScalarEchelon,
    UnluckyPrimeError,
    kernel_basis,
    prime_stream,
    rank,
    sqrt_mod,
)
from .poly import (
    Derivation,
    HomogPoly,
    LinearForm,
    divides,
    monomial_index,
    monomials_of_degree,
    reduce_mod,
)
from .scalar import Scalar

log = logging.getLogger(__name__)

_ZERO = Scalar(Fraction(0))
_ONE = Scalar(Fraction(1))

MAX_MODULAR_PRIMES = 6


def _dim_s(ell: int, d: int) -> int:
    if d < 0:
        return 0
    return len(monomials_of_degree(ell, d))


def _piece_cols(ell: int, d: int) -> int:
    return ell * _dim_s(ell, d)


@lru_cache(maxsize=None)
def _shift_maps(ell: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Column maps for multiplication by each variable, degree d to d+1."""
    src = monomials_of_degree(ell, d)
    idx = monomial_index(ell, d + 1)
    m1, m2 = len(src), len(idx)
    maps = []
    for j in range(ell):
        one = []
        for i in range(ell):
            base = i * m2
            for m in src:
                mm = list(m)
                mm[j] += 1
                one.append(base + idx[tuple(mm)])
        maps.append(tuple(one))
    return tuple(maps)


@lru_cache(maxsize=None)
def _poly_shift_maps(ell: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Same maps for a single polynomial block instead of a derivation."""
    src = monomials_of_degree(ell, d)
    idx = monomial_index(ell, d + 1)
    maps = []
    for j in range(ell):
        one = []
        for m in src:
            mm = list(m)
            mm[j] += 1
            one.append(idx[tuple(mm)])
        maps.append(tuple(one))
    return tuple(maps)


def _shift_vec(vec: list, target_len: int, cmap: tuple[int, ...]) -> list:
    out = [_ZERO] * target_len
    for c, v in enumerate(vec):
        if v:
            out[cmap[c]] = v
    return out


# ---------------------------------------------------------------------------
# condition matrices, stored sparsely as (row, col, Scalar) triples


def _reduction_table(alpha: LinearForm, ell: int, d: int) -> list[dict[int, Scalar]]:
    """Coefficients of x^m modulo alpha, per degree-d monomial m.

    Entry t maps reduced-monomial indices (ell-1 variables, degree d) to the
    coefficient contributed by monomial number t; alpha's pivot variable is
    substituted away, the others are reindexed in increasing order.
    """
    k = alpha.pivot_index()
    rest = [i for i in range(ell) if i != k]
    ck = alpha.coeffs[k]
    sub = HomogPoly(
        ell - 1,
        1,
        {
            tuple(1 if t == j else 0 for t in range(ell - 1)): -(alpha.coeffs[i] / ck)
            for j, i in enumerate(rest)
            if alpha.coeffs[i]
        },
    )
    powers = [HomogPoly.one(ell - 1)]
    for _ in range(d):
        powers.append(powers[-1] * sub)
    ridx = monomial_index(ell - 1, d)
    out = []
    for m in monomials_of_degree(ell, d):
        e = m[k]
        mm = tuple(m[i] for i in rest)
        entry: dict[int, Scalar] = {}
        for pm, pc in powers[e].terms.items():
            key = tuple(a + b for a, b in zip(pm, mm))
            pos = ridx[key]
            s = entry.get(pos, _ZERO) + pc
            if s:
                entry[pos] = s
            else:
                entry.pop(pos, None)
        out.append(entry)
    return out


@lru_cache(maxsize=8)
def _membership_data(A: Arrangement, d: int) -> tuple[tuple[tuple[int, int, Scalar], ...], int, int]:
    """Linear conditions cutting D(A)_d out of degree-d derivations.

    For each hyperplane, theta(alpha) reduced modulo alpha must vanish; one
    row per reduced monomial.  Returns (triples, nrows, ncols).
    """
    ell = A.ell
    M = _dim_s(ell, d)
    ncols = ell * M
    nred = _dim_s(ell - 1, d) if ell > 1 else (1 if d == 0 else 0)
    triples: list[tuple[int, int, Scalar]] = []
    for h, f in enumerate(A.forms):
        table = _reduction_table(f, ell, d)
        base_row = h * nred
        for i in range(ell):
            ci = f.coeffs[i]
            if not ci:
                continue
            col_base = i * M
            for t, entry in enumerate(table):
                col = col_base + t
                for pos, val in entry.items():
                    triples.append((base_row + pos, col, ci * val))
    return tuple(triples), A.size * nred, ncols


@lru_cache(maxsize=4)
def _q_partials(A: Arrangement) -> tuple[HomogPoly, ...]:
    Q = A.defining_poly()
    return tuple(Q.partial(i) for i in range(A.ell))


@lru_cache(maxsize=4)
def _q_leading_monomial(A: Arrangement) -> tuple[int, ...]:
    """Lexicographically largest monomial of Q; the order is multiplicative."""
    Q = A.defining_poly()
    if not Q.terms:
        raise ValueError("empty arrangement has no leading monomial")
    return max(Q.terms)


@lru_cache(maxsize=8)
def _q_data(A: Arrangement, d: int) -> tuple[tuple[tuple[int, int, Scalar], ...], int, int]:
    """Conditions equivalent to theta(Q) = 0 on the subspace D(A)_d.

    On D(A)_d the value theta(Q) is always Q times a polynomial of degree
    d-1, and multiplication by Q is triangular for the graded lexicographic
    order.  The coefficients of theta(Q) at LM(Q) * mu for mu of degree d-1
    therefore vanish exactly when theta(Q) does, which needs dim S_{d-1}
    rows instead of one row per degree-(d + n - 1) monomial.
    """
    ell = A.ell
    M = _dim_s(ell, d)
    ncols = ell * M
    if d == 0 or A.size == 0:
        return (), 0, ncols
    lead = _q_leading_monomial(A)
    partials = _q_partials(A)
    mons = monomials_of_degree(ell, d)
    triples: list[tuple[int, int, Scalar]] = []
    for r, mu in enumerate(monomials_of_degree(ell, d - 1)):
        target = tuple(a + b for a, b in zip(lead, mu))
        for i in range(ell):
            dq = partials[i].terms
            if not dq:
                continue
            col_base = i * M
            for t, m in enumerate(mons):
                need = tuple(a - b for a, b in zip(target, m))
                if any(e < 0 for e in need):
                    continue
                val = dq.get(need)
                if val:
                    triples.append((r, col_base + t, val))
    return tuple(triples), _dim_s(ell, d - 1), ncols


def _materialize(triples, nrows: int, ncols: int) -> list[list[Scalar]]:
    rows = [[_ZERO] * ncols for _ in range(nrows)]
    for r, c, v in triples:
        rows[r][c] = rows[r][c] + v
    return rows


def _residue_from_triples(triples, nrows: int, ncols: int, p: int, sqrt_d: int | None) -> np.ndarray:
    mat = np.zeros((nrows, ncols), dtype=np.int64)
    try:
        for r, c, v in triples:
            mat[r, c] = (mat[r, c] + v.residue(p, sqrt_d)) % p
    except ZeroDivisionError as exc:
        raise UnluckyPrimeError(str(exc)) from None
    return mat


# ---------------------------------------------------------------------------
# graded pieces


@dataclass
class PieceBasis:
    """Exact basis rows of a graded piece, with unit coordinate columns.

    Every basis row has a 1 in its own unit column and 0 in the others, so
    the coordinates of any vector v in the span are [v[c] for c in
    unit_cols].  dim_ambient records dim D(A)_d even in mode D0.
    """

    degree: int
    vectors: list[list[Scalar]]
    unit_cols: list[int]
    dim_ambient: int

    @property
    def dim(self) -> int:
        return len(self.vectors)


@dataclass
class GradedPiece:
    degree: int
    basis: list[Derivation]

    @property
    def dim(self) -> int:
        return len(self.basis)


@lru_cache(maxsize=64)
def _piece_exact(A: Arrangement, d: int, mode: str) -> PieceBasis:
    ell = A.ell
    triples, nr, nc = _membership_data(A, d)
    rows = _materialize(triples, nr, nc)
    K, free = kernel_basis(rows, nc)
    if mode == "D" or d == 0:
        return PieceBasis(d, K, free, len(K))
    qt, qr, _ = _q_data(A, d)
    k = len(K)
    C = [[_ZERO] * qr for _ in range(k)]
    for r, c, v in qt:
        for s in range(k):
            if K[s][c]:
                C[s][r] = C[s][r] + K[s][c] * v
    Ct = [[C[s][r] for s in range(k)] for r in range(qr)]
    W, wfree = kernel_basis(Ct, k)
    vectors = []
    for wrow in W:
        acc = [_ZERO] * nc
        for s, coef in enumerate(wrow):
            if coef:
                Ks = K[s]
                for c in range(nc):
                    if Ks[c]:
                        acc[c] = acc[c] + coef * Ks[c]
        vectors.append(acc)
    unit_cols = [free[c] for c in wfree]
    return PieceBasis(d, vectors, unit_cols, len(K))


def graded_piece(A: Arrangement, d: int, mode: str = "D") -> GradedPiece:
    """Exact basis of D(A)_d (mode "D") or D0(A)_d (mode "D0")."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if mode not in ("D", "D0"):
        raise ValueError(f"unknown mode {mode!r}")
    piece = _piece_exact(A, d, mode)
    return GradedPiece(d, [Derivation.from_vector(A.ell, d, v) for v in piece.vectors])


# ---------------------------------------------------------------------------
# generator scans


@dataclass(frozen=True)
class DegreeStat:
    dim_module: int
    dim_ambient: int
    span: int
    new: int


@dataclass
class GeneratorSet:
    """Minimal generators of D(A) or D0(A) with per-degree diagnostics.

    On the modular route `generators` is empty: only degree data is
    certified there.  euler_index points at the Euler derivation entry in
    mode D.
    """

    mode: str
    degrees: list[int]
    generators: list[Derivation]
    euler_index: int | None
    certified: str
    stats: dict[int, DegreeStat]
    boundary_extended: bool
    bound: int

    @property
    def exp(self) -> list[int]:
        return sorted(self.degrees)


def _search_bound(A: Arrangement) -> int:
    arank = rank([f.coeffs for f in A.forms], A.ell) if A.size else 0
    return max(A.size - arank + 1, 1)


def _euler_vector(ell: int) -> list[Scalar]:
    M = _dim_s(ell, 1)
    vec = [_ZERO] * (ell * M)
    idx = monomial_index(ell, 1)
    for i in range(ell):
        m = tuple(1 if t == i else 0 for t in range(ell))
        vec[i * M + idx[m]] = _ONE
    return vec


def _scan_exact(A: Arrangement, mode: str):
    ell = A.ell
    bound = _search_bound(A)
    last = bound
    extended = False
    degrees: list[int] = []
    gen_vectors: list[tuple[int, list[Scalar]]] = []
    euler_index: int | None = None
    stats: dict[int, DegreeStat] = {}
    span_basis: list[list[Scalar]] = []
    d = 0
    while d <= last:
        piece = _piece_exact(A, d, mode)
        k = piece.dim
        nc = _piece_cols(ell, d)
        prods: list[list[Scalar]] = []
        if d > 0 and span_basis:
            maps = _shift_maps(ell, d - 1)
            for j in range(ell):
                cmap = maps[j]
                for v in span_basis:
                    prods.append(_shift_vec(v, nc, cmap))
        eche = ScalarEchelon(k)
        next_span: list[list[Scalar]] = []
        for v in prods:
            lam = [v[c] for c in piece.unit_cols]
            if eche.add(lam):
                next_span.append(v)
        span_rank = eche.rank
        new_here = 0
        if mode == "D" and d == 1 and A.size > 0:
            E = _euler_vector(ell)
            lam = [E[c] for c in piece.unit_cols]
            if eche.add(lam):
                euler_index = len(gen_vectors)
                degrees.append(d)
                gen_vectors.append((d, E))
                next_span.append(E)
                new_here += 1
        for r in range(k):
            unit = [_ZERO] * k
            unit[r] = _ONE
            if eche.add(unit):
                degrees.append(d)
                gen_vectors.append((d, piece.vectors[r]))
                next_span.append(piece.vectors[r])
                new_here += 1
        stats[d] = DegreeStat(k, piece.dim_ambient, span_rank, new_here)
        if new_here and d == bound and not extended:
            extended = True
            last = bound + 1
            log.warning(
                "generators of %s at the regularity bound %d; extending the scan one degree",
                mode,
                bound,
            )
        elif new_here and extended and d == last:
            raise ArithmeticError(
                f"generator found beyond the regularity bound {bound}; module data inconsistent"
            )
        span_basis = next_span
        d += 1
    return degrees, gen_vectors, euler_index, stats, extended, bound


class _ModEchelon:
    """Incremental row echelon over Z/p on int64 numpy rows."""

    def __init__(self, ncols: int, p: int):
        self.ncols = ncols
        self.p = p
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def add(self, v: np.ndarray) -> bool:
        p = self.p
        v = v % p
        for row, c in zip(self.rows, self.pivots):
            f = int(v[c])
            if f:
                v = (v - f * row) % p
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        c = int(nz[0])
        inv = pow(int(v[c]), p - 2, p)
        v = (v * inv) % p
        at = next((i for i, pc in enumerate(self.pivots) if pc > c), len(self.pivots))
        self.rows.insert(at, v)
        self.pivots.insert(at, c)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def _piece_mod(A: Arrangement, d: int, mode: str, p: int, sqrt_d: int | None):
    """Modular analogue of _piece_exact: (basis matrix, unit columns, dim D_d)."""
    triples, nr, nc = _membership_data(A, d)
    T = _residue_from_triples(triples, nr, nc, p, sqrt_d)
    K, free = kernel_basis_mod(T, p)
    if mode == "D" or d == 0:
        return K, list(free), len(K)
    qt, qr, _ = _q_data(A, d)
    L = _residue_from_triples(qt, qr, nc, p, sqrt_d)
    C = matmul_mod(np.ascontiguousarray(K), np.ascontiguousarray(L.T), p)
    W, wfree = kernel_basis_mod(np.ascontiguousarray(C.T), p)
    M0 = matmul_mod(np.ascontiguousarray(W), np.ascontiguousarray(K), p)
    unit_cols = [free[c] for c in wfree]
    return M0, unit_cols, len(K)


def _scan_one_prime(A: Arrangement, mode: str, p: int):
    ell = A.ell
    sqrt_d = sqrt_mod(A.ctx.d % p, p) if A.ctx.d is not None else None
    bound = _search_bound(A)
    last = bound
    extended = False
    degrees: list[int] = []
    stats: dict[int, DegreeStat] = {}
    span_rows: np.ndarray | None = None
    d = 0
    while d <= last:
        basis, unit_cols, dim_ambient = _piece_mod(A, d, mode, p, sqrt_d)
        k = len(basis)
        nc = _piece_cols(ell, d)
        prods: list[np.ndarray] = []
        if d > 0 and span_rows is not None and len(span_rows):
            maps = _shift_maps(ell, d - 1)
            for j in range(ell):
                cmap = np.asarray(maps[j], dtype=np.int64)
                out = np.zeros((len(span_rows), nc), dtype=np.int64)
                out[:, cmap] = span_rows
                prods.append(out)
        eche = _ModEchelon(k, p)
        keep: list[np.ndarray] = []
        if prods:
            stacked = np.vstack(prods)
            cols = np.asarray(unit_cols, dtype=np.int64)
            lams = stacked[:, cols] if k else np.zeros((len(stacked), 0), dtype=np.int64)
            for t in range(len(stacked)):
                if eche.add(lams[t]):
                    keep.append(stacked[t])
        span_rank = eche.rank
        new_here = 0
        if mode == "D" and d == 1 and A.size > 0:
            E = np.zeros(nc, dtype=np.int64)
            idx = monomial_index(ell, 1)
            M = _dim_s(ell, 1)
            for i in range(ell):
                m = tuple(1 if t == i else 0 for t in range(ell))
                E[i * M + idx[m]] = 1
            lam = E[np.asarray(unit_cols, dtype=np.int64)] if k else np.zeros(0, dtype=np.int64)
            if eche.add(lam):
                degrees.append(d)
                keep.append(E)
                new_here += 1
        for r in range(k):
            unit = np.zeros(k, dtype=np.int64)
            unit[r] = 1
            if eche.add(unit):
                degrees.append(d)
                keep.append(np.asarray(basis[r], dtype=np.int64))
                new_here += 1
        stats[d] = DegreeStat(k, dim_ambient, span_rank, new_here)
        if new_here and d == bound and not extended:
            extended = True
            last = bound + 1
            log.warning(
                "generators of %s at the regularity bound %d; extending the scan one degree",
                mode,
                bound,
            )
        elif new_here and extended and d == last:
            raise ArithmeticError(
                f"generator found beyond the regularity bound {bound}; module data inconsistent"
            )
        span_rows = np.vstack(keep) if keep else np.zeros((0, nc), dtype=np.int64)
        d += 1
    return degrees, stats, extended, bound


def _scan_modular(A: Arrangement, mode: str):
    """Dimension scan modulo independent primes until two runs agree."""
    stream = prime_stream(A.ctx.d)
    results = []
    used = []
    for _ in range(MAX_MODULAR_PRIMES):
        p = next(stream)
        try:
            res = _scan_one_prime(A, mode, p)
        except UnluckyPrimeError:
            continue
        for other in results:
            if other == res:
                return res, True
        results.append(res)
        used.append(p)
    raise ArithmeticError(
        f"no two of the primes {used} agreed on the {mode} dimension data"
    )


def min_generators(A: Arrangement, mode: str = "D") -> GeneratorSet:
    """Minimal generator degrees (and vectors, when exact) of D(A) or D0(A).

    The scan runs degree by degree up to the regularity bound, spanning the
    image of already-found generators under multiplication by the variables
    and emitting a complement basis as new generators.  A generator at the
    bound itself extends the scan one degree to confirm nothing follows.
    """
    if mode not in ("D", "D0"):
        raise ValueError(f"unknown mode {mode!r}")
    if A.ell <= 3:
        degrees, gen_vectors, euler_index, stats, extended, bound = _scan_exact(A, mode)
        gens = [Derivation.from_vector(A.ell, d, v) for d, v in gen_vectors]
        return GeneratorSet(mode, degrees, gens, euler_index, "exact", stats, extended, bound)
    (degrees, stats, extended, bound), _certified = _scan_modular(A, mode)
    _spot_check(A, mode, stats)
    euler_index = degrees.index(1) if (mode == "D" and 1 in degrees) else None
    return GeneratorSet(mode, degrees, [], euler_index, "modular", stats, extended, bound)


def _spot_check(A: Arrangement, mode: str, stats: dict[int, DegreeStat]) -> None:
    """Exact confirmation of the modular dimension at the first generator degree."""
    first = next((d for d in sorted(stats) if stats[d].new), None)
    if first is None:
        return
    piece = _piece_exact(A, first, mode)
    if piece.dim != stats[first].dim_module:
        raise ArithmeticError(
            f"exact dimension {piece.dim} at degree {first} contradicts the modular value "
            f"{stats[first].dim_module}"
        )


# ---------------------------------------------------------------------------
# resolutions (syzygies for ell = 3)


@dataclass
class ResolutionSummary:
    mode: str
    f0: list[int]
    f1: list[int] | None
    certified: str
    boundary_extended: bool
    generators: GeneratorSet


def _monomial_products(ell: int, gen_vectors: list[tuple[int, list[Scalar]]], d: int, cache: dict):
    """Vectors of x^mu * g for every generator g and monomial mu with total degree d.

    cache maps (gen index, degree) -> list of vectors ordered like
    monomials_of_degree(ell, degree - gen degree); built incrementally from
    the previous degree, peeling the last variable that divides mu.
    """
    for gi, (ad, vec) in enumerate(gen_vectors):
        if d < ad or (gi, d) in cache:
            continue
        if d == ad:
            cache[(gi, d)] = [vec]
            continue
        prev = cache[(gi, d - 1)]
        src_idx = monomial_index(ell, d - 1 - ad)
        maps = _shift_maps(ell, d - 1)
        nc = _piece_cols(ell, d)
        outs = []
        for mu in monomials_of_degree(ell, d - ad):
            j = max(t for t in range(ell) if mu[t] > 0)
            mm = list(mu)
            mm[j] -= 1
            outs.append(_shift_vec(prev[src_idx[tuple(mm)]], nc, maps[j]))
        cache[(gi, d)] = outs


def resolution(A: Arrangement, mode: str = "D") -> ResolutionSummary:
    """Generator and first-syzygy degrees of the chosen module.

    Syzygies are computed only in three variables, where the module has
    projective dimension at most one; in higher dimension f1 is None.  The
    result is cross-checked against the Hilbert series of the graded pieces,
    and a mismatch is a hard failure.
    """
    gens = min_generators(A, mode)
    f0 = gens.exp
    if A.ell != 3 or gens.certified != "exact":
        return ResolutionSummary(mode, f0, None, gens.certified, gens.boundary_extended, gens)
    ell = A.ell
    gen_vectors = [(d, g.to_vector()) for d, g in zip(gens.degrees, gens.generators)]
    a_min = min(gens.degrees) if gens.degrees else 0
    bound = _search_bound(A) + 1
    last = bound
    extended = False
    f1: list[int] = []
    cache: dict = {}
    rel_span: list[list[Scalar]] = []
    rel_layout_prev: list[tuple[int, int]] = []
    d = a_min
    while d <= last:
        _monomial_products(ell, gen_vectors, d, cache)
        layout = []
        offset = 0
        for ad, _ in gen_vectors:
            width = _dim_s(ell, d - ad)
            layout.append((offset, width))
            offset += width
        total = offset
        nc = _piece_cols(ell, d)
        cols: list[list[Scalar]] = []
        for gi, (ad, _) in enumerate(gen_vectors):
            if d >= ad:
                cols.extend(cache[(gi, d)])
        rows = [[col[r] for col in cols] for r in range(nc)]
        R, free = kernel_basis(rows, total)
        piece_dim = _piece_exact(A, d, mode).dim
        if total - len(R) != piece_dim:
            raise ArithmeticError(
                f"generators span {total - len(R)} of the {piece_dim} dimensions in degree {d}"
            )
        prods: list[list[Scalar]] = []
        if rel_span:
            for j in range(ell):
                for v in rel_span:
                    out = [_ZERO] * total
                    for (po, pw), (no, _nw), (ad, _g) in zip(
                        rel_layout_prev, layout, gen_vectors
                    ):
                        if pw == 0:
                            continue
                        cmap = _poly_shift_maps(ell, d - 1 - ad)[j]
                        for t in range(pw):
                            val = v[po + t]
                            if val:
                                out[no + cmap[t]] = val
                    prods.append(out)
        eche = ScalarEchelon(len(R))
        next_span: list[list[Scalar]] = []
        for v in prods:
            lam = [v[c] for c in free]
            if eche.add(lam):
                next_span.append(v)
        new_here = 0
        for r in range(len(R)):
            unit = [_ZERO] * len(R)
            unit[r] = _ONE
            if eche.add(unit):
                f1.append(d)
                next_span.append(R[r])
                new_here += 1
        if new_here and d == bound and not extended:
            extended = True
            last = bound + 1
            log.warning("syzygies at the bound %d; extending the scan one degree", bound)
        elif new_here and extended and d == last:
            raise ArithmeticError(
                f"syzygy found beyond the bound {bound}; module data inconsistent"
            )
        rel_span = next_span
        rel_layout_prev = layout
        d += 1
    _hilbert_check(A, mode, f0, f1, last)
    expected_rank = A.ell if (mode == "D" or A.size == 0) else A.ell - 1
    if len(f0) - len(f1) != expected_rank:
        raise ArithmeticError(
            f"resolution ranks are inconsistent: {len(f0)} generators, {len(f1)} syzygies"
        )
    return ResolutionSummary(mode, f0, sorted(f1), "exact", gens.boundary_extended or extended, gens)


def _hilbert_check(A: Arrangement, mode: str, f0: list[int], f1: list[int], dmax: int) -> None:
    """Hilbert series identity between graded dimensions and the resolution.

    sum_d dim M_d t^d * (1-t)^ell must equal sum t^a_i - sum t^b_j through
    degree dmax; a mismatch means the generator or syzygy data is wrong.
    """
    ell = A.ell
    dims = [_piece_exact(A, d, mode).dim for d in range(dmax + 1)]
    binom = [1]
    for _ in range(ell):
        binom = [a + b for a, b in zip(binom + [0], [0] + binom)]
    signs = [((-1) ** k) * binom[k] for k in range(ell + 1)]
    lhs = []
    for d in range(dmax + 1):
        acc = 0
        for k in range(min(ell, d) + 1):
            acc += signs[k] * dims[d - k]
        lhs.append(acc)
    rhs = [0] * (dmax + 1)
    for a in f0:
        if a <= dmax:
            rhs[a] += 1
    for b in f1:
        if b <= dmax:
            rhs[b] -= 1
    if lhs != rhs:
        raise ArithmeticError(
            f"Hilbert series mismatch for mode {mode}: numerator {lhs} vs resolution {rhs}"
        )


# ---------------------------------------------------------------------------
# Euler restriction, surjectivity, algebraic genericity


def euler_restrict(A: Arrangement, theta: Derivation, H: LinearForm) -> Derivation:
    """Euler restriction of theta to H: the induced derivation on S/(alpha_H).

    Components are the reductions of theta(x_i) for the surviving variables,
    in the same reindexing the restriction of A uses.  Membership of the
    result in D(A^H) is verified before returning.
    """
    if A.index_of(H) is None:
        raise ValueError("H is not a hyperplane of the arrangement")
    for f in A.forms:
        if not divides(f, theta.apply(f)):
            raise ValueError("derivation does not belong to D(A)")
    Hn = H.normalized()
    ell = A.ell
    k = Hn.pivot_index()
    comps = []
    for i in range(ell):
        if i == k:
            continue
        comps.append(reduce_mod(theta.comps[i], Hn))
    rho = Derivation(comps)
    R = restrict(A, Hn)
    for beta in R.forms:
        if not divides(beta, rho.apply(beta)):
            raise ArithmeticError("restricted derivation fails membership in D(A^H)")
    return rho


def surjectivity_check(A: Arrangement, H: LinearForm) -> bool:
    """Right-exactness criterion for the Euler sequence of (A, H).

    Uses the first-syzygy degrees c_i of D0 of the deletion: the restriction
    map is surjective when |A^H| > c_i - 1 for every i.
    """
    from .arrangement import delete

    if A.index_of(H) is None:
        raise ValueError("H is not a hyperplane of the arrangement")
    deletion = delete(A, H)
    res = resolution(deletion, "D0")
    if res.f1 is None:
        raise ValueError("syzygy data unavailable outside three variables")
    size_restriction = restrict(A, H).size
    return all(size_restriction > c - 1 for c in res.f1)


def alg_generic(A: Arrangement, gens, H: LinearForm) -> bool:
    """Algebraic genericity of H with respect to a generating set of D(A).

    True when no non-Euler generator sends alpha_H into the ideal (alpha_H).
    """
    if A.index_of(H) is not None:
        raise ValueError("H already belongs to the arrangement")
    derivs = gens.generators if isinstance(gens, GeneratorSet) else list(gens)
    if not derivs:
        raise ValueError("no generator vectors available")
    euler = Derivation.euler(A.ell)
    Hn = H.normalized()
    for theta in derivs:
        if theta == euler:
            continue
        if divides(Hn, theta.apply(Hn)):
            return False
    return True


# ---------------------------------------------------------------------------
# reports


def direct_sum_check(gens0: GeneratorSet, ell: int) -> bool:
    """Per-degree test of dim D_d = dim S_{d-1} + dim D0_d from a D0 scan."""
    for d, st in sorted(gens0.stats.items()):
        if st.dim_ambient != _dim_s(ell, d - 1) + st.dim_module:
            return False
    return True


def report(A: Arrangement) -> dict:
    """Summary JSON for one arrangement: exponents, resolution, certification."""
    if A.ell == 3:
        res = resolution(A, "D")
        exp = res.f0
        f1 = res.f1
        certified = res.certified
    else:
        gd = min_generators(A, "D")
        exp = gd.exp
        f1 = None
        certified = gd.certified
    gens0 = min_generators(A, "D0")
    out = {
        "schema": 1,
        "field": A.ctx.label,
        "ell": A.ell,
        "n": A.size,
        "exp": exp,
        "exp0": gens0.exp,
        "f1": f1,
        "regularity_bound": _search_bound(A),
        "certified": certified if certified == gens0.certified else "modular",
        "direct_sum_check": direct_sum_check(gens0, A.ell),
    }
    return out
