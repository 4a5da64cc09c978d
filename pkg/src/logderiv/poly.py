"""Sparse homogeneous polynomials, linear forms and polynomial derivations.

Monomials are exponent tuples; within a fixed degree the basis ordering is
graded lexicographic (descending lex), which every matrix-building routine
relies on.  A derivation of degree d has polynomial coefficients of degree d
and maps degree-k forms to degree-(k+d-1) forms.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .scalar import Scalar

_ZERO = Scalar(Fraction(0))
_ONE = Scalar(Fraction(1))

Monomial = tuple[int, ...]


@lru_cache(maxsize=None)
def monomials_of_degree(ell: int, d: int) -> tuple[Monomial, ...]:
    """All exponent tuples of length ell summing to d, in descending lex order."""
    if d < 0:
        return ()
    if ell == 0:
        return ((),) if d == 0 else ()
    out = []
    for e in range(d, -1, -1):
        for rest in monomials_of_degree(ell - 1, d - e):
            out.append((e,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(ell: int, d: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomials_of_degree(ell, d))}


def _unit(ell: int, i: int) -> Monomial:
    return tuple(1 if j == i else 0 for j in range(ell))


class HomogPoly:
    """Homogeneous polynomial stored as {exponent tuple: nonzero Scalar}."""

    __slots__ = ("ell", "degree", "terms")

    def __init__(self, ell: int, degree: int, terms: Mapping[Monomial, Scalar] | None = None):
        self.ell = ell
        self.degree = degree
        clean: dict[Monomial, Scalar] = {}
        for m, c in (terms or {}).items():
            if len(m) != ell or sum(m) != degree:
                raise ValueError(f"monomial {m} does not fit ell={ell}, degree={degree}")
            if c:
                clean[m] = c
        self.terms = clean

    @classmethod
    def zero(cls, ell: int, degree: int) -> "HomogPoly":
        return cls(ell, degree, {})

    @classmethod
    def one(cls, ell: int) -> "HomogPoly":
        return cls(ell, 0, {tuple(0 for _ in range(ell)): _ONE})

    @classmethod
    def variable(cls, ell: int, i: int) -> "HomogPoly":
        return cls(ell, 1, {_unit(ell, i): _ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return self.ell == other.ell and self.terms == other.terms and (
            self.degree == other.degree or not self.terms or not other.terms
        )

    def __hash__(self) -> int:
        return hash((self.ell, frozenset(self.terms.items())))

    def __add__(self, other: "HomogPoly") -> "HomogPoly":
        if self.ell != other.ell or (self.terms and other.terms and self.degree != other.degree):
            raise ValueError("cannot add polynomials of different shape")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, _ZERO) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return HomogPoly(self.ell, self.degree if self.terms else other.degree, terms)

    def __neg__(self) -> "HomogPoly":
        return HomogPoly(self.ell, self.degree, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "HomogPoly") -> "HomogPoly":
        return self + (-other)

    def __mul__(self, other: object) -> "HomogPoly":
        if isinstance(other, HomogPoly):
            if self.ell != other.ell:
                raise ValueError("mixed variable counts")
            terms: dict[Monomial, Scalar] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    s = terms.get(m, _ZERO) + c1 * c2
                    if s:
                        terms[m] = s
                    else:
                        terms.pop(m, None)
            return HomogPoly(self.ell, self.degree + other.degree, terms)
        if isinstance(other, (Scalar, int, Fraction)):
            if not other:
                return HomogPoly.zero(self.ell, self.degree)
            return HomogPoly(self.ell, self.degree, {m: c * other for m, c in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def partial(self, i: int) -> "HomogPoly":
        """Partial derivative with respect to variable i."""
        terms: dict[Monomial, Scalar] = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = m[:i] + (m[i] - 1,) + m[i + 1 :]
                terms[mm] = c * m[i]
        return HomogPoly(self.ell, max(self.degree - 1, 0), terms)

    def to_vector(self) -> list[Scalar]:
        idx = monomial_index(self.ell, self.degree)
        vec = [_ZERO] * len(idx)
        for m, c in self.terms.items():
            vec[idx[m]] = c
        return vec

    @classmethod
    def from_vector(cls, ell: int, degree: int, vec: Iterable[Scalar]) -> "HomogPoly":
        basis = monomials_of_degree(ell, degree)
        return cls(ell, degree, {m: c for m, c in zip(basis, vec) if c})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            mono = "*".join(
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(m) if e
            )
            parts.append(f"({c}){mono}" if mono else f"({c})")
        return " + ".join(parts)

    __repr__ = __str__


class LinearForm:
    """Defining form of a hyperplane, a tuple of Scalar coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar]):
        self.coeffs = tuple(coeffs)
        if not any(self.coeffs):
            raise ValueError("zero linear form")

    @property
    def ell(self) -> int:
        return len(self.coeffs)

    def pivot_index(self) -> int:
        """Largest variable index with a nonzero coefficient."""
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i]:
                return i
        raise ValueError("zero linear form")

    def normalized(self) -> "LinearForm":
        """Rescale so the first nonzero coefficient is 1."""
        for c in self.coeffs:
            if c:
                inv = c.inverse()
                return LinearForm(x * inv for x in self.coeffs)
        raise ValueError("zero linear form")

    def proportional_to(self, other: "LinearForm") -> bool:
        return self.normalized() == other.normalized()

    def to_poly(self) -> HomogPoly:
        ell = len(self.coeffs)
        return HomogPoly(ell, 1, {_unit(ell, i): c for i, c in enumerate(self.coeffs) if c})

    def extended(self, ell: int) -> "LinearForm":
        """Pad with zero coefficients on the right up to ambient dimension ell."""
        if ell < len(self.coeffs):
            raise ValueError("cannot shrink a form")
        return LinearForm(self.coeffs + tuple(_ZERO for _ in range(ell - len(self.coeffs))))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"LinearForm({str(self)!r})"


class Derivation:
    """Polynomial vector field sum_i p_i d/dx_i with homogeneous p_i."""

    __slots__ = ("ell", "degree", "comps")

    def __init__(self, comps: Iterable[HomogPoly]):
        self.comps = tuple(comps)
        if not self.comps:
            raise ValueError("empty derivation")
        self.ell = self.comps[0].ell
        self.degree = self.comps[0].degree
        for c in self.comps:
            if c.ell != self.ell or c.degree != self.degree:
                raise ValueError("derivation components must share ell and degree")
        if len(self.comps) != self.ell:
            raise ValueError("need one component per variable")

    @classmethod
    def euler(cls, ell: int) -> "Derivation":
        return cls(HomogPoly.variable(ell, i) for i in range(ell))

    @classmethod
    def zero(cls, ell: int, degree: int) -> "Derivation":
        return cls(HomogPoly.zero(ell, degree) for _ in range(ell))

    @classmethod
    def monomial_partial(cls, ell: int, mono: Monomial, i: int) -> "Derivation":
        """The derivation (x^mono) d/dx_i."""
        comps = [HomogPoly.zero(ell, sum(mono)) for _ in range(ell)]
        comps[i] = HomogPoly(ell, sum(mono), {tuple(mono): _ONE})
        return cls(comps)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def apply(self, target: "LinearForm | HomogPoly") -> HomogPoly:
        if isinstance(target, LinearForm):
            out = HomogPoly.zero(self.ell, self.degree)
            for c, p in zip(target.coeffs, self.comps):
                if c:
                    out = out + p * c
            return out
        out = HomogPoly.zero(self.ell, self.degree + max(target.degree - 1, 0))
        for i, p in enumerate(self.comps):
            if p:
                dp = target.partial(i)
                if dp:
                    out = out + p * dp
        return out

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(a + b for a, b in zip(self.comps, other.comps))

    def __sub__(self, other: "Derivation") -> "Derivation":
        return Derivation(a - b for a, b in zip(self.comps, other.comps))

    def __neg__(self) -> "Derivation":
        return Derivation(-c for c in self.comps)

    def __mul__(self, other: object) -> "Derivation":
        if isinstance(other, (HomogPoly, Scalar, int, Fraction)):
            return Derivation(c * other for c in self.comps)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.comps == other.comps

    def __hash__(self) -> int:
        return hash(self.comps)

    def to_vector(self) -> list[Scalar]:
        """Component-major coefficient vector over the degree-d monomial basis."""
        out: list[Scalar] = []
        for c in self.comps:
            out.extend(c.to_vector())
        return out

    @classmethod
    def from_vector(cls, ell: int, degree: int, vec: list[Scalar]) -> "Derivation":
        m = len(monomials_of_degree(ell, degree))
        if len(vec) != ell * m:
            raise ValueError("vector length mismatch")
        return cls(
            HomogPoly.from_vector(ell, degree, vec[i * m : (i + 1) * m]) for i in range(ell)
        )

    def __str__(self) -> str:
        parts = [f"({c})d{i}" for i, c in enumerate(self.comps) if c]
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def reduce_mod(f: HomogPoly, alpha: LinearForm) -> HomogPoly:
    """Remainder of f under substitution of alpha's pivot variable.

    The pivot x_k (largest index with nonzero coefficient) is replaced by
    -(sum of the other terms)/c_k; the result lives in the remaining ell-1
    variables, reindexed in increasing order.  f vanishes on the hyperplane
    alpha = 0 exactly when the result is zero.
    """
    k = alpha.pivot_index()
    ell = f.ell
    if len(alpha.coeffs) != ell:
        raise ValueError("form and polynomial live in different ambients")
    rest = [i for i in range(ell) if i != k]
    ck = alpha.coeffs[k]
    sub = HomogPoly(
        ell - 1,
        1,
        {
            _unit(ell - 1, j): -(alpha.coeffs[i] / ck)
            for j, i in enumerate(rest)
            if alpha.coeffs[i]
        },
    )
    max_e = max((m[k] for m in f.terms), default=0)
    powers = [HomogPoly.one(ell - 1)]
    for _ in range(max_e):
        powers.append(powers[-1] * sub)
    acc: dict[Monomial, Scalar] = {}
    for m, coef in f.terms.items():
        e = m[k]
        mm = tuple(m[i] for i in rest)
        for pm, pc in powers[e].terms.items():
            key = tuple(a + b for a, b in zip(pm, mm))
            s = acc.get(key, _ZERO) + pc * coef
            if s:
                acc[key] = s
            else:
                acc.pop(key, None)
    return HomogPoly(ell - 1, f.degree, acc)


def divides(alpha: LinearForm, f: HomogPoly) -> bool:
    """True when the linear form alpha divides f."""
    if f.is_zero():
        return True
    return reduce_mod(f, alpha).is_zero()
