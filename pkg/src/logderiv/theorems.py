"""Closed-form exponent predictions and explicit generator families.

Adding a generic hyperplane to a free-like arrangement, or running the
coning tower that extends a rank-3 pair into higher ambient dimension,
changes the generator degrees of the derivation module in a predictable
way.  This module holds those predictions, the size criterion that makes
a combinatorially generic hyperplane algebraically generic, and the
structured generating family for the extended arrangement, built exactly
and verified member by member.
"""

from __future__ import annotations

import dataclasses
from math import comb
from typing import Iterable, Sequence

from .arrangement import Arrangement, add, cone, restrict
from .dermod import (
    GeneratorSet,
    ResolutionSummary,
    _materialize,
    _membership_data,
    _reduction_table,
    min_generators,
)
from .linalg import solve_affine
from .poly import (
    Derivation,
    HomogPoly,
    LinearForm,
    divides,
    monomials_of_degree,
)
from .scalar import Scalar

__all__ = [
    "Prediction",
    "GeneratorFamily",
    "predict_add_generic",
    "predict_highdim",
    "restriction_size_criterion",
    "build_structured_generators",
]


@dataclasses.dataclass(frozen=True)
class Prediction:
    """A predicted multiset of generator degrees, with its provenance rule."""

    source: str
    degrees: tuple[int, ...]
    params: dict

    def as_dict(self) -> dict:
        return {
            "source": self.source,
            "degrees": list(self.degrees),
            "params": dict(self.params),
        }


def predict_add_generic(exp: Iterable[int], size: int) -> Prediction:
    """Exponents after adding one generic hyperplane to an arrangement.

    ``exp`` is the full generator-degree multiset of D(A), Euler degree
    included; ``size`` is the number of hyperplanes of A.  Every degree
    other than the Euler 1 shifts up by one and a new generator appears
    in degree |A| - 1.
    """
    degrees = sorted(exp)
    if 1 not in degrees:
        raise ValueError("exponent multiset must contain the Euler degree 1")
    if size < 1:
        raise ValueError("arrangement size must be positive")
    rest = list(degrees)
    rest.remove(1)
    out = sorted([1] + [a + 1 for a in rest] + [size - 1])
    return Prediction("generic_addition", tuple(out), {"size": size})


def predict_highdim(
    exp0: Iterable[int], ell: int, n: int, variant: str = "statement"
) -> Prediction:
    """Non-Euler exponents of the coning-tower extension in dimension ell.

    ``exp0`` is the non-Euler degree multiset of the rank-3 input, ``n``
    is one less than the number of points the generic hyperplane cuts on
    the input (for a generic section, |A| - 1).  The predicted multiset is

        (2)^mult, (exp0 + 1) repeated ell - 2 times, n

    where the multiplicity of 2 depends on the variant: the stated form
    uses (ell-3) + C(ell-4, 2), the proof's count uses (ell-3) + C(ell-3, 2).
    The two agree for ell <= 4 and diverge from ell = 5 on.  At ell = 3 both
    degenerate to the generic-addition prediction without its Euler degree.
    """
    if ell < 3:
        raise ValueError("ambient dimension must be at least 3")
    if n < 1:
        raise ValueError("top degree n must be positive")
    base = sorted(exp0)
    if not base:
        raise ValueError("empty exponent multiset")
    if variant == "statement":
        mult = (ell - 3) + comb(max(ell - 4, 0), 2)
    elif variant == "proof":
        mult = (ell - 3) + comb(max(ell - 3, 0), 2)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    degrees = [2] * mult
    for _ in range(ell - 2):
        degrees.extend(a + 1 for a in base)
    degrees.append(n)
    return Prediction(
        f"tower_{variant}", tuple(sorted(degrees)), {"ell": ell, "n": n}
    )


def restriction_size_criterion(
    res1: ResolutionSummary, res2: ResolutionSummary, sizes: Sequence[int]
) -> bool:
    """Degree threshold under which a shared generic section behaves generically.

    True when both restriction sizes |A_i ∩ H| strictly exceed every
    generator and syzygy degree appearing in the two resolutions.  Passing
    the test means the section is large enough that the combinatorial
    genericity certificate also certifies algebraic genericity for the pair.
    """
    sizes = tuple(sizes)
    if len(sizes) != 2:
        raise ValueError("expected exactly two restriction sizes")
    tops: list[int] = []
    for res in (res1, res2):
        if res.f1 is None:
            raise ValueError("criterion needs syzygy degrees; none were computed")
        tops.extend(res.f0)
        tops.extend(res.f1)
    if not tops:
        raise ValueError("empty resolution data")
    threshold = max(tops)
    return all(s > threshold for s in sizes)


# ---------------------------------------------------------------------------
# structured generators for the coning tower


@dataclasses.dataclass(frozen=True)
class GeneratorFamily:
    """Explicit generators of D(B) for the extended arrangement B.

    ``labels`` names each derivation's construction rule, parallel to
    ``generators``.  ``n`` is the degree of the top generator, one less
    than the number of points the hyperplane cuts on the rank-3 input.
    """

    arrangement: Arrangement
    hyperplane: LinearForm
    generators: tuple[Derivation, ...]
    labels: tuple[str, ...]
    n: int

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(g.comps[0].degree for g in self.generators)


def _lift_poly(f: HomogPoly, ell: int) -> HomogPoly:
    """Reinterpret f in a larger ambient by padding monomials with zeros."""
    if f.ell == ell:
        return f
    pad = (0,) * (ell - f.ell)
    return HomogPoly(ell, f.degree, {m + pad: c for m, c in f.terms.items()})


def _lift_derivation(theta: Derivation, ell: int) -> Derivation:
    d = theta.comps[0].degree
    comps = [_lift_poly(p, ell) for p in theta.comps]
    comps.extend(HomogPoly.zero(ell, d) for _ in range(ell - len(theta.comps)))
    return Derivation(comps)


def _div_linear(f: HomogPoly, alpha: LinearForm) -> HomogPoly:
    """Exact quotient f / alpha; raises when alpha does not divide f."""
    if f.is_zero():
        return HomogPoly.zero(f.ell, f.degree - 1)
    # the lex-largest term of alpha sits at its smallest nonzero index
    lead = min(i for i, c in enumerate(alpha.coeffs) if c)
    clead = alpha.coeffs[lead]
    rem = f
    quot: dict[tuple[int, ...], Scalar] = {}
    while not rem.is_zero():
        m = max(rem.terms)
        if m[lead] == 0:
            raise ArithmeticError("form does not divide the polynomial")
        qm = tuple(e - (1 if i == lead else 0) for i, e in enumerate(m))
        qc = rem.terms[m] / clead
        quot[qm] = qc
        piece = HomogPoly(f.ell, f.degree - 1, {qm: qc})
        rem = rem - alpha.to_poly() * piece
    return HomogPoly(f.ell, f.degree - 1, quot)


def _is_member(A: Arrangement, theta: Derivation) -> bool:
    return all(divides(H, theta.apply(H)) for H in A.forms)


def _top_generator(gens: GeneratorSet) -> Derivation:
    others = [g for i, g in enumerate(gens.generators) if i != gens.euler_index]
    if len(others) != 1:
        raise ArithmeticError("rank-2 module is not free of rank 2")
    return others[0]


def _lift_once(phi: Derivation, alpha_prev: LinearForm) -> Derivation:
    """Extend a derivation up one cone step, preserving its restriction.

    With alpha_prev a member form of the lower arrangement, phi(alpha_prev)
    is alpha_prev * g for a unique g, and appending the component x_k * g
    gives a derivation of the coned-and-extended arrangement whose Euler
    restriction along the extended form is phi again.
    """
    ell = len(phi.comps) + 1
    g = _div_linear(phi.apply(alpha_prev), alpha_prev)
    comps = [_lift_poly(p, ell) for p in phi.comps]
    comps.append(HomogPoly.variable(ell, ell - 1) * _lift_poly(g, ell))
    return Derivation(comps)


def _solve_first_lift(
    B3: Arrangement, H3: LinearForm, phi2: Derivation, n: int
) -> Derivation:
    """Degree-n derivation of B3 whose Euler restriction along H3 is phi2."""
    triples, nrows, ncols = _membership_data(B3, n)
    rows = _materialize(triples, nrows, ncols)
    zero = B3.ctx.zero()
    rhs = [zero] * nrows

    Hn = H3.normalized()
    pivot = Hn.pivot_index()
    table = _reduction_table(Hn, 3, n)
    monos = monomials_of_degree(3, n)
    small = monomials_of_degree(2, n)
    small_index = {m: i for i, m in enumerate(small)}
    survivors = [i for i in range(3) if i != pivot]
    for t, i_comp in enumerate(survivors):
        target = phi2.comps[t]
        for m_small, r in small_index.items():
            row = [zero] * ncols
            for src in range(len(monos)):
                val = table[src].get(r)
                if val is not None:
                    row[i_comp * len(monos) + src] = val
            rows.append(row)
            rhs.append(target.terms.get(m_small, zero))

    vec = solve_affine(rows, rhs)
    if vec is None:
        raise ArithmeticError(
            "no degree-n preimage under the Euler restriction; "
            "the hyperplane is not generic for this tower"
        )
    return Derivation.from_vector(3, n, vec)


def build_structured_generators(
    A: Arrangement, ell: int, H: LinearForm, gens: GeneratorSet | None = None
) -> GeneratorFamily:
    """Explicit generating family for D(B), B the coning-tower extension.

    A is a central rank-3 arrangement, H a hyperplane in dimension
    ``ell >= 4`` whose truncations drive the tower: B is the (ell-3)-fold
    cone of A together with H.  The family consists of the Euler field,
    the quadratic fields supported on the cone coordinates, two shifted
    copies of each non-Euler generator of D(A), and one top generator of
    degree n built by lifting through the tower one coordinate at a time.
    Every returned derivation is verified to lie in D(B).

    H must have nonzero coefficients on all cone coordinates; a zero there
    puts H through the tower's apex flat and the construction rejects it.
    """
    if A.ell != 3:
        raise ValueError("base arrangement must have rank 3 ambient")
    if ell < 4:
        raise ValueError("extension dimension must be at least 4")
    if len(H.coeffs) != ell:
        raise ValueError("hyperplane does not match the extension dimension")
    coeffs = H.coeffs
    if any(not coeffs[j] for j in range(3, ell)):
        raise ValueError(
            "hyperplane has a zero cone coefficient; it passes through "
            "the tower apex and is rejected as non-generic"
        )

    if gens is None:
        gens = min_generators(A, "D")
    others = [g for i, g in enumerate(gens.generators) if i != gens.euler_index]
    for theta in others:
        if not _is_member(A, theta):
            raise ValueError("supplied generator is not a derivation of A")

    H3 = LinearForm(coeffs[:3]).normalized()
    if A.index_of(H3) is not None:
        raise ValueError("hyperplane truncation lies in the arrangement")
    B3 = add(A, H3)
    B2 = restrict(B3, H3)
    n = B2.size - 1
    if n < 1:
        raise ValueError("restriction is too small to carry a top generator")

    phi = _top_generator(min_generators(B2, "D"))
    if phi.comps[0].degree != n:
        raise ArithmeticError("rank-2 top generator has unexpected degree")
    phi = _solve_first_lift(B3, H3, phi, n)
    for k in range(4, ell + 1):
        alpha_prev = LinearForm(coeffs[: k - 1])
        phi = _lift_once(phi, alpha_prev)

    B = add(cone(A, ell - 3), H)
    alpha = H.to_poly()
    generators: list[Derivation] = [Derivation.euler(ell)]
    labels: list[str] = ["euler"]
    for j in range(3, ell):
        xj_dj = Derivation.monomial_partial(ell, tuple(int(i == j) for i in range(ell)), j)
        generators.append(xj_dj * alpha)
        labels.append(f"alpha*x{j + 1}d{j + 1}")
    for idx, theta in enumerate(others, start=2):
        lifted = _lift_derivation(theta, ell)
        value = lifted.apply(alpha)
        generators.append(lifted * alpha)
        labels.append(f"alpha*theta{idx}")
        for j in range(3, ell):
            xj = HomogPoly.variable(ell, j)
            xj_dj = Derivation.monomial_partial(
                ell, tuple(int(i == j) for i in range(ell)), j
            )
            generators.append(lifted * (xj * coeffs[j]) - xj_dj * value)
            labels.append(f"phi_theta{idx}_x{j + 1}")
    for i in range(3, ell):
        for j in range(i + 1, ell):
            mono = tuple(int(t == i) + int(t == j) for t in range(ell))
            eta = Derivation.monomial_partial(ell, mono, i) * coeffs[j] - (
                Derivation.monomial_partial(ell, mono, j) * coeffs[i]
            )
            generators.append(eta)
            labels.append(f"eta_x{i + 1}x{j + 1}")
    generators.append(phi)
    labels.append("top")

    for theta, label in zip(generators, labels):
        if not _is_member(B, theta):
            raise ArithmeticError(f"constructed generator {label} fails membership")
    return GeneratorFamily(B, H, tuple(generators), tuple(labels), n)
