"""Tests for graded pieces, generator scans, resolutions, and restriction maps.

Dimension and generator-count constants marked "oracle" were produced by
tests/oracle_dense.py, an independent dense solver kept free of package
imports; run it directly to regenerate the tables.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from logderiv.arrangement import Arrangement, add, cone, delete, parse_arrangement
from logderiv.dermod import (
    GeneratorSet,
    alg_generic,
    direct_sum_check,
    euler_restrict,
    graded_piece,
    min_generators,
    report,
    resolution,
    surjectivity_check,
    _scan_exact,
)
from logderiv.fixtures import load_fixture
from logderiv.poly import Derivation, HomogPoly, LinearForm, divides
from logderiv.scalar import FieldContext, Scalar

Q = FieldContext(None)


def lf(*coeffs):
    return LinearForm([Scalar(Fraction(c)) for c in coeffs])


def arr(rows):
    forms = [lf(*r) for r in rows]
    return Arrangement(Q, len(rows[0]), forms)


GENERIC4 = arr([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])


def test_boolean_degree_one_piece_is_three_dimensional():
    # oracle: hand solve / dense solver both give dim 3
    piece = graded_piece(load_fixture("boolean3.arr"), 1, "D")
    assert piece.dim == 3


def test_generic4_oracle_dimension_table():
    # oracle table: D0 dims (0,0,3,8,15), D dims (0,1,6,14,25) in degrees 0..4
    for d, want in enumerate([0, 0, 3, 8, 15]):
        assert graded_piece(GENERIC4, d, "D0").dim == want
    for d, want in enumerate([0, 1, 6, 14, 25]):
        assert graded_piece(GENERIC4, d, "D").dim == want


def test_generic4_generators_and_resolution():
    # oracle: three new D0 generators in degree 2 and nothing later
    g0 = min_generators(GENERIC4, "D0")
    assert g0.exp == [2, 2, 2]
    g = min_generators(GENERIC4, "D")
    assert g.exp == [1, 2, 2, 2]
    assert g.euler_index == 0
    r0 = resolution(GENERIC4, "D0")
    assert (r0.f0, r0.f1) == ([2, 2, 2], [3])
    r = resolution(GENERIC4, "D")
    assert (r.f0, r.f1) == ([1, 2, 2, 2], [3])


def test_classic_d0_low_degree_dims():
    # oracle: dense solver gives dim 0 in degree 4 and dim 1 in degree 5
    A1 = load_fixture("ziegler_a1.arr")
    assert graded_piece(A1, 4, "D0").dim == 0
    assert graded_piece(A1, 5, "D0").dim == 1


def test_classic_pair_exponents():
    A1 = load_fixture("ziegler_a1.arr")
    A2 = load_fixture("ziegler_a2.arr")
    g1 = min_generators(A1, "D0")
    g2 = min_generators(A2, "D0")
    assert g1.exp == [5, 6, 6, 6]
    assert g2.exp == [6, 6, 6, 6, 6, 6]
    assert g1.certified == g2.certified == "exact"
    assert direct_sum_check(g1, 3) and direct_sum_check(g2, 3)


def test_classic_pair_resolutions():
    A1 = load_fixture("ziegler_a1.arr")
    A2 = load_fixture("ziegler_a2.arr")
    r1 = resolution(A1, "D")
    assert (r1.f0, r1.f1) == ([1, 5, 6, 6, 6], [7, 8])
    r2 = resolution(A2, "D")
    assert (r2.f0, r2.f1) == ([1, 6, 6, 6, 6, 6, 6], [7, 7, 7, 7])
    r10 = resolution(A1, "D0")
    assert (r10.f0, r10.f1) == ([5, 6, 6, 6], [7, 8])
    r20 = resolution(A2, "D0")
    assert (r20.f0, r20.f1) == ([6, 6, 6, 6, 6, 6], [7, 7, 7, 7])


def test_sqrt5_pair_exponents_exact_field():
    S1 = load_fixture("sqrt5_a1.arr")
    S2 = load_fixture("sqrt5_a2.arr")
    g1 = min_generators(S1, "D0")
    g2 = min_generators(S2, "D0")
    assert g1.exp == [5, 6, 6]
    assert g2.exp == [5, 6, 6, 7]
    assert g1.certified == g2.certified == "exact"


def test_every_emitted_generator_is_a_member():
    for name in ("deleted_a3.arr", "boolean3.arr"):
        A = load_fixture(name)
        for mode in ("D", "D0"):
            gens = min_generators(A, mode)
            Qpoly = A.defining_poly()
            for theta, d in zip(gens.generators, gens.degrees):
                assert theta.degree == d
                for f in A.forms:
                    assert divides(f, theta.apply(f))
                if mode == "D0":
                    assert theta.apply(Qpoly).is_zero()


def test_deleted_a3_exponents():
    A = load_fixture("deleted_a3.arr")
    assert min_generators(A, "D").exp == [1, 2, 2]
    assert min_generators(A, "D0").exp == [2, 2]
    r = resolution(A, "D")
    assert r.f1 == []


def test_exponents_invariant_under_coordinate_change():
    A = load_fixture("deleted_a3.arr")
    base = min_generators(A, "D").exp
    # unimodular substitutions act on forms by the transpose matrix; the
    # module is equivariant, so the degree data cannot move
    for g in ([(1, 1, 0), (0, 1, 0), (0, 0, 1)], [(1, 1, 0), (0, 1, 1), (0, 0, 1)]):
        forms = []
        for f in A.forms:
            forms.append(lf(*[sum(row[i] * f.coeffs[i].a for i in range(3)) for row in g]))
        moved = Arrangement(Q, 3, forms)
        assert min_generators(moved, "D").exp == base


def test_deletion_multiplication_lands_in_module():
    A = load_fixture("deleted_a3.arr")
    for h in range(A.size):
        H = A.forms[h]
        rest = delete(A, h)
        for theta in min_generators(rest, "D").generators:
            scaled = theta * H.to_poly()
            for f in A.forms:
                assert divides(f, scaled.apply(f))


def test_cone_exponent_law_exact_vs_modular():
    A = load_fixture("deleted_a3.arr")
    C = cone(A)
    gm = min_generators(C, "D")
    assert gm.certified == "modular"
    assert gm.exp == [1, 1, 2, 2]
    degrees, _, _, stats, _, _ = _scan_exact(C, "D")
    assert sorted(degrees) == [1, 1, 2, 2]
    assert {d: (s.dim_module, s.new) for d, s in stats.items()} == {
        d: (s.dim_module, s.new) for d, s in gm.stats.items()
    }


def test_graded_piece_validation():
    A = load_fixture("boolean3.arr")
    with pytest.raises(ValueError, match="degree"):
        graded_piece(A, -1, "D")
    with pytest.raises(ValueError, match="mode"):
        graded_piece(A, 1, "DD")
    with pytest.raises(ValueError, match="mode"):
        min_generators(A, "d0")


def test_euler_restrict_sends_euler_to_euler():
    A = load_fixture("deleted_a3.arr")
    H = A.forms[3]
    rho = euler_restrict(A, Derivation.euler(3), H)
    assert rho == Derivation.euler(2)


def test_euler_restrict_members_and_errors():
    A = load_fixture("deleted_a3.arr")
    g = min_generators(A, "D")
    for theta in g.generators:
        rho = euler_restrict(A, theta, A.forms[4])
        assert rho.degree == theta.degree
    with pytest.raises(ValueError, match="not a hyperplane"):
        euler_restrict(A, Derivation.euler(3), lf(1, 2, 3))
    bad = Derivation([HomogPoly.variable(3, 1), HomogPoly.zero(3, 1), HomogPoly.zero(3, 1)])
    with pytest.raises(ValueError, match="belong"):
        euler_restrict(A, bad, A.forms[0])


def test_surjectivity_check_classic_tower():
    A1 = load_fixture("ziegler_a1.arr")
    B = add(A1, lf(13, 171, 232))
    assert surjectivity_check(B, lf(13, 171, 232)) is True
    with pytest.raises(ValueError, match="not a hyperplane"):
        surjectivity_check(B, lf(1, 1, 1))


def test_alg_generic_basis_dependence():
    A = load_fixture("deleted_a3.arr")
    x = HomogPoly.variable(3, 0)
    y = HomogPoly.variable(3, 1)
    z = HomogPoly.variable(3, 2)
    zero2 = HomogPoly.zero(3, 2)
    theta2 = Derivation([zero2, y * (x - y), zero2])
    theta3 = Derivation([zero2, zero2, z * (x - z)])
    H = lf(0, 1, -1)
    assert alg_generic(A, [Derivation.euler(3), theta2, theta3], H) is True
    assert alg_generic(A, [Derivation.euler(3), theta2, theta2 + theta3], H) is False
    with pytest.raises(ValueError, match="already"):
        alg_generic(A, [theta2], A.forms[0])
    gens = min_generators(A, "D")
    assert isinstance(gens, GeneratorSet)
    assert alg_generic(A, gens, H) in (True, False)


def test_report_shape():
    rep = report(load_fixture("deleted_a3.arr"))
    assert rep == {
        "schema": 1,
        "field": "Q",
        "ell": 3,
        "n": 5,
        "exp": [1, 2, 2],
        "exp0": [2, 2],
        "f1": [],
        "regularity_bound": 3,
        "certified": "exact",
        "direct_sum_check": True,
    }


def _random_lines(draw):
    coeffs = st.tuples(
        st.integers(min_value=-3, max_value=3),
        st.integers(min_value=-3, max_value=3),
        st.integers(min_value=-3, max_value=3),
    ).filter(lambda t: any(t))
    raw = draw(st.lists(coeffs, min_size=3, max_size=5))
    forms = []
    seen = set()
    for t in raw:
        f = lf(*t).normalized()
        if f.coeffs not in seen:
            seen.add(f.coeffs)
            forms.append(f)
    if len(forms) < 2:
        forms = [lf(1, 0, 0), lf(0, 1, 0)]
    return Arrangement(Q, 3, forms)


@settings(max_examples=12, deadline=None)
@given(data=st.data())
def test_random_lines_invariants(data):
    A = _random_lines(data.draw)
    g = min_generators(A, "D")
    g0 = min_generators(A, "D0")
    # the Euler part always splits off, so the degree multisets nest
    assert g.exp == sorted(g0.exp + [1])
    assert direct_sum_check(g0, 3)
    for theta in g.generators:
        for f in A.forms:
            assert divides(f, theta.apply(f))
    res = resolution(A, "D")
    assert len(res.f0) - len(res.f1) == 3
