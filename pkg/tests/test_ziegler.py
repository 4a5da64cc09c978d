"""Tests for pair verdicts and the shared-hyperplane tower construction."""

import json

import pytest

from logderiv.arrangement import Arrangement, add, cone
from logderiv.fixtures import load_fixture
from logderiv.poly import LinearForm
from logderiv.scalar import FieldContext, Scalar
from logderiv.ziegler import build_pair_tower, check_pair


def _classic():
    return load_fixture("ziegler_a1.arr"), load_fixture("ziegler_a2.arr")


def _form(ctx, *coeffs):
    return LinearForm([ctx.from_int(c) for c in coeffs])


def test_classic_pair_is_a_ziegler_pair():
    A1, A2 = _classic()
    rep = check_pair(A1, A2)
    assert rep.verdict == "ziegler_pair"
    assert rep.comparison_level == "f1"
    assert rep.lattice_isomorphic and rep.witness is not None
    assert rep.sides[0].exp0 == [5, 6, 6, 6]
    assert rep.sides[1].exp0 == [6, 6, 6, 6, 6, 6]
    assert rep.sides[0].f1 == [7, 8]
    assert rep.sides[1].f1 == [7, 7, 7, 7]
    assert rep.sides[0].certified["syzygies"] == "exact"


def test_coordinate_change_gives_same_resolution():
    A1, _ = _classic()
    ctx = A1.ctx
    # image of A1 under the unimodular substitution x -> x+y, y -> y+z
    moved = []
    for f in A1.forms:
        a, b, c = f.coeffs
        moved.append(LinearForm([a, a + b, b + c]))
    rep = check_pair(A1, Arrangement(ctx, 3, moved))
    assert rep.verdict == "same_resolution"
    assert rep.lattice_isomorphic


def test_unrelated_lattices_differ():
    A1, _ = _classic()
    ctx = A1.ctx
    B = load_fixture("boolean3.arr")
    for coeffs in ((1, 1, 0), (0, 1, 1), (1, 0, 1), (1, 2, 0), (0, 1, 2), (1, 0, 2)):
        B = add(B, _form(ctx, *coeffs))
    assert B.size == A1.size
    rep = check_pair(A1, B, syzygies=False)
    assert rep.verdict == "lattices_differ"
    assert not rep.lattice_isomorphic


def test_dimension_mismatch_is_rejected():
    A1, A2 = _classic()
    with pytest.raises(ValueError):
        check_pair(A1, cone(A2))


def test_tower_rank3_with_fixed_hyperplane():
    A1, A2 = _classic()
    H = _form(A1.ctx, 13, 171, 232)
    B1, B2, rep = build_pair_tower(A1, A2, 3, coeffs=H, syzygies=False)
    assert B1.size == B2.size == 10
    assert rep.verdict == "ziegler_pair"
    assert rep.certification["hyperplane_generic"] == [True, True]
    assert rep.sides[0].exp0 == [6, 7, 7, 7, 8]
    assert rep.sides[1].exp0 == [7, 7, 7, 7, 7, 7, 8]
    for variant in ("tower_statement", "tower_proof"):
        assert [e["matches"] for e in rep.predictions[variant]] == [True, True]


def test_tower_dimension_four_with_generic_hyperplane():
    A1, A2 = _classic()
    H = _form(A1.ctx, 4, 3, 5, 2)
    B1, B2, rep = build_pair_tower(A1, A2, 4, coeffs=H, syzygies=False)
    assert rep.verdict == "ziegler_pair"
    assert rep.comparison_level == "exp"
    assert rep.lattice_isomorphic
    assert rep.sides[0].exp0 == [2, 6, 6, 7, 7, 7, 7, 7, 7, 8]
    assert rep.sides[1].exp0 == [2] + [7] * 12 + [8]
    assert rep.sides[0].certified["exp0"] == "modular"
    for variant in ("tower_statement", "tower_proof"):
        assert [e["matches"] for e in rep.predictions[variant]] == [True, True]


def test_tower_rejects_hyperplane_through_a_multiple_point():
    # the printed section x + 13y + 27z + 42w meets a double point of the
    # first cone, so certification must fail on that side only
    A1, A2 = _classic()
    H = _form(A1.ctx, 1, 13, 27, 42)
    with pytest.raises(ValueError, match="side \\[1\\]"):
        build_pair_tower(A1, A2, 4, coeffs=H)
    B1, B2, rep = build_pair_tower(
        A1, A2, 4, coeffs=H, require_generic=False, syzygies=False
    )
    assert rep.certification["hyperplane_generic"] == [False, True]
    assert not rep.lattice_isomorphic
    assert rep.verdict == "lattices_differ"
    assert rep.sides[0].exp0 == [2, 6, 6] + [7] * 7
    assert rep.sides[1].exp0 == [2] + [7] * 12 + [8]


def test_tower_sampling_is_seed_stable():
    A1, A2 = _classic()
    seen = set()
    for seed in (0, 1, 2):
        _, _, rep = build_pair_tower(A1, A2, 3, seed=seed, syzygies=False)
        assert rep.verdict == "ziegler_pair"
        seen.add((tuple(rep.sides[0].exp0), tuple(rep.sides[1].exp0)))
    assert seen == {((6, 7, 7, 7, 8), (7, 7, 7, 7, 7, 7, 8))}


def test_quadratic_field_pair_and_tower():
    A1 = load_fixture("sqrt5_a1.arr")
    A2 = load_fixture("sqrt5_a2.arr")
    rep = check_pair(A1, A2, syzygies=False)
    assert rep.verdict == "ziegler_pair"
    assert rep.sides[0].exp0 == [5, 6, 6]
    assert rep.sides[1].exp0 == [5, 6, 6, 7]
    assert rep.sides[0].certified["exp0"] == "exact"

    H = _form(A1.ctx, 1, 17, 131)
    _, _, trep = build_pair_tower(A1, A2, 3, coeffs=H, syzygies=False)
    assert trep.sides[0].exp0 == [6, 7, 7, 9]
    assert trep.sides[1].exp0 == [6, 7, 7, 8, 9]
    assert trep.verdict == "ziegler_pair"


def test_report_serialization_is_deterministic():
    A1, _ = _classic()
    B = load_fixture("boolean3.arr")
    rep = check_pair(B, B, syzygies=False)
    assert rep.verdict == "same_resolution"
    d1 = json.dumps(rep.as_dict(), sort_keys=True)
    d2 = json.dumps(rep.as_dict(), sort_keys=True)
    assert d1 == d2
    assert "timings" not in rep.as_dict()
    assert "timings" in rep.as_dict(with_timings=True)
