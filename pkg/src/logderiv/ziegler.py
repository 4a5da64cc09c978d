"""Pair-level verdicts: do two arrangements share their combinatorics but
not their derivation modules?

A pair with isomorphic intersection lattices whose modules carry different
generator-degree or syzygy-degree data witnesses that those invariants are
not combinatorially determined.  check_pair renders the verdict for two
given arrangements; build_pair_tower extends a rank-3 pair into higher
ambient dimension with one shared generic hyperplane and re-renders it.
"""

from __future__ import annotations

import dataclasses
import logging
import random
import time

from .arrangement import Arrangement, add, cone, restrict
from .dermod import min_generators, resolution
from .lattice import comb_generic, isomorphic
from .poly import LinearForm
from .theorems import Prediction, predict_add_generic, predict_highdim

log = logging.getLogger(__name__)

__all__ = ["SideReport", "PairReport", "check_pair", "build_pair_tower"]

_SAMPLING_TRIALS = 200


@dataclasses.dataclass(frozen=True)
class SideReport:
    """Module data of one side of a pair."""

    field: str
    size: int
    exp: list[int]
    exp0: list[int]
    f1: list[int] | None
    certified: dict

    def as_dict(self) -> dict:
        return {
            "field": self.field,
            "size": self.size,
            "exp": list(self.exp),
            "exp0": list(self.exp0),
            "f1": None if self.f1 is None else list(self.f1),
            "certified": dict(self.certified),
        }


@dataclasses.dataclass(frozen=True)
class PairReport:
    """Comparison of two arrangements: lattices, module data, verdict.

    comparison_level records how deep the resolution comparison went:
    "f1" when syzygy degrees entered the verdict (rank 3, exact route),
    "exp" when only generator degrees were available.  A ziegler_pair
    verdict at the "exp" level is an exponent-level distinction.
    """

    lattice_isomorphic: bool
    witness: list[int] | None
    sides: tuple[SideReport, SideReport]
    predictions: dict
    verdict: str
    comparison_level: str
    timings: dict
    certification: dict

    def as_dict(self, with_timings: bool = False) -> dict:
        out = {
            "schema": 1,
            "lattice_isomorphic": self.lattice_isomorphic,
            "witness": self.witness,
            "sides": [s.as_dict() for s in self.sides],
            "predictions": self.predictions,
            "verdict": self.verdict,
            "comparison_level": self.comparison_level,
            "certification": dict(self.certification),
        }
        if with_timings:
            out["timings"] = {k: round(v, 3) for k, v in self.timings.items()}
        return out


def _side_report(A: Arrangement, syzygies: bool) -> tuple[SideReport, dict]:
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    gens = min_generators(A, "D")
    t1 = time.perf_counter()
    gens0 = min_generators(A, "D0")
    t2 = time.perf_counter()
    timings["exp"] = t1 - t0
    timings["exp0"] = t2 - t1
    certified = {"exp": gens.certified, "exp0": gens0.certified}
    f1 = None
    if syzygies and A.ell == 3:
        res = resolution(A, "D0")
        timings["syzygies"] = time.perf_counter() - t2
        certified["syzygies"] = res.certified
        f1 = list(res.f1) if res.f1 is not None else None
    side = SideReport(A.ctx.label, A.size, gens.exp, gens0.exp, f1, certified)
    return side, timings


def _render_verdict(
    lattice_iso: bool, s1: SideReport, s2: SideReport
) -> tuple[str, str]:
    level = "f1" if (s1.f1 is not None and s2.f1 is not None) else "exp"
    if not lattice_iso:
        return "lattices_differ", level
    same = s1.exp == s2.exp and s1.exp0 == s2.exp0
    if level == "f1":
        same = same and s1.f1 == s2.f1
    return ("same_resolution" if same else "ziegler_pair"), level


def check_pair(A1: Arrangement, A2: Arrangement, syzygies: bool = True) -> PairReport:
    """Full comparison of two arrangements in the same ambient dimension.

    Lattice isomorphism is decided first; generator degrees (both modules)
    and, in rank 3, syzygy degrees are then compared.  Fields may differ
    between the sides; only integer degree data crosses the comparison.
    """
    if A1.ell != A2.ell:
        raise ValueError("incomparable ambient dimensions")
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    iso, witness = isomorphic(A1, A2)
    timings["lattice"] = time.perf_counter() - t0
    s1, t1 = _side_report(A1, syzygies)
    s2, t2 = _side_report(A2, syzygies)
    timings.update({f"side1_{k}": v for k, v in t1.items()})
    timings.update({f"side2_{k}": v for k, v in t2.items()})
    verdict, level = _render_verdict(iso, s1, s2)
    predictions = {
        "generic_addition": [
            predict_add_generic(s.exp, s.size).as_dict() for s in (s1, s2)
        ]
    }
    certification = {
        "side1": s1.certified,
        "side2": s2.certified,
        "comparison_level": level,
    }
    return PairReport(
        iso, witness, (s1, s2), predictions, verdict, level, timings, certification
    )


def _sample_shared(C1: Arrangement, C2: Arrangement, seed: int) -> LinearForm:
    """One coefficient vector certified combinatorially generic for both sides."""
    rng = random.Random(seed)
    ctx = C1.ctx
    for trial in range(_SAMPLING_TRIALS):
        bound = 5 + trial
        H = LinearForm(
            [ctx.from_int(rng.randint(1, bound)) for _ in range(C1.ell)]
        ).normalized()
        if C1.index_of(H) is not None or C2.index_of(H) is not None:
            continue
        if comb_generic(C1, H) and comb_generic(C2, H):
            return H
    raise RuntimeError("no shared generic hyperplane found; sampling exhausted")


def build_pair_tower(
    A1: Arrangement,
    A2: Arrangement,
    ell: int,
    seed: int = 0,
    coeffs: LinearForm | None = None,
    require_generic: bool = True,
    syzygies: bool = True,
) -> tuple[Arrangement, Arrangement, PairReport]:
    """Extend a rank-3 pair to dimension ell with one shared generic section.

    Both sides are coned ell - 3 times and the same hyperplane is added to
    each; it is sampled deterministically from ``seed`` unless ``coeffs``
    supplies it.  Either way it is certified combinatorially generic against
    both sides; with ``require_generic`` a failed certificate raises, without
    it the failure is recorded in the report and the computation proceeds.

    When the input lattices are isomorphic the output lattices must be too;
    that is asserted on every run.
    """
    if A1.ell != 3 or A2.ell != 3:
        raise ValueError("tower construction starts from rank-3 arrangements")
    if ell < 3:
        raise ValueError("ambient dimension must be at least 3")
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    C1, C2 = cone(A1, ell - 3), cone(A2, ell - 3)
    if coeffs is None:
        H = _sample_shared(C1, C2, seed)
        generic = (True, True)
    else:
        if len(coeffs.coeffs) != ell:
            raise ValueError("hyperplane does not match the tower dimension")
        H = coeffs.normalized()
        generic = (comb_generic(C1, H), comb_generic(C2, H))
        if require_generic and not all(generic):
            bad = [i + 1 for i, ok in enumerate(generic) if not ok]
            raise ValueError(
                f"hyperplane fails the genericity certificate on side {bad}"
            )
    timings["hyperplane"] = time.perf_counter() - t0
    B1, B2 = add(C1, H), add(C2, H)

    t0 = time.perf_counter()
    iso_in, _ = isomorphic(A1, A2)
    iso_out, witness = isomorphic(B1, B2)
    timings["lattice"] = time.perf_counter() - t0
    if iso_in and all(generic) and not iso_out:
        raise ArithmeticError(
            "extension broke a lattice isomorphism despite certified genericity"
        )

    s1, t1 = _side_report(B1, syzygies)
    s2, t2 = _side_report(B2, syzygies)
    timings.update({f"side1_{k}": v for k, v in t1.items()})
    timings.update({f"side2_{k}": v for k, v in t2.items()})
    verdict, level = _render_verdict(iso_out, s1, s2)

    predictions: dict = {"tower_statement": [], "tower_proof": [], "observed": []}
    for A, B, side in ((A1, B1, s1), (A2, B2, s2)):
        base = min_generators(A, "D0")
        H3 = LinearForm(H.coeffs[:3])
        n = restrict(add(A, H3.normalized()), H3.normalized()).size - 1
        for variant in ("statement", "proof"):
            pred = predict_highdim(base.exp, ell, n, variant)
            entry = pred.as_dict()
            entry["matches"] = list(pred.degrees) == side.exp0
            predictions[f"tower_{variant}"].append(entry)
        predictions["observed"].append(side.exp0)
    certification = {
        "side1": s1.certified,
        "side2": s2.certified,
        "hyperplane_generic": list(generic),
        "comparison_level": level,
    }
    report = PairReport(
        iso_out, witness, (s1, s2), predictions, verdict, level, timings, certification
    )
    return B1, B2, report
