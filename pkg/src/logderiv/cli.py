"""Command line for arrangement reports, constructions, and pair verdicts.

Every report subcommand prints canonical JSON (sorted keys, two-space
indent); construction subcommands print the arrangement file format.
``--timings`` adds a timing block and changes nothing else.  Exit codes:
0 success, 1 error, 2 verdict or golden mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .arrangement import add, cone, format_arrangement, load, product, restrict
from .dermod import alg_generic, min_generators, report, resolution
from .fixtures import fixture_path, load_golden
from .lattice import build_lattice, comb_generic, isomorphic, lattice_summary
from .poly import LinearForm
from .theorems import predict_highdim
from .ziegler import build_pair_tower, check_pair

_GOLDEN_SKIP_KEYS = {"timings"}


def _parse_hyperplane(text: str, ctx) -> LinearForm:
    parts = text.replace(",", " ").split()
    if not parts:
        raise ValueError("empty hyperplane specification")
    return LinearForm([ctx.parse(t) for t in parts])


def _format_form(H: LinearForm) -> str:
    return " ".join(str(c) for c in H.coeffs)


def _cmd_exp(ns) -> tuple[dict, int]:
    A = load(ns.file)
    out = report(A)
    if ns.mode == "D":
        out.pop("exp0", None)
    elif ns.mode == "D0":
        out.pop("exp", None)
    if ns.resolution:
        block = {}
        for mode in ("D", "D0"):
            if ns.mode and mode != ns.mode:
                continue
            res = resolution(A, mode)
            block[mode] = {
                "f0": list(res.f0),
                "f1": None if res.f1 is None else list(res.f1),
                "certified": res.certified,
            }
        out["resolution"] = block
    return out, 0


def _cmd_lattice(ns) -> tuple[dict, int]:
    A = load(ns.file)
    out = {"schema": 1}
    out.update(lattice_summary(build_lattice(A)))
    return out, 0


def _cmd_iso(ns) -> tuple[dict, int]:
    A1, A2 = load(ns.file1), load(ns.file2)
    iso, witness = isomorphic(A1, A2)
    return {"schema": 1, "isomorphic": iso, "witness": witness}, 0


def _cmd_generic_check(ns) -> tuple[dict, int]:
    A = load(ns.file)
    H = _parse_hyperplane(ns.hyperplane, A.ctx)
    out = {
        "schema": 1,
        "hyperplane": _format_form(H),
        "combinatorial": comb_generic(A, H),
        "algebraic": None,
    }
    if A.ell == 3:
        gens = min_generators(A, "D")
        out["algebraic"] = alg_generic(A, gens.generators, H)
    return out, 0


def _cmd_cone(ns) -> tuple[str, int]:
    return format_arrangement(cone(load(ns.file), ns.n)), 0


def _cmd_product(ns) -> tuple[str, int]:
    return format_arrangement(product(load(ns.file1), load(ns.file2))), 0


def _cmd_add(ns) -> tuple[str, int]:
    A = load(ns.file)
    return format_arrangement(add(A, _parse_hyperplane(ns.hyperplane, A.ctx))), 0


def _cmd_restrict(ns) -> tuple[str, int]:
    A = load(ns.file)
    if not 0 <= ns.index < A.size:
        raise ValueError("hyperplane index out of range")
    return format_arrangement(restrict(A, A.forms[ns.index])), 0


def _cmd_predict(ns) -> tuple[dict, int]:
    A = load(ns.file)
    gens0 = min_generators(A, "D0")
    n = ns.n if ns.n is not None else A.size - 1
    predictions = {}
    for variant in ("statement", "proof"):
        predictions[f"tower_{variant}"] = predict_highdim(
            gens0.exp, ns.ell, n, variant
        ).as_dict()
    return {
        "schema": 1,
        "exp0": gens0.exp,
        "ell": ns.ell,
        "n": n,
        "predictions": predictions,
    }, 0


def _cmd_pair(ns) -> tuple[dict, int]:
    A1, A2 = load(ns.file1), load(ns.file2)
    if ns.tower:
        coeffs = (
            _parse_hyperplane(ns.hyperplane, A1.ctx) if ns.hyperplane else None
        )
        B1, B2, rep = build_pair_tower(
            A1,
            A2,
            ns.tower,
            seed=ns.seed,
            coeffs=coeffs,
            require_generic=not ns.allow_nongeneric,
            syzygies=not ns.no_syzygies,
        )
        out = rep.as_dict(with_timings=ns.timings)
        out["hyperplane"] = _format_form(B1.forms[-1])
    else:
        rep = check_pair(A1, A2, syzygies=not ns.no_syzygies)
        out = rep.as_dict(with_timings=ns.timings)
    code = 0
    if ns.expect and rep.verdict != ns.expect:
        code = 2
    return out, code


def _verify_table(ns) -> tuple[str, int]:
    """Recompute every golden fixture and tabulate matches."""
    golden_dir = fixture_path("goldens")
    names = sorted(p.name for p in Path(golden_dir).glob("*.json"))
    if ns.only:
        names = [n for n in names if ns.only in n]
    if not names:
        raise RuntimeError("no golden files are bundled")
    lines = []
    failures = 0
    for name in names:
        golden = load_golden(name)
        argv = [
            str(fixture_path(a[len("fixture:"):])) if a.startswith("fixture:") else a
            for a in golden["argv"]
        ]
        payload, _, _ = _dispatch(argv)
        got = json.loads(json.dumps(payload, sort_keys=True))
        want = golden["expect"]
        ok = _strip(got) == _strip(want)
        failures += not ok
        lines.append(f"{'PASS' if ok else 'FAIL':4}  {golden['name']}")
        if not ok and ns.verbose:
            lines.append(f"      expected: {json.dumps(_strip(want), sort_keys=True)}")
            lines.append(f"      got     : {json.dumps(_strip(got), sort_keys=True)}")
    total = len(names)
    lines.append(f"{total - failures} passed, {failures} failed of {total}")
    return "\n".join(lines), 2 if failures else 0


def _strip(obj):
    if isinstance(obj, dict):
        return {k: _strip(v) for k, v in obj.items() if k not in _GOLDEN_SKIP_KEYS}
    if isinstance(obj, list):
        return [_strip(v) for v in obj]
    return obj


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="logderiv",
        description="Derivation modules of central hyperplane arrangements",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write the result to this file")
        p.add_argument(
            "--timings", action="store_true", help="include timing data"
        )

    p = sub.add_parser("exp", help="exponents and resolution data of one file")
    p.add_argument("file")
    p.add_argument("--mode", choices=["D", "D0"])
    p.add_argument("--resolution", action="store_true")
    common(p)
    p.set_defaults(fn=_cmd_exp)

    p = sub.add_parser("lattice", help="intersection lattice summary")
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=_cmd_lattice)

    p = sub.add_parser("iso", help="lattice isomorphism verdict for two files")
    p.add_argument("file1")
    p.add_argument("file2")
    common(p)
    p.set_defaults(fn=_cmd_iso)

    p = sub.add_parser("generic-check", help="genericity verdicts for a hyperplane")
    p.add_argument("file")
    p.add_argument("--hyperplane", required=True)
    common(p)
    p.set_defaults(fn=_cmd_generic_check)

    p = sub.add_parser("cone", help="iterated cone of an arrangement")
    p.add_argument("file")
    p.add_argument("-n", type=int, default=1)
    common(p)
    p.set_defaults(fn=_cmd_cone)

    p = sub.add_parser("product", help="product of two arrangements")
    p.add_argument("file1")
    p.add_argument("file2")
    common(p)
    p.set_defaults(fn=_cmd_product)

    p = sub.add_parser("add", help="adjoin a hyperplane")
    p.add_argument("file")
    p.add_argument("--hyperplane", required=True)
    common(p)
    p.set_defaults(fn=_cmd_add)

    p = sub.add_parser("restrict", help="restrict to the i-th hyperplane")
    p.add_argument("file")
    p.add_argument("--index", type=int, required=True)
    common(p)
    p.set_defaults(fn=_cmd_restrict)

    p = sub.add_parser("predict", help="closed-form tower exponent predictions")
    p.add_argument("file")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--n", type=int)
    common(p)
    p.set_defaults(fn=_cmd_predict)

    p = sub.add_parser("pair", help="pair verdict, optionally after a tower step")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--tower", type=int, help="extend both sides to this dimension")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--hyperplane", help="shared section instead of sampling")
    p.add_argument("--allow-nongeneric", action="store_true")
    p.add_argument("--no-syzygies", action="store_true")
    p.add_argument("--expect", choices=["ziegler_pair", "same_resolution", "lattices_differ"])
    common(p)
    p.set_defaults(fn=_cmd_pair)

    p = sub.add_parser(
        "verify-goldens", help="recompute all bundled fixtures against goldens"
    )
    p.add_argument("--verbose", action="store_true")
    p.add_argument("--only", help="replay only goldens whose name contains this")
    common(p)
    p.set_defaults(fn=_verify_table)

    return top


def _dispatch(argv) -> tuple[dict | str, int, argparse.Namespace]:
    ns = _build_parser().parse_args(argv)
    t0 = time.perf_counter()
    payload, code = ns.fn(ns)
    if ns.timings and isinstance(payload, dict):
        block = payload.setdefault("timings", {})
        block["total"] = round(time.perf_counter() - t0, 3)
    return payload, code, ns


def main(argv=None) -> int:
    try:
        payload, code, ns = _dispatch(sys.argv[1:] if argv is None else argv)
    except (ValueError, ArithmeticError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if isinstance(payload, dict):
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        text = payload if payload.endswith("\n") else payload + "\n"
    if ns.out:
        Path(ns.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


def main_entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
