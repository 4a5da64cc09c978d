"""Regenerate the bundled golden files from live computation.

Run from the repository root after any change that is supposed to move a
frozen value; the diff then shows exactly what moved.  Each golden records
the CLI argv that produced it, so `logderiv verify-goldens` can replay the
whole set.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

from logderiv.cli import _dispatch
from logderiv.fixtures import fixture_path

MANIFEST = [
    ("exp_ziegler_a1", ["exp", "fixture:ziegler_a1.arr"], None),
    ("exp_ziegler_a2", ["exp", "fixture:ziegler_a2.arr"], None),
    ("exp_sqrt5_a1", ["exp", "fixture:sqrt5_a1.arr"], None),
    ("exp_sqrt5_a2", ["exp", "fixture:sqrt5_a2.arr"], None),
    ("exp_deleted_a3", ["exp", "fixture:deleted_a3.arr"], None),
    (
        "exp_boolean3_resolution",
        ["exp", "fixture:boolean3.arr", "--resolution"],
        None,
    ),
    ("iso_ziegler", ["iso", "fixture:ziegler_a1.arr", "fixture:ziegler_a2.arr"], None),
    (
        "generic_check_ziegler_a1",
        ["generic-check", "fixture:ziegler_a1.arr", "--hyperplane", "13 171 232"],
        None,
    ),
    (
        "predict_ziegler_a1_ell4",
        ["predict", "fixture:ziegler_a1.arr", "--ell", "4", "--n", "8"],
        None,
    ),
    (
        "tower3_ziegler",
        [
            "pair",
            "fixture:ziegler_a1.arr",
            "fixture:ziegler_a2.arr",
            "--tower",
            "3",
            "--hyperplane",
            "13 171 232",
            "--no-syzygies",
        ],
        None,
    ),
    (
        "tower3_sqrt5",
        [
            "pair",
            "fixture:sqrt5_a1.arr",
            "fixture:sqrt5_a2.arr",
            "--tower",
            "3",
            "--hyperplane",
            "1 17 131",
            "--no-syzygies",
        ],
        None,
    ),
    (
        "tower4_ziegler_generic",
        [
            "pair",
            "fixture:ziegler_a1.arr",
            "fixture:ziegler_a2.arr",
            "--tower",
            "4",
            "--hyperplane",
            "4 3 5 2",
            "--no-syzygies",
        ],
        None,
    ),
    (
        "tower4_ziegler_nongeneric",
        [
            "pair",
            "fixture:ziegler_a1.arr",
            "fixture:ziegler_a2.arr",
            "--tower",
            "4",
            "--hyperplane",
            "1 13 27 42",
            "--allow-nongeneric",
            "--no-syzygies",
        ],
        "The shared section fails the genericity certificate on side 1, so the "
        "tower theorem does not apply; side 1 exponents here differ from a "
        "previously reported value and are the certified recomputation.",
    ),
]


def main() -> int:
    out_dir = Path(__file__).resolve().parents[1] / "src/logderiv/fixtures/goldens"
    out_dir.mkdir(exist_ok=True)
    for name, argv, note in MANIFEST:
        resolved = [
            str(fixture_path(a[len("fixture:"):])) if a.startswith("fixture:") else a
            for a in argv
        ]
        payload, code, _ = _dispatch(resolved)
        if code != 0:
            print(f"{name}: dispatch exited {code}, refusing to freeze")
            return 1
        golden = {"name": name, "argv": argv, "expect": payload}
        if note:
            golden["note"] = note
        path = out_dir / f"{name}.json"
        path.write_text(json.dumps(golden, sort_keys=True, indent=2) + "\n")
        print(f"froze {path.name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
