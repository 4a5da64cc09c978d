"""Independent dense-solver oracle for graded dimensions and generator counts.

This script deliberately avoids importing the package.  It models a degree-d
derivation as a dense vector of unknown rational coefficients, imposes the
divisibility conditions through sympy's multivariate division, and reads
dimensions off sympy nullspaces.  Generator counts per degree are obtained by
stacking x_j * (basis of the previous piece) and comparing ranks, recomputed
from scratch at every degree.

Run it directly to print the tables that the test suite freezes:

    python3 tests/oracle_dense.py
"""

from __future__ import annotations

import itertools
import sys

import sympy as sp

X = sp.symbols("x y z")


def monomials(d: int) -> list[tuple[int, int, int]]:
    if d < 0:
        return []
    out = []
    for a in range(d, -1, -1):
        for b in range(d - a, -1, -1):
            out.append((a, b, d - a - b))
    return out


def mono_expr(m: tuple[int, int, int]):
    return X[0] ** m[0] * X[1] ** m[1] * X[2] ** m[2]


def piece_basis(forms: list, d: int, mode: str) -> list[list[sp.Rational]]:
    """Basis vectors of the degree-d piece, as dense coefficient lists."""
    mons = monomials(d)
    unknowns = [sp.Symbol(f"a_{i}_{t}") for i in range(3) for t in range(len(mons))]
    comps = []
    for i in range(3):
        comps.append(
            sum(
                unknowns[i * len(mons) + t] * mono_expr(m)
                for t, m in enumerate(mons)
            )
        )
    equations = []
    for alpha in forms:
        value = sp.expand(sum(comps[i] * sp.diff(alpha, X[i]) for i in range(3)))
        _, rem = sp.reduced(value, [alpha], *X)
        equations.extend(sp.Poly(rem, *X).coeffs() if rem != 0 else [])
    if mode == "D0":
        Q = sp.expand(sp.prod(forms))
        value = sp.expand(sum(comps[i] * sp.diff(Q, X[i]) for i in range(3)))
        equations.extend(sp.Poly(value, *X).coeffs() if value != 0 else [])
    if equations:
        mat = sp.Matrix([[sp.expand(eq).coeff(u) for u in unknowns] for eq in equations])
        null = mat.nullspace()
    else:
        null = [sp.eye(len(unknowns))[:, j] for j in range(len(unknowns))]
    return [[sp.nsimplify(v) for v in vec] for vec in null]


def new_generator_count(forms: list, d: int, mode: str) -> tuple[int, int]:
    """(dim of the piece, number of minimal generators in degree d)."""
    basis = piece_basis(forms, d, mode)
    dim = len(basis)
    if d == 0:
        return dim, dim
    prev = piece_basis(forms, d - 1, mode)
    mons_prev = monomials(d - 1)
    idx = {m: t for t, m in enumerate(monomials(d))}
    rows = []
    for vec in prev:
        for j in range(3):
            out = [sp.Integer(0)] * (3 * len(idx))
            for i in range(3):
                for t, m in enumerate(mons_prev):
                    c = vec[i * len(mons_prev) + t]
                    if c != 0:
                        mm = list(m)
                        mm[j] += 1
                        out[i * len(idx) + idx[tuple(mm)]] = c
            rows.append(out)
    span = sp.Matrix(rows).rank() if rows else 0
    return dim, dim - span


def tabulate(name: str, forms: list, mode: str, dmax: int) -> list[tuple[int, int, int]]:
    table = []
    for d in range(dmax + 1):
        dim, new = new_generator_count(forms, d, mode)
        table.append((d, dim, new))
    print(f"{name} [{mode}]:")
    for d, dim, new in table:
        print(f"  degree {d}: dim {dim}, new generators {new}")
    return table


def main() -> int:
    x, y, z = X

    print("boolean xyz, D, degree 1:")
    dim, _ = new_generator_count([x, y, z], 1, "D")
    print(f"  dim {dim}")
    print()

    tabulate("generic 4 lines x,y,z,x+y+z", [x, y, z, x + y + z], "D0", 4)
    print()
    tabulate("generic 4 lines x,y,z,x+y+z", [x, y, z, x + y + z], "D", 4)
    print()

    classic = [
        x,
        y,
        x - y - z,
        x - y + z,
        2 * x + y - 2 * z,
        x + 3 * y - 3 * z,
        3 * x + 2 * y + 3 * z,
        x + 5 * y + 5 * z,
        7 * x - 4 * y - z,
    ]
    print("classic nine lines, D0 piece dimensions:")
    for d in (4, 5):
        basis = piece_basis(classic, d, "D0")
        print(f"  degree {d}: dim {len(basis)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
