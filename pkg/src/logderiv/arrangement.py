"""Central hyperplane arrangements: the file format and the standard constructions.

Forms are stored normalized (first nonzero coefficient 1) and must be pairwise
projectively distinct.  The text format is

    # optional comments
    field Q            (or: field Q(sqrt 5))
    dim 3
    1 0 0              (one coefficient row per hyperplane, scalar grammar)
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .poly import HomogPoly, LinearForm, reduce_mod
from .scalar import FieldContext, Scalar

_ZERO = Scalar(Fraction(0))
_ONE = Scalar(Fraction(1))


class Arrangement:
    """A finite set of hyperplanes through the origin of C^ell."""

    __slots__ = ("ctx", "ell", "forms")

    def __init__(self, ctx: FieldContext, ell: int, forms: Iterable[LinearForm]):
        if ell < 1:
            raise ValueError("ambient dimension must be at least 1")
        normalized = []
        seen = set()
        for f in forms:
            if len(f.coeffs) != ell:
                raise ValueError("form length does not match ambient dimension")
            for c in f.coeffs:
                if c.d is not None and c.d != ctx.d:
                    raise ValueError("form coefficients outside the field context")
            nf = f.normalized()
            if nf.coeffs in seen:
                raise ValueError(f"duplicate hyperplane: {nf}")
            seen.add(nf.coeffs)
            normalized.append(nf)
        self.ctx = ctx
        self.ell = ell
        self.forms = tuple(normalized)

    @property
    def size(self) -> int:
        return len(self.forms)

    def __len__(self) -> int:
        return len(self.forms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Arrangement):
            return NotImplemented
        return self.ctx == other.ctx and self.ell == other.ell and self.forms == other.forms

    def __hash__(self) -> int:
        return hash((self.ctx, self.ell, self.forms))

    def same_forms(self, other: "Arrangement") -> bool:
        """Equality as hyperplane sets, ignoring listing order."""
        return (
            self.ell == other.ell
            and frozenset(f.coeffs for f in self.forms) == frozenset(f.coeffs for f in other.forms)
        )

    def index_of(self, H: LinearForm) -> int | None:
        target = H.normalized().coeffs
        for i, f in enumerate(self.forms):
            if f.coeffs == target:
                return i
        return None

    def defining_poly(self) -> HomogPoly:
        Q = HomogPoly.one(self.ell)
        for f in self.forms:
            Q = Q * f.to_poly()
        return Q

    def __repr__(self) -> str:
        return f"Arrangement({self.ctx.label}, ell={self.ell}, n={self.size})"


def parse_arrangement(text: str) -> Arrangement:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if len(lines) < 2:
        raise ValueError("arrangement file needs a field line and a dim line")
    if not lines[0].startswith("field "):
        raise ValueError(f"expected 'field ...', got {lines[0]!r}")
    ctx = FieldContext.from_label(lines[0][len("field ") :])
    if not lines[1].startswith("dim "):
        raise ValueError(f"expected 'dim ...', got {lines[1]!r}")
    ell = int(lines[1][len("dim ") :])
    forms = []
    for line in lines[2:]:
        tokens = line.split()
        if len(tokens) != ell:
            raise ValueError(f"expected {ell} coefficients, got {len(tokens)}: {line!r}")
        forms.append(LinearForm(ctx.parse(t) for t in tokens))
    return Arrangement(ctx, ell, forms)


def format_arrangement(A: Arrangement) -> str:
    out = [f"field {A.ctx.label}", f"dim {A.ell}"]
    out.extend(str(f) for f in A.forms)
    return "\n".join(out) + "\n"


def load(path: str | Path) -> Arrangement:
    return parse_arrangement(Path(path).read_text())


def save(A: Arrangement, path: str | Path) -> None:
    Path(path).write_text(format_arrangement(A))


def add(A: Arrangement, H: LinearForm) -> Arrangement:
    """Adjoin the hyperplane H; raises on a projective duplicate."""
    return Arrangement(A.ctx, A.ell, A.forms + (H,))


def delete(A: Arrangement, H: LinearForm | int) -> Arrangement:
    if isinstance(H, int):
        i = H
        if not 0 <= i < A.size:
            raise IndexError("hyperplane index out of range")
    else:
        found = A.index_of(H)
        if found is None:
            raise ValueError("hyperplane not in arrangement")
        i = found
    return Arrangement(A.ctx, A.ell, A.forms[:i] + A.forms[i + 1 :])


def cone(A: Arrangement, k: int = 1) -> Arrangement:
    """Iterated coning: pad all forms by a zero and append the new coordinate form."""
    out = A
    for _ in range(k):
        ell = out.ell + 1
        forms = [f.extended(ell) for f in out.forms]
        forms.append(LinearForm([_ZERO] * (ell - 1) + [_ONE]))
        out = Arrangement(out.ctx, ell, forms)
    return out


def _join_ctx(c1: FieldContext, c2: FieldContext) -> FieldContext:
    if c1 == c2:
        return c1
    if c1.d is None:
        return c2
    if c2.d is None:
        return c1
    raise ValueError(f"incompatible field contexts {c1.label} and {c2.label}")


def product(A1: Arrangement, A2: Arrangement) -> Arrangement:
    """Product arrangement in C^(ell1+ell2): forms of each factor padded by zeros."""
    ctx = _join_ctx(A1.ctx, A2.ctx)
    ell = A1.ell + A2.ell
    forms = [f.extended(ell) for f in A1.forms]
    pad = tuple(_ZERO for _ in range(A1.ell))
    forms.extend(LinearForm(pad + f.coeffs) for f in A2.forms)
    return Arrangement(ctx, ell, forms)


def restrict(A: Arrangement, H: LinearForm) -> Arrangement:
    """Restriction A^H inside H, an arrangement in ell-1 coordinates.

    Every form not proportional to H is reduced modulo H (pivot substitution);
    zero images are impossible after that filter and projective duplicates
    merge, so the size of the result is |A^H|.
    """
    Hn = H.normalized()
    images = []
    seen = set()
    for f in A.forms:
        if f.proportional_to(Hn):
            continue
        reduced = reduce_mod(f.to_poly(), Hn)
        if reduced.is_zero():
            continue
        coeffs = [_ZERO] * (A.ell - 1)
        for m, c in reduced.terms.items():
            coeffs[m.index(1)] = c
        lf = LinearForm(coeffs).normalized()
        if lf.coeffs not in seen:
            seen.add(lf.coeffs)
            images.append(lf)
    if A.ell - 1 < 1:
        raise ValueError("cannot restrict a 1-dimensional arrangement")
    return Arrangement(A.ctx, A.ell - 1, images)
