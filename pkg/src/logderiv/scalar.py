"""Exact field scalars: rationals and real quadratic extensions Q(sqrt d).

A scalar is a + b*sqrt(d) with a, b rational and d a squarefree integer >= 2;
plain rationals carry d = None and b = 0.  All arithmetic is exact; there is
no floating point here or anywhere downstream of here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

_RAT = r"-?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(rf"^({_RAT})(?:([+-])({_RAT})\*rt)?$")


class ContextError(ValueError):
    """Raised when scalars from different field contexts are combined."""


def _squarefree(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class FieldContext:
    """Coefficient field of an arrangement: Q (d=None) or Q(sqrt d)."""

    d: int | None = None

    def __post_init__(self) -> None:
        if self.d is not None and not _squarefree(self.d):
            raise ValueError(f"d must be a squarefree integer >= 2, got {self.d}")

    @property
    def label(self) -> str:
        return "Q" if self.d is None else f"Q(sqrt {self.d})"

    @classmethod
    def from_label(cls, text: str) -> "FieldContext":
        text = text.strip()
        if text == "Q":
            return cls(None)
        m = re.fullmatch(r"Q\(sqrt (\d+)\)", text)
        if m is None:
            raise ValueError(f"unrecognized field label: {text!r}")
        return cls(int(m.group(1)))

    def zero(self) -> "Scalar":
        return Scalar(Fraction(0), Fraction(0), self.d)

    def one(self) -> "Scalar":
        return Scalar(Fraction(1), Fraction(0), self.d)

    def from_int(self, n: int) -> "Scalar":
        return Scalar(Fraction(n), Fraction(0), self.d)

    def from_fraction(self, q: Fraction) -> "Scalar":
        return Scalar(Fraction(q), Fraction(0), self.d)

    def sqrt_term(self) -> "Scalar":
        if self.d is None:
            raise ContextError("rational context has no sqrt term")
        return Scalar(Fraction(0), Fraction(1), self.d)

    def parse(self, text: str) -> "Scalar":
        return parse_scalar(text, self.d)


class Scalar:
    """Element a + b*sqrt(d) of Q or Q(sqrt d), always in lowest terms."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Fraction, b: Fraction = Fraction(0), d: int | None = None):
        if d is None and b:
            raise ContextError("rational scalar cannot carry a sqrt part")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name: str, value: object) -> None:  # pragma: no cover
        raise AttributeError("Scalar is immutable")

    @classmethod
    def from_int(cls, n: int, d: int | None = None) -> "Scalar":
        return cls(Fraction(n), Fraction(0), d)

    def _coerce(self, other: object) -> "Scalar | None":
        if isinstance(other, Scalar):
            if self.d == other.d:
                return other
            if other.d is None:
                return Scalar(other.a, Fraction(0), self.d)
            if self.d is None:
                return other
            raise ContextError(f"mixed contexts: sqrt {self.d} vs sqrt {other.d}")
        if isinstance(other, int):
            return Scalar(Fraction(other), Fraction(0), self.d)
        if isinstance(other, Fraction):
            return Scalar(Fraction(other), Fraction(0), self.d)
        return None

    def _join(self, other: "Scalar") -> int | None:
        return self.d if self.d is not None else other.d

    def __add__(self, other: object) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.a + o.a, self.b + o.b, self._join(o))

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self.a, -self.b, self.d)

    def __sub__(self, other: object) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.a - o.a, self.b - o.b, self._join(o))

    def __rsub__(self, other: object) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: object) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._join(o)
        if self.b and o.b:
            return Scalar(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)
        return Scalar(self.a * o.a, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def conjugate(self) -> "Scalar":
        return Scalar(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        if self.d is None:
            return self.a * self.a
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> "Scalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("scalar has no inverse")
        return Scalar(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other: object) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = Scalar(Fraction(1), Fraction(0), self.d)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other) if not isinstance(other, Scalar) else other
        if not isinstance(o, Scalar):
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    @property
    def is_rational(self) -> bool:
        return not self.b

    def residue(self, p: int, sqrt_d: int | None = None) -> int:
        """Image in Z/p; raises ZeroDivisionError when p divides a denominator."""
        try:
            num = self.a.numerator * pow(self.a.denominator, -1, p)
            if not self.b:
                return num % p
            if sqrt_d is None:
                raise ValueError("sqrt part present but no modular square root given")
            bnum = self.b.numerator * pow(self.b.denominator, -1, p)
        except ValueError as exc:
            if "invertible" not in str(exc):
                raise
            raise ZeroDivisionError(f"denominator divisible by {p}") from None
        return (num + bnum * sqrt_d) % p

    def __str__(self) -> str:
        if not self.b:
            return _fmt_fraction(self.a)
        sign = "+" if self.b > 0 else "-"
        return f"{_fmt_fraction(self.a)}{sign}{_fmt_fraction(abs(self.b))}*rt"

    def __repr__(self) -> str:
        d = "" if self.d is None else f", d={self.d}"
        return f"Scalar({str(self)!r}{d})"


def _fmt_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_scalar(text: str, d: int | None = None) -> Scalar:
    """Parse `p`, `p/q`, `p/q+r/s*rt` or `p/q-r/s*rt` (rt = sqrt(d) of the context)."""
    m = _SCALAR_RE.match(text.strip())
    if m is None:
        raise ValueError(f"cannot parse scalar: {text!r}")
    a = Fraction(m.group(1))
    if m.group(3) is None:
        return Scalar(a, Fraction(0), d)
    if d is None:
        raise ContextError(f"sqrt term {text!r} needs a quadratic context")
    b = Fraction(m.group(3))
    if m.group(2) == "-":
        b = -b
    return Scalar(a, b, d)
