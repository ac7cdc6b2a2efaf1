"""The coefficient differential field: Q or Q(t) with derivation d/dt.

Rationals are ``fractions.Fraction``.  A :class:`FieldElem` is a reduced
quotient of rational polynomials in ``t`` with monic denominator, so two
equal field elements are always structurally equal.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from . import _upoly as up
from .errors import DivisionByZero

Rat = Fraction

__all__ = ["Rat", "FieldElem", "fe_arith", "fe_derive", "ZERO", "ONE", "T"]


class FieldElem:
    """An element ``num/den`` of Q(t); constants have ``den == (1,)`` and ``deg(num) <= 0``."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(), den=up.ONE, *, _reduced=False):
        if not _reduced:
            num = up.trim([Fraction(c) for c in num])
            den = up.trim([Fraction(c) for c in den])
            if not den:
                raise DivisionByZero("zero denominator")
            if not num:
                den = up.ONE
            elif len(den) > 1:
                g = up.gcd_q(num, den)
                if len(g) > 1:
                    num = up.divmod_(num, g)[0]
                    den = up.divmod_(den, g)[0]
            lc = den[-1]
            if lc != 1:
                num = tuple(c / lc for c in num)
                den = tuple(c / lc for c in den)
        self.num = num
        self.den = den
        self._hash = None

    # construction -----------------------------------------------------

    @classmethod
    def const(cls, c) -> "FieldElem":
        c = Fraction(c)
        return cls((c,) if c else (), up.ONE, _reduced=True)

    @classmethod
    def poly(cls, coeffs) -> "FieldElem":
        return cls(up.trim([Fraction(c) for c in coeffs]), up.ONE, _reduced=True)

    @classmethod
    def coerce(cls, x) -> "FieldElem":
        if isinstance(x, FieldElem):
            return x
        if isinstance(x, (int, Rational)):
            return cls.const(x)
        if isinstance(x, str):
            return cls.parse(x)
        raise TypeError(f"cannot convert {type(x).__name__} to FieldElem")

    @classmethod
    def parse(cls, text: str) -> "FieldElem":
        from .parsing import parse_field_elem

        return parse_field_elem(text)

    # predicates -------------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    @property
    def is_const(self) -> bool:
        return len(self.den) == 1 and len(self.num) <= 1

    @property
    def is_poly(self) -> bool:
        return len(self.den) == 1

    def as_rat(self) -> Fraction:
        if not self.is_const:
            raise ValueError(f"{self} is not a constant")
        return self.num[0] if self.num else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Rational)):
            return self.is_const and self.as_rat() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.as_rat()) if self.is_const else hash((self.num, self.den))
        return self._hash

    # arithmetic -------------------------------------------------------

    def __neg__(self):
        return FieldElem(up.neg(self.num), self.den, _reduced=True)

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if len(self.den) == 1 and len(other.den) == 1:
            return FieldElem(up.add(self.num, other.num), up.ONE, _reduced=True)
        if self.den == other.den:
            return FieldElem(up.add(self.num, other.num), self.den)
        num = up.add(up.mul(self.num, other.den), up.mul(other.num, self.den))
        return FieldElem(num, up.mul(self.den, other.den))

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        if len(self.den) == 1 and len(other.den) == 1:
            return FieldElem(up.mul(self.num, other.num), up.ONE, _reduced=True)
        if len(other.num) == 1 and len(other.den) == 1:
            return FieldElem(up.scale(self.num, other.num[0]), self.den, _reduced=True)
        if len(self.num) == 1 and len(self.den) == 1:
            return FieldElem(up.scale(other.num, self.num[0]), other.den, _reduced=True)
        return FieldElem(up.mul(self.num, other.num), up.mul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return FieldElem(self.den, self.num)

    def __truediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise DivisionByZero(f"division of {self} by zero")
        if other.is_const:
            c = other.num[0]
            return FieldElem(tuple(x / c for x in self.num), self.den, _reduced=True)
        return FieldElem(up.mul(self.num, other.den), up.mul(self.den, other.num))

    def __rtruediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def derive(self) -> "FieldElem":
        if len(self.den) == 1:
            return FieldElem(up.derive(self.num), up.ONE, _reduced=True)
        num = up.sub(up.mul(up.derive(self.num), self.den), up.mul(self.num, up.derive(self.den)))
        return FieldElem(num, up.mul(self.den, self.den))

    def __call__(self, t):
        return up.evaluate(self.num, t) / up.evaluate(self.den, t)

    # rendering --------------------------------------------------------

    def __str__(self):
        if len(self.den) == 1:
            return _poly_str(self.num)
        return f"({_poly_str(self.num)})/({_poly_str(self.den)})"

    def __repr__(self):
        return f"FieldElem({str(self)!r})"

    @property
    def is_atomic(self) -> bool:
        """True when the rendering needs no parentheses as a factor."""
        return self.is_const and not (self.num and self.num[0].denominator != 1)


def _lift(x):
    if isinstance(x, FieldElem):
        return x
    if isinstance(x, (int, Rational)):
        return FieldElem.const(x)
    return NotImplemented


def _rat_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _poly_str(a) -> str:
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        mag = abs(c)
        if not mono:
            body = _rat_str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_rat_str(mag)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


ZERO = FieldElem((), up.ONE, _reduced=True)
ONE = FieldElem(up.ONE, up.ONE, _reduced=True)
T = FieldElem((Fraction(0), Fraction(1)), up.ONE, _reduced=True)


def fe_arith(a, b, op: str) -> FieldElem:
    a, b = FieldElem.coerce(a), FieldElem.coerce(b)
    if op == "+":
        return a + b
    if op in ("-", "−"):
        return a - b
    if op in ("*", "×"):
        return a * b
    if op in ("/", "÷"):
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def fe_derive(a) -> FieldElem:
    return FieldElem.coerce(a).derive()
