"""Polynomials in the perturbation constant ``p`` (so ``d(p) = 0``) over the field."""

from __future__ import annotations

from numbers import Rational
from typing import Iterable

from .difffield import ZERO, FieldElem
from .errors import DivisionByZero

__all__ = ["PertPoly", "P"]


class PertPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [FieldElem.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "PertPoly":
        out = cls.__new__(cls)
        out.coeffs = coeffs
        return out

    @classmethod
    def coerce(cls, x) -> "PertPoly":
        if isinstance(x, PertPoly):
            return x
        x = FieldElem.coerce(x)
        return cls._raw((x,) if x else ())

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def low_degree(self) -> int:
        """Smallest exponent with a nonzero coefficient, -1 for zero."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return -1

    def __getitem__(self, k: int) -> FieldElem:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, PertPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (FieldElem, int, Rational)):
            return self.coeffs == PertPoly.coerce(other).coeffs
        return NotImplemented

    def __hash__(self):
        if len(self.coeffs) == 1:
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __neg__(self):
        return PertPoly._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return PertPoly(out)

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
        if isinstance(other, (FieldElem, int, Rational)):
            c = FieldElem.coerce(other)
            if not c:
                return PertPoly._raw(())
            return PertPoly._raw(tuple(c * x for x in self.coeffs))
        if not isinstance(other, PertPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PertPoly._raw(())
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = out[i + j] + x * y
        return PertPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = PertPoly.coerce(1)
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: "PertPoly") -> tuple["PertPoly", "PertPoly"]:
        other = PertPoly.coerce(other)
        if not other:
            raise DivisionByZero("division by the zero polynomial in p")
        r = list(self.coeffs)
        db = other.degree
        lc = other.coeffs[-1]
        q = [ZERO] * max(len(r) - db, 0)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if not c:
                continue
            c = c / lc
            q[k - db] = c
            for j, y in enumerate(other.coeffs):
                r[k - db + j] = r[k - db + j] - c * y
        return PertPoly(q), PertPoly(r[:db])

    def exact_div(self, other) -> "PertPoly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def derive(self) -> "PertPoly":
        return PertPoly(c.derive() for c in self.coeffs)

    def at(self, value) -> FieldElem:
        value = FieldElem.coerce(value)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("p" if k == 1 else f"p^{k}")
            neg = c.is_const and c.as_rat() < 0
            mag = -c if neg else c
            if not mono:
                body = str(mag) if mag.is_atomic else f"({mag})"
            elif mag == 1:
                body = mono
            elif mag.is_atomic:
                body = f"{mag}*{mono}"
            else:
                body = f"({mag})*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"PertPoly({str(self)!r})"


def _lift(x):
    if isinstance(x, PertPoly):
        return x
    if isinstance(x, (FieldElem, int, Rational)):
        return PertPoly.coerce(x)
    return NotImplemented


P = PertPoly([0, 1])
