"""Differential operators K[d] with the commutation rule d*c = c*d + c'."""

from __future__ import annotations

from functools import reduce
from typing import Iterable, Sequence

from .difffield import ONE, ZERO, FieldElem
from .errors import AllZeroOperators, DivisionByZeroOperator

__all__ = ["OrePoly", "ore_mul", "ore_left_divmod", "ore_right_divmod", "ore_gcld", "ore_coprime", "ore_matrix_rank", "D"]


class OrePoly:
    """``sum(coeffs[k] * d**k)``; the zero operator has no coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [FieldElem.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "OrePoly":
        op = cls.__new__(cls)
        op.coeffs = coeffs
        return op

    @classmethod
    def monomial(cls, k: int, c=ONE) -> "OrePoly":
        return cls([ZERO] * k + [c])

    @classmethod
    def parse(cls, text: str) -> "OrePoly":
        from .parsing import parse_ore

        return parse_ore(text)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lc(self) -> FieldElem:
        return self.coeffs[-1]

    def __getitem__(self, k: int) -> FieldElem:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, OrePoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "OrePoly") -> "OrePoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return OrePoly(self[k] + other[k] for k in range(n))

    def __sub__(self, other: "OrePoly") -> "OrePoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return OrePoly(self[k] - other[k] for k in range(n))

    def __neg__(self):
        return OrePoly._raw(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, OrePoly):
            return ore_mul(self, other)
        return NotImplemented

    def scale_left(self, c) -> "OrePoly":
        """``c * self`` for a field element ``c``."""
        c = FieldElem.coerce(c)
        return OrePoly(c * x for x in self.coeffs)

    def derive_left(self) -> "OrePoly":
        """``d * self`` expanded with the commutation rule."""
        cs = self.coeffs
        if not cs:
            return self
        out = [ZERO] * (len(cs) + 1)
        for k, c in enumerate(cs):
            out[k] = out[k] + c.derive()
            out[k + 1] = out[k + 1] + c
        return OrePoly(out)

    def apply(self, f: FieldElem) -> FieldElem:
        """Act on a field element: ``sum c_k * f^(k)``."""
        acc, g = ZERO, FieldElem.coerce(f)
        for c in self.coeffs:
            if c:
                acc = acc + c * g
            g = g.derive()
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("d" if k == 1 else f"d^{k}")
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
        return f"OrePoly({str(self)!r})"


D = OrePoly([ZERO, ONE])


def ore_mul(A: OrePoly, B: OrePoly) -> OrePoly:
    if not A or not B:
        return OrePoly()
    acc = [ZERO] * (A.degree + B.degree + 1)
    dB = B
    for k, a in enumerate(A.coeffs):
        if k:
            dB = dB.derive_left()
        if a:
            for j, b in enumerate(dB.coeffs):
                if b:
                    acc[j] = acc[j] + a * b
    return OrePoly(acc)


def ore_left_divmod(L: OrePoly, Lp: OrePoly) -> tuple[OrePoly, OrePoly]:
    """Return ``(q, r)`` with ``L == Lp*q + r`` and ``deg r < deg Lp``."""
    if not Lp:
        raise DivisionByZeroOperator("left division by the zero operator")
    d = Lp.degree
    lc = Lp.lc()
    q = [ZERO] * max(L.degree - d + 1, 0)
    r = L
    while r and r.degree >= d:
        shift = r.degree - d
        c = r.lc() / lc
        q[shift] = q[shift] + c
        r = r - ore_mul(Lp, OrePoly.monomial(shift, c))
    return OrePoly(q), r


def ore_right_divmod(L: OrePoly, Lp: OrePoly) -> tuple[OrePoly, OrePoly]:
    """Return ``(q, r)`` with ``L == q*Lp + r`` and ``deg r < deg Lp``."""
    if not Lp:
        raise DivisionByZeroOperator("right division by the zero operator")
    d = Lp.degree
    lc = Lp.lc()
    q = [ZERO] * max(L.degree - d + 1, 0)
    r = L
    while r and r.degree >= d:
        shift = r.degree - d
        c = r.lc() / lc
        q[shift] = q[shift] + c
        r = r - ore_mul(OrePoly.monomial(shift, c), Lp)
    return OrePoly(q), r


def _monic_right(A: OrePoly) -> OrePoly:
    # A * (1/lc) keeps A a left divisor of the same operators
    return ore_mul(A, OrePoly([A.lc().inverse()]))


def _gcld2(A: OrePoly, B: OrePoly) -> OrePoly:
    while B:
        _, r = ore_left_divmod(A, B)
        A, B = B, r
    return A


def ore_gcld(ops: Sequence[OrePoly]) -> OrePoly:
    """Monic greatest common left divisor, folding pairwise left Euclid."""
    ops = list(ops)
    if not ops or not any(ops):
        raise AllZeroOperators("gcld of zero operators is undefined")
    g = reduce(_gcld2, ops)
    return _monic_right(g)


def ore_coprime(ops: Sequence[OrePoly]) -> bool:
    return ore_gcld(ops).degree == 0


def ore_matrix_rank(rows: Sequence[Sequence[OrePoly]]) -> int:
    """Rank over K[d] of a matrix of operators, by row echelon form.

    Rows are combined with left operator multiples only, so the left module
    they span never changes.  Each pivot column is cleared by the right
    Euclidean algorithm.
    """
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = max((len(r) for r in rows), default=0)
    for j in range(ncols):
        active = [r for r in rows[rank:] if j < len(r) and r[j]]
        if not active:
            continue
        rest = [r for r in rows[rank:] if not (j < len(r) and r[j])]
        while len(active) > 1:
            active.sort(key=lambda r: r[j].degree)
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q, _ = ore_right_divmod(r[j], piv[j])
                r = [a - ore_mul(q, b) for a, b in zip(r, piv)]
                (nxt if r[j] else rest).append(r)
            active = nxt
        rows = rows[:rank] + active + rest
        rank += 1
    return rank
