"""Exact matrices over the field or over K[p]: determinant, rank, reduced echelon form.

Field matrices are brought to Z[t] by clearing row denominators and then
handled by fraction-free (Bareiss) elimination.  Matrices over K[p] are
evaluated at integer points and the determinant is recovered by
interpolation.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from . import _upoly as up
from .difffield import ONE, ZERO, FieldElem
from .pertpoly import PertPoly

__all__ = ["MatrixR", "det", "rank", "rref", "bareiss_det"]


class MatrixR:
    """Rectangular matrix of field elements or polynomials in p."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if isinstance(other, MatrixR):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def delete_row(self, r: int) -> "MatrixR":
        return MatrixR(self.rows[:r] + self.rows[r + 1 :])

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def map(self, f) -> "MatrixR":
        return MatrixR([[f(x) for x in r] for r in self.rows])

    def at_p(self, value) -> "MatrixR":
        return self.map(lambda x: x.at(value) if isinstance(x, PertPoly) else x)

    def to_text(self) -> str:
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"MatrixR({self.shape[0]}x{self.shape[1]})"


# --- field matrices via Z[t] ----------------------------------------------


def _clear_row(row: Sequence[FieldElem]) -> tuple[list, up.QPoly]:
    """Integer-polynomial row and the Q[t] multiplier that produced it."""
    den = up.ONE
    for x in row:
        if len(x.den) > 1:
            den = up.mul(den, up.divmod_(x.den, up.gcd_q(den, x.den))[0])
    qrow = []
    for x in row:
        if not x.num:
            qrow.append(up.ZERO)
        elif den == x.den:
            qrow.append(x.num)
        else:
            qrow.append(up.mul(x.num, up.divmod_(den, x.den)[0]))
    scale = 1
    for q in qrow:
        for c in q:
            if c.denominator != 1:
                scale = lcm(scale, c.denominator)
    zrow = [[int(c * scale) for c in q] for q in qrow]
    return zrow, up.scale(den, Fraction(scale))


def _ff_eliminate(m: list[list[list[int]]], ncols: int):
    """In-place fraction-free row echelon form over Z[t].

    Returns ``(pivot_cols, sign)``.  After the call, the entry at the last
    pivot of a square nonsingular matrix equals its determinant times ``sign``.
    """
    nrows = len(m)
    prev = [1]
    sign = 1
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            sign = -sign
        pr = m[r]
        pv = pr[c]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = up.z_exact_div(
                        up.z_sub(up.z_mul(row[j], pv), up.z_mul(f, pr[j])), prev
                    )
            elif pv != prev:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = up.z_exact_div(up.z_mul(row[j], pv), prev)
            row[c] = []
        prev = pv
        pivots.append(c)
        r += 1
    return pivots, sign


def _det_field(rows: Sequence[Sequence[FieldElem]]) -> FieldElem:
    n = len(rows)
    if n == 0:
        return ONE
    mult = up.ONE
    m = []
    for row in rows:
        zrow, s = _clear_row(row)
        m.append(zrow)
        mult = up.mul(mult, s)
    if all(len(x) <= 1 for r in m for x in r):
        d = _bareiss_int([[x[0] if x else 0 for x in r] for r in m])
        return FieldElem.const(Fraction(d) / mult[0])
    pivots, sign = _ff_eliminate(m, n)
    if len(pivots) < n:
        return ZERO
    d = [sign * c for c in m[n - 1][n - 1]]
    return FieldElem(up.from_z(d), mult)


def _bareiss_int(m: list[list[int]]) -> int:
    n = len(m)
    prev, sign = 1, 1
    for k in range(n - 1):
        if not m[k][k]:
            piv = next((i for i in range(k + 1, n) if m[i][k]), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pk = m[k]
        pv = pk[k]
        for i in range(k + 1, n):
            row = m[i]
            f = row[k]
            for j in range(k + 1, n):
                row[j] = (row[j] * pv - f * pk[j]) // prev
        prev = pv
    return sign * m[n - 1][n - 1]


def _interpolate(xs: list[int], ys: list[FieldElem]) -> PertPoly:
    """Monomial coefficients of the polynomial through ``(xs[k], ys[k])`` (Newton form)."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [ZERO] * n
    poly[0] = coef[n - 1]
    size = 1
    for k in range(n - 2, -1, -1):
        # poly = poly * (p - xs[k]) + coef[k]
        new = [ZERO] * (size + 1)
        for i in range(size):
            new[i + 1] = new[i + 1] + poly[i]
            new[i] = new[i] - poly[i] * xs[k]
        new[0] = new[0] + coef[k]
        size += 1
        poly[:size] = new
    return PertPoly(poly[:size])


def _det_pert(rows: Sequence[Sequence]) -> PertPoly:
    bound = 0
    for row in rows:
        bound += max((max(x.degree, 0) if isinstance(x, PertPoly) else 0 for x in row), default=0)
    xs = list(range(bound + 1))
    ys = []
    for x0 in xs:
        pt = FieldElem.const(x0)
        ys.append(
            _det_field(
                [[x.at(pt) if isinstance(x, PertPoly) else x for x in row] for row in rows]
            )
        )
    return _interpolate(xs, ys)


def det(M) -> FieldElem | PertPoly:
    """Exact determinant; the result is a PertPoly when any entry is one."""
    rows = M.rows if isinstance(M, MatrixR) else tuple(tuple(r) for r in M)
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if any(isinstance(x, PertPoly) for r in rows for x in r):
        return _det_pert(rows)
    return _det_field([[FieldElem.coerce(x) for x in r] for r in rows])


def rank(M) -> int:
    rows = M.rows if isinstance(M, MatrixR) else tuple(tuple(r) for r in M)
    if not rows or not rows[0]:
        return 0
    m = [_clear_row([FieldElem.coerce(x) for x in r])[0] for r in rows]
    pivots, _ = _ff_eliminate(m, len(rows[0]))
    return len(pivots)


def rref(M) -> tuple[MatrixR, list[int]]:
    """Reduced row echelon form over the field and its pivot columns."""
    rows = M.rows if isinstance(M, MatrixR) else tuple(tuple(r) for r in M)
    m = [[FieldElem.coerce(x) for x in r] for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return MatrixR(m), pivots


def bareiss_det(rows: Sequence[Sequence], one=ONE):
    """Textbook Bareiss over any domain whose elements offer ``exact_div`` or ``/``."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return one
    prev, sign = one, 1
    for k in range(n - 1):
        if not m[k][k]:
            piv = next((i for i in range(k + 1, n) if m[i][k]), None)
            if piv is None:
                return one * 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev) if hasattr(num, "exact_div") else num / prev
        prev = m[k][k]
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]
