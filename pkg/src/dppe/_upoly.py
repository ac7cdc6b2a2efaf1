"""Dense univariate polynomials in ``t``.

Two flavours live here.  Rational polynomials are tuples of ``Fraction``
stored lowest degree first with no trailing zeros (``()`` is zero).  Integer
polynomials are lists of ``int`` in the same order and are used by the
fraction-free routines (gcd, Bareiss) where ``Fraction`` overhead dominates.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

QPoly = tuple  # tuple[Fraction, ...]
ZPoly = list  # list[int]

ZERO: QPoly = ()
ONE: QPoly = (Fraction(1),)


def trim(c: Sequence) -> tuple:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def deg(a: Sequence) -> int:
    return len(a) - 1


def const(c) -> QPoly:
    c = Fraction(c)
    return (c,) if c else ZERO


def add(a: QPoly, b: QPoly) -> QPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def neg(a: QPoly) -> QPoly:
    return tuple(-c for c in a)


def sub(a: QPoly, b: QPoly) -> QPoly:
    return add(a, neg(b))


def scale(a: QPoly, c) -> QPoly:
    if not c:
        return ZERO
    return tuple(x * c for x in a)


def mul(a: QPoly, b: QPoly) -> QPoly:
    if not a or not b:
        return ZERO
    if len(a) == 1:
        return scale(b, a[0])
    if len(b) == 1:
        return scale(a, b[0])
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def divmod_(a: QPoly, b: QPoly) -> tuple[QPoly, QPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return ZERO, a
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    q = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = r[k]
        if not c:
            continue
        c = c / lb
        q[k - db] = c
        for j in range(db + 1):
            r[k - db + j] -= c * b[j]
    return trim(q), trim(r[:db])


def monic(a: QPoly) -> QPoly:
    if not a:
        return a
    lc = a[-1]
    if lc == 1:
        return a
    return tuple(c / lc for c in a)


def derive(a: QPoly) -> QPoly:
    return trim([a[k] * k for k in range(1, len(a))])


def evaluate(a: QPoly, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


# --- integer polynomials -------------------------------------------------


def to_primitive_z(a: QPoly) -> tuple[Fraction, ZPoly]:
    """Split a rational polynomial as ``scale * primitive`` with integer primitive part."""
    if not a:
        return Fraction(0), []
    den = lcm(*(c.denominator for c in a))
    ints = [int(c * den) for c in a]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return Fraction(g, den), [c // g for c in ints]


def z_content(a: ZPoly) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def z_trim(a: list) -> ZPoly:
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    del a[n:]
    return a


def z_add(a: ZPoly, b: ZPoly) -> ZPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return z_trim(out)


def z_sub(a: ZPoly, b: ZPoly) -> ZPoly:
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return z_trim(out)


def z_mul(a: ZPoly, b: ZPoly) -> ZPoly:
    if not a or not b:
        return []
    if len(a) == 1:
        c = a[0]
        return [c * y for y in b]
    if len(b) == 1:
        c = b[0]
        return [c * x for x in a]
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def z_exact_div(a: ZPoly, b: ZPoly) -> ZPoly:
    """Quotient of ``a`` by ``b`` when the division is known to be exact in Z[t]."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    db = len(b) - 1
    if db == 0:
        c = b[0]
        return [x // c for x in a]
    r = list(a)
    lb = b[-1]
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = r[k]
        if not c:
            continue
        c //= lb
        q[k - db] = c
        for j in range(db + 1):
            r[k - db + j] -= c * b[j]
    return z_trim(q)


def z_prem(a: ZPoly, b: ZPoly) -> ZPoly:
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for j in range(db + 1):
            r[shift + j] -= c * b[j]
        z_trim(r)
    return r


def z_gcd(a: ZPoly, b: ZPoly) -> ZPoly:
    """Primitive gcd in Z[t] by the primitive polynomial remainder sequence."""
    if not a:
        return _z_primitive(b)
    if not b:
        return _z_primitive(a)
    ca, cb = z_content(a), z_content(b)
    a = [x // ca for x in a]
    b = [x // cb for x in b]
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = z_prem(a, b)
        if r:
            c = z_content(r)
            r = [x // c for x in r]
        a, b = b, r
    return _z_primitive(a)


def _z_primitive(a: ZPoly) -> ZPoly:
    if not a:
        return []
    c = z_content(a)
    if a[-1] < 0:
        c = -c
    return [x // c for x in a]


def gcd_q(a: QPoly, b: QPoly) -> QPoly:
    """Monic gcd of two rational polynomials."""
    if not a:
        return monic(b)
    if not b:
        return monic(a)
    if len(a) == 1 or len(b) == 1:
        return ONE
    _, za = to_primitive_z(a)
    _, zb = to_primitive_z(b)
    g = z_gcd(za, zb)
    return monic(tuple(Fraction(c) for c in g))


def from_z(a: ZPoly, scale_: Fraction = Fraction(1)) -> QPoly:
    return trim([Fraction(c) * scale_ for c in a])
