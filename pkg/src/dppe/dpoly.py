"""Linear differential polynomials in the x- and u-variables.

A :class:`LinDiffPoly` maps derivatives (:class:`DerVar`) to coefficients in a
ring R, which is either the field or the ring of polynomials in ``p``; the
only things required of R are ``+``, ``*`` by field elements, ``bool`` and
``derive``.
"""

from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field as dc_field
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

from .difffield import ONE, ZERO, FieldElem
from .errors import InvalidSystem, NonRepresentable, ZeroPolynomial
from .oreops import OrePoly, ore_gcld, ore_left_divmod

__all__ = [
    "DerVar",
    "X",
    "U",
    "LinDiffPoly",
    "DPPESystem",
    "rstar_key",
    "ord_in",
    "apply_op",
    "decompose",
    "assemble",
    "substitute",
    "co_order",
    "leading_vector",
    "id_content_primitive",
    "normalize",
]


class DerVar(NamedTuple):
    kind: str  # "x" or "u"
    index: int
    order: int = 0

    def derive(self, k: int = 1) -> "DerVar":
        return DerVar(self.kind, self.index, self.order + k)

    @property
    def var(self) -> tuple[str, int]:
        return (self.kind, self.index)

    def __str__(self):
        base = f"{self.kind}{self.index}"
        if self.order <= 2:
            return base + "'" * self.order
        return f"{base}^({self.order})"


def X(i: int, k: int = 0) -> DerVar:
    return DerVar("x", i, k)


def U(j: int, k: int = 0) -> DerVar:
    return DerVar("u", j, k)


def rstar_key(v: DerVar) -> tuple:
    """Sort key for the ranking that eliminates U with respect to X.

    Every u-derivative ranks above every x-derivative.  Among u's the ranking
    is orderly with u1 lowest; among x's it is orderly with x_n lowest.
    """
    if v.kind == "u":
        return (1, v.order, v.index)
    return (0, v.order, -v.index)


class LinDiffPoly:
    """``sum(terms[v] * v) + constant`` with no stored zero coefficients."""

    __slots__ = ("terms", "constant")

    def __init__(self, terms: Mapping[DerVar, object] | Iterable = (), constant=ZERO):
        items = terms.items() if isinstance(terms, Mapping) else terms
        self.terms = {v: c for v, c in items if c}
        self.constant = constant

    @classmethod
    def var(cls, v: DerVar, c=ONE) -> "LinDiffPoly":
        return cls({v: c})

    @classmethod
    def parse(cls, text: str) -> "LinDiffPoly":
        from .parsing import parse_lin_poly

        return parse_lin_poly(text)

    def coeff(self, v: DerVar, zero=ZERO):
        return self.terms.get(v, zero)

    def __bool__(self):
        return bool(self.terms) or bool(self.constant)

    def __eq__(self, other):
        if isinstance(other, LinDiffPoly):
            return self.terms == other.terms and self.constant == other.constant
        return NotImplemented

    __hash__ = None

    def __add__(self, other: "LinDiffPoly") -> "LinDiffPoly":
        terms = dict(self.terms)
        for v, c in other.terms.items():
            terms[v] = terms[v] + c if v in terms else c
        return LinDiffPoly(terms, self.constant + other.constant)

    def __neg__(self):
        return LinDiffPoly({v: -c for v, c in self.terms.items()}, -self.constant)

    def __sub__(self, other: "LinDiffPoly") -> "LinDiffPoly":
        return self + (-other)

    def scale(self, c) -> "LinDiffPoly":
        """Multiply every coefficient by ``c`` (a field element or ring element)."""
        return LinDiffPoly({v: c * x for v, x in self.terms.items()}, c * self.constant)

    def map_coeffs(self, f: Callable) -> "LinDiffPoly":
        return LinDiffPoly({v: f(c) for v, c in self.terms.items()}, f(self.constant))

    def derive(self) -> "LinDiffPoly":
        terms: dict = {}
        for v, c in self.terms.items():
            dc = c.derive()
            if dc:
                terms[v] = terms[v] + dc if v in terms else dc
            w = v.derive()
            terms[w] = terms[w] + c if w in terms else c
        return LinDiffPoly(terms, self.constant.derive())

    def ord(self, var: tuple[str, int]) -> int:
        return max((v.order for v in self.terms if v.var == var), default=-1)

    @property
    def x_only(self) -> bool:
        return all(v.kind == "x" for v in self.terms)

    @property
    def u_only(self) -> bool:
        return all(v.kind == "u" for v in self.terms)

    def leader(self, key=rstar_key) -> DerVar | None:
        return max(self.terms, key=key) if self.terms else None

    def sorted_terms(self, key=rstar_key) -> list:
        return sorted(self.terms.items(), key=lambda vc: key(vc[0]), reverse=True)

    def __str__(self):
        parts = []
        for v, c in self.sorted_terms():
            parts.append(_term_str(c, str(v)))
        if self.constant or not parts:
            parts.append(_term_str(self.constant, ""))
        out = parts[0]
        for s in parts[1:]:
            out += " - " + s[1:] if s.startswith("-") else " + " + s
        return out

    def __repr__(self):
        return f"LinDiffPoly({str(self)!r})"


def _term_str(c, name: str) -> str:
    if not name and not c:
        return "0"
    neg = isinstance(c, FieldElem) and c.is_const and c.as_rat() < 0
    mag = -c if neg else c
    atomic = isinstance(mag, FieldElem) and mag.is_atomic
    if not name:
        body = str(mag) if atomic else f"({mag})"
    elif mag == 1:
        body = name
    elif atomic:
        body = f"{mag}*{name}"
    else:
        body = f"({mag})*{name}"
    return ("-" if neg else "") + body


def ord_in(P: LinDiffPoly, var) -> int:
    if isinstance(var, DerVar):
        var = var.var
    return P.ord(var)


def apply_op(L: OrePoly, P: LinDiffPoly) -> LinDiffPoly:
    acc = LinDiffPoly()
    cur = P
    for k, c in enumerate(L.coeffs):
        if k:
            cur = cur.derive()
        if c:
            acc = acc + cur.scale(c)
    return acc


@dataclass(frozen=True)
class DPPESystem:
    """``x_i = a_i - H_i(U)``, i.e. ``F_i = x_i - a_i + H_i`` for ``i = 1..n``.

    ``H`` holds homogeneous polynomials in the u's.  Their coefficients are
    field elements, or polynomials in ``p`` for a perturbed system.
    """

    a: tuple
    H: tuple
    field: str = "Q"
    perturbation: tuple | None = None
    check: bool = dc_field(default=True, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(FieldElem.coerce(x) for x in self.a))
        object.__setattr__(self, "H", tuple(self.H))
        if self.check:
            self.validate()

    @property
    def n(self) -> int:
        return len(self.a)

    def validate(self):
        n = self.n
        if n < 2:
            raise InvalidSystem("need at least two equations")
        if len(self.H) != n:
            raise InvalidSystem("a and H must have the same length")
        used = set()
        for i, h in enumerate(self.H, 1):
            if not h.u_only:
                raise InvalidSystem(f"H_{i} contains x-variables")
            if h.constant:
                raise InvalidSystem(f"H_{i} has a nonzero constant term")
            for v in h.terms:
                if not 1 <= v.index <= n - 1:
                    raise InvalidSystem(f"parameter u{v.index} out of range 1..{n - 1}")
                used.add(v.index)
        if not any(self.H):
            raise InvalidSystem("all right-hand sides are constant")
        missing = sorted(set(range(1, n)) - used)
        if missing:
            raise InvalidSystem("unused parameters: " + ", ".join(f"u{j}" for j in missing))

    def F(self, i: int) -> LinDiffPoly:
        """``F_i`` for 1-based ``i``."""
        h = self.H[i - 1]
        terms = dict(h.terms)
        terms[X(i)] = ONE if not self.perturbation else _one_like(h)
        return LinDiffPoly(terms, -self.a[i - 1])

    def P(self, i: int) -> LinDiffPoly:
        """The parametrization ``P_i = a_i - H_i``."""
        return LinDiffPoly({v: -c for v, c in self.H[i - 1].terms.items()}, self.a[i - 1])

    def is_over_q(self) -> bool:
        coeffs = list(self.a)
        for h in self.H:
            for c in h.terms.values():
                coeffs.extend(c.coeffs if hasattr(c, "coeffs") else [c])
        return all(c.is_const for c in coeffs)

    def __str__(self):
        return "\n".join(f"x{i} = {self.P(i)}" for i in range(1, self.n + 1))


def _one_like(h: LinDiffPoly):
    for c in h.terms.values():
        return type(c).coerce(1)
    return ONE


def decompose(A: LinDiffPoly, sys: DPPESystem) -> tuple[list[OrePoly], FieldElem]:
    """Operators ``L_i`` with ``A = sum L_i(x_i) + const`` and the residual ``const + sum L_i(a_i)``."""
    if not A.x_only:
        raise ValueError("decompose expects a polynomial in the x-variables only")
    n = sys.n
    coeffs: list[dict[int, FieldElem]] = [{} for _ in range(n)]
    for v, c in A.terms.items():
        if not 1 <= v.index <= n:
            raise ValueError(f"{v} is not a variable of the system")
        coeffs[v.index - 1][v.order] = c
    ops = []
    for cs in coeffs:
        top = max(cs, default=-1)
        ops.append(OrePoly(cs.get(k, ZERO) for k in range(top + 1)))
    residual = A.constant
    for L, a in zip(ops, sys.a):
        if a:
            residual = residual + L.apply(a)
    return ops, residual


def assemble(ops: Sequence[OrePoly], sys: DPPESystem) -> LinDiffPoly:
    """``sum ops[i](x_i - a_i)``."""
    terms = {}
    const = ZERO
    for i, L in enumerate(ops, 1):
        for k, c in enumerate(L.coeffs):
            if c:
                terms[X(i, k)] = c
        if sys.a[i - 1]:
            const = const - L.apply(sys.a[i - 1])
    return LinDiffPoly(terms, const)


def substitute(A: LinDiffPoly, sys: DPPESystem) -> LinDiffPoly:
    """Replace every ``x_ik`` by ``d^k P_i(U)``; zero exactly when ``A`` is in the implicit ideal."""
    if not A.x_only:
        raise ValueError("substitute expects a polynomial in the x-variables only")
    ops, _ = decompose(A, sys)
    acc = LinDiffPoly({}, A.constant)
    for i, L in enumerate(ops, 1):
        if L:
            acc = acc + apply_op(L, sys.P(i))
    return acc


def co_order(B: LinDiffPoly, profile) -> int:
    """Largest ``k`` with ``d^k B`` inside the prolonged window.

    An x-variable absent from ``B`` counts with order -1.
    """
    if not B:
        raise ZeroPolynomial("co-order of the zero polynomial")
    N, gamma = profile.N, profile.gamma
    return min(N - o - gamma - B.ord(("x", i)) for i, o in enumerate(profile.o, 1))


def leading_vector(B: LinDiffPoly, sys: DPPESystem, profile) -> list[FieldElem]:
    """Coefficients of ``d^(N - o_i - gamma - c(B))`` in the operators of ``B``."""
    c = co_order(B, profile)
    ops, _ = decompose(B, sys)
    return [L[profile.N - o - profile.gamma - c] for L, o in zip(ops, profile.o)]


def id_content_primitive(B: LinDiffPoly, sys: DPPESystem) -> tuple[OrePoly, LinDiffPoly]:
    if not B:
        raise ZeroPolynomial("ID-content of the zero polynomial")
    ops, residual = decompose(B, sys)
    if residual:
        raise NonRepresentable(f"residual {residual} != 0: B is not sum L_i(x_i - a_i)")
    content = ore_gcld(ops)
    prim_ops = []
    for L in ops:
        q, r = ore_left_divmod(L, content)
        if r:
            raise ArithmeticError("gcld does not left-divide an operator")
        prim_ops.append(q)
    return content, assemble(prim_ops, sys)


def normalize(A: LinDiffPoly) -> LinDiffPoly:
    """Scale so the highest ranked x-derivative has coefficient 1."""
    lead = A.leader()
    if lead is None:
        return A
    return A.scale(A.terms[lead].inverse())
