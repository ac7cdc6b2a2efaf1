"""Text grammar for field elements, operators, linear polynomials and ``.dppe`` files.

A ``.dppe`` document looks like::

    # comments start with '#'
    field: Q(t)
    params: u1, u2
    x1 = 3 - u1' - u1'' + u2 + 4*u2' + 3*u2''
    x2 = -u1' - u2 + u2''
    x3 = -2 - u1' - t*u2 - u2'
    phi: u1'' + u2, u1, u2'

Derivatives are written with apostrophes or ``^(k)``; ``d`` is the
derivation in operator expressions and ``t`` the field variable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .difffield import ONE, ZERO, T, FieldElem
from .dpoly import DerVar, DPPESystem, LinDiffPoly, X
from .errors import DPPESyntaxError, InvalidSystem, SemanticError
from .oreops import OrePoly

__all__ = [
    "parse_field_elem",
    "parse_ore",
    "parse_lin_poly",
    "parse_document",
    "parse_phi_list",
    "render_document",
    "system_from_F",
    "Document",
]

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d+)?)
  | (?P<var>[xu])(?P<idx>\d+)(?P<marks>'+|\^\(\s*\d+\s*\))?
  | (?P<name>[A-Za-z_]\w*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    value: object
    col: int


def _tokenize(text: str, line: int | None = None) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DPPESyntaxError(f"unexpected character {text[pos]!r}", line, pos + 1)
        col = pos + 1
        pos = m.end()
        if m.group("ws"):
            continue
        if m.group("num"):
            toks.append(_Tok("num", Fraction(m.group("num")), col))
        elif m.group("var"):
            marks = m.group("marks") or ""
            order = marks.count("'") if marks.startswith("'") else (int(marks[2:-1]) if marks else 0)
            toks.append(_Tok("var", DerVar(m.group("var"), int(m.group("idx")), order), col))
        elif m.group("name"):
            toks.append(_Tok("name", m.group("name"), col))
        else:
            toks.append(_Tok("op", m.group("op"), col))
    toks.append(_Tok("end", None, len(text) + 1))
    return toks


class _Lin:
    """Linear form ``sum terms[v] * v + const`` built while parsing."""

    __slots__ = ("terms", "const")

    def __init__(self, terms=None, const=ZERO):
        self.terms = terms or {}
        self.const = const

    @property
    def is_const(self):
        return not self.terms

    def add(self, other, sign=1):
        terms = dict(self.terms)
        for v, c in other.terms.items():
            terms[v] = terms.get(v, ZERO) + (c if sign > 0 else -c)
        terms = {v: c for v, c in terms.items() if c}
        return _Lin(terms, self.const + other.const if sign > 0 else self.const - other.const)

    def scale(self, c):
        if not c:
            return _Lin()
        return _Lin({v: c * x for v, x in self.terms.items()}, c * self.const)


class _Parser:
    def __init__(self, text, kinds=frozenset(), line=None, allow_t=True, commutative=True):
        self.toks = _tokenize(text, line)
        self.i = 0
        self.kinds = kinds
        self.line = line
        self.allow_t = allow_t
        self.commutative = commutative

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return DPPESyntaxError(msg, self.line, tok.col)

    def expect(self, op):
        tok = self.take()
        if tok.kind != "op" or tok.value != op:
            raise self.error(f"expected {op!r}", tok)
        return tok

    def parse_all(self) -> _Lin:
        val = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().value!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek().kind == "op" and self.peek().value in "+-":
            op = self.take().value
            rhs = self.term()
            val = val.add(rhs, 1 if op == "+" else -1)
        return val

    def term(self):
        val = self.unary()
        while self.peek().kind == "op" and self.peek().value in "*/":
            tok = self.take()
            rhs = self.unary()
            if tok.value == "*":
                if val.is_const:
                    val = rhs.scale(val.const)
                elif rhs.is_const:
                    if not self.commutative:
                        raise SemanticError("coefficients must stand to the left of d", self.line)
                    val = val.scale(rhs.const)
                else:
                    raise SemanticError("nonlinear term: product of two variables", self.line)
            else:
                if not rhs.is_const:
                    raise SemanticError("nonlinear term: division by a variable", self.line)
                if not rhs.const:
                    raise SemanticError("division by zero", self.line)
                val = val.scale(rhs.const.inverse())
        return val

    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.value in "+-":
            self.take()
            val = self.unary()
            return val if tok.value == "+" else val.scale(-ONE)
        return self.power()

    def power(self):
        base = self.primary()
        if self.peek().kind == "op" and self.peek().value == "^":
            self.take()
            tok = self.take()
            neg = False
            if tok.kind == "op" and tok.value == "(":
                tok = self.take()
                if tok.kind == "op" and tok.value == "-":
                    neg, tok = True, self.take()
                self.expect(")")
            if tok.kind != "num" or tok.value.denominator != 1:
                raise self.error("exponent must be an integer", tok)
            k = -int(tok.value) if neg else int(tok.value)
            if not base.is_const:
                if k != 1:
                    raise SemanticError("nonlinear term: power of a variable", self.line)
                return base
            if k < 0 and not base.const:
                raise SemanticError("division by zero", self.line)
            return _Lin({}, base.const**k)
        return base

    def primary(self):
        tok = self.take()
        if tok.kind == "num":
            return _Lin({}, FieldElem.const(tok.value))
        if tok.kind == "var":
            if tok.value.kind not in self.kinds:
                raise SemanticError(f"variable {tok.value} not allowed here", self.line)
            return _Lin({tok.value: ONE})
        if tok.kind == "name":
            if tok.value == "t":
                if not self.allow_t:
                    raise SemanticError("'t' used but the field is Q", self.line)
                return _Lin({}, T)
            if tok.value == "d" and "d" in self.kinds:
                k = 1
                if self.peek().kind == "op" and self.peek().value == "^":
                    self.take()
                    e = self.take()
                    if e.kind != "num" or e.value.denominator != 1:
                        raise self.error("exponent of d must be a nonnegative integer", e)
                    k = int(e.value)
                return _Lin({("d", k): ONE})
            raise self.error(f"unknown name {tok.value!r}", tok)
        if tok.kind == "op" and tok.value == "(":
            val = self.expr()
            self.expect(")")
            return val
        raise self.error("unexpected end of input" if tok.kind == "end" else f"unexpected {tok.value!r}", tok)


def parse_field_elem(text: str) -> FieldElem:
    return _Parser(text).parse_all().const


def parse_ore(text: str) -> OrePoly:
    lin = _Parser(text, kinds=frozenset({"d"}), commutative=False).parse_all()
    coeffs = {0: lin.const}
    for (_, k), c in lin.terms.items():
        coeffs[k] = coeffs.get(k, ZERO) + c
    top = max(coeffs)
    return OrePoly(coeffs.get(k, ZERO) for k in range(top + 1))


def parse_lin_poly(text: str, kinds=frozenset({"x", "u"}), line=None, allow_t=True) -> LinDiffPoly:
    lin = _Parser(text, kinds=kinds, line=line, allow_t=allow_t).parse_all()
    return LinDiffPoly(lin.terms, lin.const)


def parse_phi_list(text: str, n: int, line=None, allow_t=True) -> tuple[LinDiffPoly, ...]:
    parts = _split_commas(text)
    if len(parts) != n:
        raise SemanticError(f"perturbation needs {n} entries, got {len(parts)}", line)
    phi = []
    for part in parts:
        p = parse_lin_poly(part, kinds=frozenset({"u"}), line=line, allow_t=allow_t)
        if p.constant:
            raise SemanticError("perturbation entries must be homogeneous in U", line)
        phi.append(p)
    return tuple(phi)


def _split_commas(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


@dataclass
class Document:
    system: DPPESystem
    phi: tuple | None = None


_FIELDS = {"q": "Q", "q(t)": "Q(t)", "qt": "Q(t)"}


def parse_document(text: str) -> Document:
    field = "Q"
    params = None
    eqs: dict[int, tuple[LinDiffPoly, int]] = {}
    phi_text = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"(field|params|phi)\s*:\s*(.*)$", line, re.IGNORECASE)
        if m:
            key, val = m.group(1).lower(), m.group(2).strip()
            if key == "field":
                norm = val.replace(" ", "").lower()
                if norm not in _FIELDS:
                    raise SemanticError(f"unknown field {val!r} (use Q or Q(t))", lineno)
                field = _FIELDS[norm]
            elif key == "params":
                params = (lineno, [p.strip() for p in val.split(",") if p.strip()])
            else:
                phi_text = (lineno, val)
            continue
        m = re.match(r"x(\d+)\s*=(.*)$", line)
        if not m:
            raise DPPESyntaxError("expected 'x<i> = <expression>' or a 'key: value' line", lineno, 1)
        i = int(m.group(1))
        if i in eqs:
            raise SemanticError(f"x{i} defined twice", lineno)
        offset = m.start(2)
        try:
            rhs = parse_lin_poly(m.group(2), kinds=frozenset({"x", "u"}), line=lineno, allow_t=field == "Q(t)")
        except DPPESyntaxError as e:
            raise DPPESyntaxError(e.message, lineno, (e.column or 0) + offset) from None
        if not rhs.u_only:
            raise SemanticError("x-variables are not allowed on right-hand sides", lineno)
        eqs[i] = (rhs, lineno)
    if not eqs:
        raise SemanticError("no equations")
    n = len(eqs)
    if sorted(eqs) != list(range(1, n + 1)):
        raise SemanticError("equations must define x1..xn exactly once each")
    expected = {f"u{j}" for j in range(1, n)}
    if params is not None:
        lineno, names = params
        if len(names) != n - 1:
            raise SemanticError(f"{n} equations need {n - 1} parameters, got {len(names)}", lineno)
        if set(names) != expected:
            raise SemanticError(f"parameters must be u1..u{n - 1}", lineno)
    for i, (rhs, lineno) in eqs.items():
        for v in rhs.terms:
            if v.index > n - 1 or v.index < 1:
                raise SemanticError(f"unknown parameter u{v.index}", lineno)
    a = [eqs[i][0].constant for i in range(1, n + 1)]
    H = [LinDiffPoly({v: -c for v, c in eqs[i][0].terms.items()}) for i in range(1, n + 1)]
    if not any(H):
        raise SemanticError("all right-hand sides are constant")
    used = {v.index for h in H for v in h.terms}
    missing = sorted(set(range(1, n)) - used)
    if missing:
        raise SemanticError("unused parameter(s): " + ", ".join(f"u{j}" for j in missing))
    try:
        system = DPPESystem(a, H, field)
    except InvalidSystem as e:
        raise SemanticError(str(e)) from None
    phi = None
    if phi_text is not None:
        lineno, val = phi_text
        phi = parse_phi_list(val, n, lineno, allow_t=field == "Q(t)")
    return Document(system, phi)


def render_document(system: DPPESystem, phi=None) -> str:
    n = system.n
    lines = [f"field: {system.field}", "params: " + ", ".join(f"u{j}" for j in range(1, n))]
    for i in range(1, n + 1):
        lines.append(f"x{i} = {system.P(i)}")
    if phi is not None:
        lines.append("phi: " + ", ".join(str(p) for p in phi))
    return "\n".join(lines) + "\n"


def system_from_F(polys, field: str = "Q") -> DPPESystem:
    """Build a system from ``F_i = x_i - a_i + H_i`` given as text or LinDiffPoly."""
    polys = [parse_lin_poly(p) if isinstance(p, str) else p for p in polys]
    a, H = [], []
    for i, F in enumerate(polys, 1):
        xs = {v: c for v, c in F.terms.items() if v.kind == "x"}
        if xs != {X(i): ONE}:
            raise InvalidSystem(f"F_{i} must contain x{i} with coefficient 1 and no other x")
        a.append(-F.constant)
        H.append(LinDiffPoly({v: c for v, c in F.terms.items() if v.kind == "u"}))
    return DPPESystem(a, H, field)
