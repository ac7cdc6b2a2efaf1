"""Linear complete differential resultants and the matrices they come from.

For a system ``F_i = x_i - a_i + H_i(U)`` the prolonged set ``PS`` holds
``d^k F_i`` for ``k = N - o_i - gamma, ..., 0``.  Its coefficients in the
u-derivatives form the principal matrix ``M_{L-1}``; appending the column
``x_ik - d^k a_i`` gives ``M(L)``, whose determinant is ``dcres``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .difffield import ZERO, FieldElem
from .dpoly import DPPESystem, DerVar, LinDiffPoly, U, X
from .errors import EmptyHomogeneousSet, InvalidSystem
from .linalg import MatrixR, det, rank
from .pertpoly import PertPoly

__all__ = [
    "SystemProfile",
    "PertPoly",
    "MatrixR",
    "profile",
    "build_PS",
    "leading_matrix",
    "build_ML",
    "build_MLh",
    "det",
    "rank",
    "dcres",
    "dcres_h",
    "sign_identity",
]


@dataclass(frozen=True)
class SystemProfile:
    n: int
    o: tuple[int, ...]
    gamma_j: tuple[int, ...]
    gamma: int
    N: int
    L: int
    Lh: int

    def row_index(self, i: int, k: int) -> int:
        """1-based row of ``d^(N - o_i - gamma - k) F_i`` in ``M(L)``."""
        return (i - 1) * (self.N - self.gamma) - sum(self.o[: i - 1]) + i + k

    def rowh_index(self, i: int, k: int) -> int:
        return (i - 1) * (self.N - self.gamma - 1) - sum(self.o[: i - 1]) + i + k

    @property
    def complete(self) -> bool:
        """Whether every ``N - o_i - gamma >= 0``, i.e. the resultant matrices exist."""
        return all(self.N - o - self.gamma >= 0 for o in self.o)

    def require_complete(self):
        if not self.complete:
            raise InvalidSystem(
                f"N - o_i - gamma < 0 for some i (N={self.N}, o={self.o}, gamma={self.gamma}): "
                "the resultant matrices are not defined"
            )

    def top(self, i: int) -> int:
        """Highest prolongation order ``N - o_i - gamma`` of ``F_i``."""
        return self.N - self.o[i - 1] - self.gamma

    @cached_property
    def rows(self) -> tuple[tuple[int, int], ...]:
        """``(i, order)`` per row of ``M(L)``, highest derivative first in each block."""
        return tuple((i, self.top(i) - k) for i in range(1, self.n + 1) for k in range(self.top(i) + 1))

    @cached_property
    def rows_h(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (i, self.top(i) - 1 - k) for i in range(1, self.n + 1) for k in range(self.top(i))
        )

    @cached_property
    def V(self) -> tuple[DerVar, ...]:
        """u-derivatives of ``PS`` in decreasing orderly ranking."""
        vs = [U(j, k) for j in range(1, self.n) for k in range(self.N - self.gamma_j[j - 1] - self.gamma + 1)]
        return tuple(sorted(vs, key=lambda v: (v.order, v.index), reverse=True))

    @cached_property
    def Vh(self) -> tuple[DerVar, ...]:
        vs = [U(j, k) for j in range(1, self.n) for k in range(self.N - self.gamma_j[j - 1] - self.gamma)]
        return tuple(sorted(vs, key=lambda v: (v.order, v.index), reverse=True))

    @cached_property
    def Xset(self) -> tuple[DerVar, ...]:
        return tuple(X(i, k) for i, k in self.rows)


def profile(sys: DPPESystem) -> SystemProfile:
    n = sys.n
    ords = [[h.ord(("u", j)) for j in range(1, n)] for h in sys.H]
    o = tuple(max(0, *row) for row in ords)
    gamma_j = tuple(min(o[i] - ords[i][j] for i in range(n)) for j in range(n - 1))
    gamma = sum(gamma_j)
    N = sum(o)
    L = sum(N - oi - gamma + 1 for oi in o)
    Lh = sum(max(N - oi - gamma, 0) for oi in o)
    return SystemProfile(n, o, gamma_j, gamma, N, L, Lh)


def _prolong(sys: DPPESystem, prof: SystemProfile, extra: int = 0) -> list[list[LinDiffPoly]]:
    """``out[i-1][k] = d^k H_i`` for ``k <= N - o_i - gamma``."""
    prof.require_complete()
    out = []
    for i, h in enumerate(sys.H, 1):
        ds = [h]
        for _ in range(prof.top(i) + extra):
            ds.append(ds[-1].derive())
        out.append(ds)
    return out


def _zero_of(sys: DPPESystem):
    return PertPoly() if sys.perturbation else ZERO


def build_PS(sys: DPPESystem, prof: SystemProfile | None = None) -> list[LinDiffPoly]:
    prof = prof or profile(sys)
    dH = _prolong(sys, prof)
    out = []
    for i, k in prof.rows:
        a = sys.a[i - 1]
        for _ in range(k):
            a = a.derive()
        h = dH[i - 1][k]
        terms = dict(h.terms)
        terms[X(i, k)] = FieldElem.const(1)
        out.append(LinDiffPoly(terms, -a))
    return out


def leading_matrix(sys: DPPESystem, prof: SystemProfile | None = None) -> MatrixR:
    """n x (n-1); entry (i, j) is the coefficient of u_{n-j}^(o_i - gamma_{n-j}) in F_i."""
    prof = prof or profile(sys)
    n = sys.n
    zero = _zero_of(sys)
    rows = []
    for i, h in enumerate(sys.H):
        row = []
        for j in range(1, n):
            uj = n - j
            k = prof.o[i] - prof.gamma_j[uj - 1]
            row.append(h.coeff(U(uj, k), zero) if k >= 0 else zero)
        rows.append(row)
    return MatrixR(rows)


def build_ML(sys: DPPESystem, prof: SystemProfile | None = None):
    """Principal matrix ``M_{L-1}`` and the symbolic last column of ``M(L)``.

    The last column is a list of ``(X(i, k), d^k a_i)`` meaning ``x_ik - d^k a_i``.
    """
    prof = prof or profile(sys)
    dH = _prolong(sys, prof)
    zero = _zero_of(sys)
    col = {v: c for c, v in enumerate(prof.V)}
    rows, last = [], []
    for i, k in prof.rows:
        h = dH[i - 1][k]
        row = [zero] * len(prof.V)
        for v, c in h.terms.items():
            if v not in col:
                raise AssertionError(f"{v} outside the variable window")
            row[col[v]] = c
        rows.append(row)
        a = sys.a[i - 1]
        for _ in range(k):
            a = a.derive()
        last.append((X(i, k), a))
    return MatrixR(rows), last


def build_MLh(sys: DPPESystem, prof: SystemProfile | None = None) -> MatrixR:
    prof = prof or profile(sys)
    if prof.N < 1:
        raise EmptyHomogeneousSet("the homogeneous resultant needs N >= 1")
    dH = _prolong(sys, prof)
    zero = _zero_of(sys)
    col = {v: c for c, v in enumerate(prof.Vh)}
    rows = []
    for i, k in prof.rows_h:
        row = [zero] * len(prof.Vh)
        for v, c in dH[i - 1][k].terms.items():
            row[col[v]] = c
        rows.append(row)
    return MatrixR(rows)


def _as_pert(x) -> PertPoly:
    return x if isinstance(x, PertPoly) else PertPoly.coerce(x)


def minors(sys: DPPESystem, prof: SystemProfile | None = None) -> list[PertPoly]:
    """``det(M_x)`` for each row of ``M(L)`` in row order (the row deleted from ``M_{L-1}``)."""
    prof = prof or profile(sys)
    M, _ = build_ML(sys, prof)
    return [_as_pert(det(M.delete_row(r))) for r in range(prof.L)]


def dcres(sys: DPPESystem, prof: SystemProfile | None = None) -> LinDiffPoly:
    """``det M(L)`` expanded along the last column, as a polynomial in X over K[p]."""
    prof = prof or profile(sys)
    M, last = build_ML(sys, prof)
    L = prof.L
    terms = {}
    const = PertPoly()
    for r, (xv, a) in enumerate(last):
        m = _as_pert(det(M.delete_row(r)))
        if not m:
            continue
        if (r + 1 + L) % 2:
            m = -m
        terms[xv] = m
        if a:
            const = const - m * a
    return LinDiffPoly(terms, const)


def dcres_h(sys: DPPESystem, prof: SystemProfile | None = None) -> PertPoly:
    return _as_pert(det(build_MLh(sys, prof)))


def sign_identity(sys: DPPESystem, prof: SystemProfile | None = None) -> list[int]:
    """Check ``det(M_{x_i,top}) = +-dcres_h * det(S_i)`` for every i; return the signs.

    A sign of 0 means both sides vanish.  Raises ``AssertionError`` when
    neither sign gives an equality.
    """
    prof = prof or profile(sys)
    M, _ = build_ML(sys, prof)
    S = leading_matrix(sys, prof)
    h = dcres_h(sys, prof) if prof.N >= 1 else PertPoly.coerce(1)
    signs = []
    for i in range(1, sys.n + 1):
        r = prof.row_index(i, 0) - 1
        lhs = _as_pert(det(M.delete_row(r)))
        rhs = h * _as_pert(det(S.delete_row(i - 1)))
        if not lhs and not rhs:
            signs.append(0)
        elif lhs == rhs:
            signs.append(1)
        elif lhs == -rhs:
            signs.append(-1)
        else:
            raise AssertionError(f"sign identity fails for i={i}: {lhs} vs {rhs}")
    return signs
