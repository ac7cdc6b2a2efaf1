"""Independent dimension check through linear elimination.

The prolonged set ``PS`` is written as an ``L x 2L`` matrix ``M_{2L}`` whose
columns are the u-derivatives, then the x-derivatives, then the constant,
each block in decreasing R* order.  Its reduced row echelon form gives the
Groebner basis ``G`` of ``(PS)``; the rows free of u's form ``G0``.  A
characteristic set of ``[PS]`` is then extracted from ``G`` by pseudo-remainders,
and its part in K{X} gives the dimension of the implicit ideal.
"""

from __future__ import annotations

from dataclasses import dataclass

from .difffield import ZERO
from .dpoly import DPPESystem, LinDiffPoly, rstar_key
from .errors import InconsistentResult, ZeroDivisor
from .linalg import MatrixR, rref
from .resultant import SystemProfile, build_PS, profile

__all__ = ["EchelonBasis", "CharSet", "build_M2L", "echelon_basis", "lin_prem", "reduce_chain", "charset"]


@dataclass(frozen=True)
class EchelonBasis:
    """``G`` in increasing R* order and the sublist ``G0`` without u-variables."""

    G: tuple
    G0: tuple
    rank: int


@dataclass(frozen=True)
class CharSet:
    A: tuple
    A0: tuple
    n: int
    distinct_leaders: bool

    @property
    def dimension(self) -> int:
        return self.n - len(self.A0)

    @property
    def implicit(self) -> bool:
        return len(self.A0) == 1


def _columns(prof: SystemProfile) -> list:
    xs = sorted(prof.Xset, key=rstar_key, reverse=True)
    return list(prof.V) + xs


def build_M2L(sys: DPPESystem, prof: SystemProfile | None = None) -> tuple[MatrixR, list]:
    """The coefficient matrix of ``PS`` and its column variables (``None`` is the constant)."""
    prof = prof or profile(sys)
    cols = _columns(prof)
    index = {v: k for k, v in enumerate(cols)}
    rows = []
    for F in build_PS(sys, prof):
        row = [ZERO] * (len(cols) + 1)
        for v, c in F.terms.items():
            row[index[v]] = c
        row[-1] = F.constant
        rows.append(row)
    return MatrixR(rows), cols + [None]


def echelon_basis(sys: DPPESystem, prof: SystemProfile | None = None) -> EchelonBasis:
    M, cols = build_M2L(sys, prof)
    E, pivots = rref(M)
    G = []
    for r in range(len(pivots)):
        row = E.rows[r]
        terms = {cols[j]: row[j] for j in range(len(cols) - 1) if row[j]}
        G.append(LinDiffPoly(terms, row[-1]))
    G.reverse()
    G0 = tuple(g for g in G if g.x_only)
    return EchelonBasis(tuple(G), G0, len(pivots))


def lin_prem(P: LinDiffPoly, Q: LinDiffPoly) -> LinDiffPoly:
    """Remove from ``P`` the leader of ``Q`` and all its derivatives.

    ``d^s Q`` has leader ``d^s lead(Q)`` with the same coefficient, so each
    step is an exact field division.
    """
    lead = Q.leader()
    if lead is None:
        raise ZeroDivisor("pseudo-remainder by the zero polynomial")
    lc_inv = Q.terms[lead].inverse()
    ders = [Q]
    while True:
        hits = [v for v in P.terms if v.var == lead.var and v.order >= lead.order]
        if not hits:
            return P
        v = max(hits, key=lambda w: w.order)
        s = v.order - lead.order
        while len(ders) <= s:
            ders.append(ders[-1].derive())
        P = P - ders[s].scale(P.terms[v] * lc_inv)


def _reducible(P: LinDiffPoly, Q: LinDiffPoly) -> bool:
    lead = Q.leader()
    return any(v.var == lead.var and v.order >= lead.order for v in P.terms)


def reduce_chain(P: LinDiffPoly, chain) -> LinDiffPoly:
    """Full reduction of ``P`` by a chain, always removing the highest reducible term first."""
    chain = list(chain)
    while True:
        best = None
        for v in P.terms:
            for Q in chain:
                lead = Q.leader()
                if v.var == lead.var and v.order >= lead.order:
                    if best is None or rstar_key(v) > rstar_key(best[0]):
                        best = (v, Q)
                    break
        if best is None:
            return P
        v, Q = best
        lead = Q.leader()
        D = Q
        for _ in range(v.order - lead.order):
            D = D.derive()
        P = P - D.scale(P.terms[v] * Q.terms[lead].inverse())


def charset(sys: DPPESystem, prof: SystemProfile | None = None, basis: EchelonBasis | None = None) -> CharSet:
    """Characteristic set of ``[PS]`` from the echelon basis.

    The basis elements are taken in increasing order; each is reduced by the
    current chain and a nonzero remainder joins it.  Chain elements that are
    no longer reduced with respect to the newcomer go back to the queue, so
    the result is autoreduced even when a remainder ranks below older members.
    """
    prof = prof or profile(sys)
    basis = basis or echelon_basis(sys, prof)
    queue = list(basis.G)
    chain: list[LinDiffPoly] = []
    while queue:
        B = queue.pop(0)
        R = reduce_chain(B, chain)
        if not R:
            continue
        if not R.terms:
            raise InconsistentResult("the prolonged system contains a nonzero constant")
        R = R.scale(R.terms[R.leader()].inverse())
        keep = []
        for C in chain:
            if _reducible(C, R):
                queue.insert(0, C)
            else:
                keep.append(C)
        chain = keep + [R]
        chain.sort(key=lambda c: rstar_key(c.leader()))
    leaders = [c.leader().var for c in chain]
    A0 = tuple(c for c in chain if c.x_only)
    return CharSet(tuple(chain), A0, sys.n, len(set(leaders)) == len(leaders))
