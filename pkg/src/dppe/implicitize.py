"""Decide whether the implicit ideal has dimension n-1 and find the implicit equation.

The driver follows the perturbed-resultant algorithm:

0. Constant equations are settled directly: two of them force a smaller
   dimension; a single ``x_i = a_i`` is the implicit equation exactly when
   the remaining operator matrix has full rank over K[d].
1. ``rank(S) < n - 1`` means the dimension is smaller than ``n - 1``.
2. Perturb, take the lowest p-degree ``D`` of the resultant and its coefficient ``A_D``.
3. ``D = 0``: ``A_D`` (made ID-primitive) is the implicit equation.
4. Divide out the ID-content to get ``A``; if ``D = c(A)`` it is the implicit equation.
5. Otherwise compare ``L - rank(M_{L-1})`` with ``c(A) + 1``.

When every perturbation tried gives a zero resultant, the lowest element of
``(PS)`` free of u's, found by linear elimination, stands in for ``A_D`` in
the last comparison, which holds for any nonzero ID-primitive witness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .dpoly import X, DPPESystem, LinDiffPoly, co_order, id_content_primitive, normalize
from .errors import InconsistentResult, OrderEscalation, ZeroResultant
from .linalg import rank
from .difffield import ONE, ZERO
from .oracle import echelon_basis
from .oreops import OrePoly, ore_matrix_rank
from .perturb import Perturbation, default_phi, generic_phi, perturb, sorted_phi
from .resultant import SystemProfile, build_ML, dcres, leading_matrix, profile

__all__ = [
    "Certificate",
    "Decision",
    "extract_lowest",
    "u_operators",
    "run",
    "decision_to_dict",
    "decision_to_json",
    "poly_to_dict",
]

GENERIC_TRIES = 3
IMPLICIT = "implicit"
LOWER_DIM = "lower_dim"


@dataclass
class Certificate:
    n: int
    L: int
    N: int
    gamma: int
    rank_S: int
    D_phi: int | None = None
    A_D: LinDiffPoly | None = None
    content: OrePoly | None = None
    c_A: int | None = None
    rank_ML1: int | None = None
    step: int = 0
    perturbation: Perturbation | None = None
    permutation: tuple | None = None
    tried: list = field(default_factory=list)
    witness: str = "resultant"
    constant_equations: tuple = ()
    operator_rank: int | None = None

    @property
    def G0_size(self) -> int | None:
        """``L - rank(M_{L-1})`` when the rank was computed."""
        return None if self.rank_ML1 is None else self.L - self.rank_ML1


@dataclass
class Decision:
    """``kind`` is ``"implicit"`` or ``"lower_dim"``; ``A`` is set only for implicit."""

    kind: str
    cert: Certificate
    A: LinDiffPoly | None = None

    @property
    def implicit(self) -> bool:
        return self.kind == IMPLICIT

    @property
    def dimension(self) -> int | None:
        """``n - 1`` when implicit; the exact smaller dimension is not computed."""
        return self.cert.n - 1 if self.implicit else None

    def message(self) -> str:
        if self.implicit:
            return f"dimension of ID is n-1={self.cert.n - 1}\nimplicit equation: {self.A} = 0"
        return f"dimension less than n-1={self.cert.n - 1}"


def extract_lowest(dc: LinDiffPoly) -> tuple[int, LinDiffPoly]:
    """Lowest p-degree of a perturbed resultant and the X-polynomial at that degree."""
    coeffs = list(dc.terms.values()) + [dc.constant]
    lows = [c.low_degree for c in coeffs if c]
    if not lows:
        raise ZeroResultant("the perturbed resultant is identically zero")
    D = min(lows)
    A = LinDiffPoly({v: c[D] for v, c in dc.terms.items()}, dc.constant[D])
    return D, A


def u_operators(sys: DPPESystem, rows=None) -> list[list[OrePoly]]:
    """``ops[i][j]`` with ``H_i = sum_j ops[i][j](u_j)``."""
    out = []
    for i in rows if rows is not None else range(sys.n):
        cs = [{} for _ in range(sys.n - 1)]
        for v, c in sys.H[i].terms.items():
            cs[v.index - 1][v.order] = c
        out.append([OrePoly(d.get(k, ZERO) for k in range(max(d, default=-1) + 1)) for d in cs])
    return out


def _constant_equations(sys: DPPESystem, cert: Certificate) -> Decision | None:
    zero = tuple(i for i, h in enumerate(sys.H) if not h)
    if not zero:
        return None
    cert.constant_equations = zero
    cert.step = 1
    if len(zero) > 1:
        # x_i - a_i for two different i are independent members of ID.
        return Decision(LOWER_DIM, cert)
    i = zero[0]
    others = [k for k in range(sys.n) if k != i]
    cert.operator_rank = ore_matrix_rank(u_operators(sys, others))
    if cert.operator_rank < sys.n - 1:
        return Decision(LOWER_DIM, cert)
    return Decision(IMPLICIT, cert, LinDiffPoly({X(i + 1): ONE}, -sys.a[i]))


def _resultant(sys: DPPESystem, phi: Perturbation, prof: SystemProfile, strict: bool) -> LinDiffPoly | None:
    """Perturbed resultant, or None when it vanishes (or phi raises the orders and not strict)."""
    try:
        ps = perturb(sys, phi)
    except OrderEscalation:
        if strict:
            raise
        return None
    dc = dcres(ps, prof)
    return dc if dc else None


def run(
    sys: DPPESystem,
    phi: Perturbation | Sequence[LinDiffPoly] | None = None,
    fallback: bool = True,
) -> Decision:
    prof = profile(sys)
    n = sys.n
    cert = Certificate(n=n, L=prof.L, N=prof.N, gamma=prof.gamma, rank_S=rank(leading_matrix(sys, prof)))

    special = _constant_equations(sys, cert)
    if special is not None:
        return special

    if cert.rank_S < n - 1:
        cert.step = 2
        return Decision(LOWER_DIM, cert)

    if prof.N == 0:
        # Every o_i is 0 and S has full rank, so the plain resultant is nonzero.
        dc = dcres(sys, prof)
        D, A_D = extract_lowest(dc)
        cert.D_phi, cert.A_D, cert.step = D, A_D, 5
        content, A = id_content_primitive(A_D, sys)
        cert.content, cert.c_A = content, co_order(A, prof)
        return Decision(IMPLICIT, cert, normalize(A))

    if phi is None:
        candidates = [default_phi(sys, prof)]
        if fallback:
            for alt in [sorted_phi(sys, prof)] + [generic_phi(sys, prof, seed) for seed in range(GENERIC_TRIES)]:
                if all(alt.phi != c.phi for c in candidates):
                    candidates.append(alt)
    else:
        candidates = [phi if isinstance(phi, Perturbation) else Perturbation(phi)]

    dc = None
    for cand in candidates:
        cert.tried.append(cand)
        dc = _resultant(sys, cand, prof, strict=phi is not None)
        if dc is not None:
            cert.perturbation, cert.permutation = cand, cand.permutation
            break
    if dc is None:
        if phi is not None or not fallback:
            tried = "; ".join(f"({c})" for c in cert.tried)
            raise ZeroResultant(f"perturbed resultant is zero for every perturbation tried: {tried}", cert.tried)
        cert.witness = "elimination"
        A_D = echelon_basis(sys, prof).G0[0]
        D = None
    else:
        D, A_D = extract_lowest(dc)
    cert.D_phi, cert.A_D = D, A_D
    content, A = id_content_primitive(A_D, sys)
    cert.content, cert.c_A = content, co_order(A, prof)

    if D == 0:
        cert.step = 5
        return Decision(IMPLICIT, cert, normalize(A))
    if D == cert.c_A:
        cert.step = 7
        return Decision(IMPLICIT, cert, normalize(A))

    M, _ = build_ML(sys, prof)
    cert.rank_ML1 = rank(M)
    g = prof.L - cert.rank_ML1
    if g > cert.c_A + 1:
        cert.step = 9
        return Decision(LOWER_DIM, cert)
    if g == cert.c_A + 1:
        cert.step = 10
        return Decision(IMPLICIT, cert, normalize(A))
    raise InconsistentResult(
        f"L - rank(M_(L-1)) = {g} is below c(A) + 1 = {cert.c_A + 1}"
    )


# --- JSON ------------------------------------------------------------------


def poly_to_dict(A: LinDiffPoly) -> dict:
    return {
        "terms": {str(v): str(c) for v, c in A.sorted_terms()},
        "constant": str(A.constant),
        "text": str(A),
    }


def decision_to_dict(dec: Decision, certificate: bool = True) -> dict:
    c = dec.cert
    out: dict = {"decision": dec.kind, "n": str(c.n)}
    out["dimension"] = str(dec.dimension) if dec.implicit else f"<{c.n - 1}"
    if dec.implicit:
        out["implicit_equation"] = poly_to_dict(dec.A)
    cd = {
        "rank_S": str(c.rank_S),
        "D_phi": None if c.D_phi is None else str(c.D_phi),
        "c_A": None if c.c_A is None else str(c.c_A),
        "L": str(c.L),
        "rank_ML1": None if c.rank_ML1 is None else str(c.rank_ML1),
        "step": str(c.step),
    }
    if certificate:
        cd["N"] = str(c.N)
        cd["gamma"] = str(c.gamma)
        cd["A_D"] = None if c.A_D is None else poly_to_dict(c.A_D)
        cd["content"] = None if c.content is None else str(c.content)
        cd["perturbation"] = None if c.perturbation is None else [str(f) for f in c.perturbation]
        cd["permutation"] = None if c.permutation is None else [str(i + 1) for i in c.permutation]
        cd["witness"] = c.witness
        cd["constant_equations"] = [str(i + 1) for i in c.constant_equations]
        cd["operator_rank"] = None if c.operator_rank is None else str(c.operator_rank)
    out["certificate"] = cd
    return out


def decision_to_json(dec: Decision, certificate: bool = True) -> str:
    return json.dumps(decision_to_dict(dec, certificate), indent=2)
