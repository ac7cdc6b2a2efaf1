"""Linear perturbations of a DPPE system.

A perturbation is a family ``phi = (phi_1, ..., phi_n)`` of homogeneous linear
polynomials in U.  The perturbed system replaces every ``F_i`` by
``F_i + sign * p * phi_i`` where ``p`` is a new constant.

The default ``sign = +1`` is the orientation the worked examples were
computed with; ``sign = -1`` gives the other one.  Changing the sign maps the
resultant ``R(p)`` to ``R(-p)``, so the lowest p-degree and its coefficient
(up to the factor ``(-1)^D``) do not depend on it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .difffield import ONE, FieldElem
from .dpoly import DPPESystem, LinDiffPoly, U
from .errors import InvalidSystem, OrderEscalation
from .pertpoly import P, PertPoly
from .resultant import SystemProfile, profile

__all__ = ["Perturbation", "default_phi", "sorted_phi", "generic_phi", "perturb"]


@dataclass(frozen=True)
class Perturbation:
    """The family ``phi``; ``permutation`` records the equation order it was built in."""

    phi: tuple
    permutation: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(self.phi))
        for k, f in enumerate(self.phi, 1):
            if not f.u_only or f.constant:
                raise InvalidSystem(f"phi_{k} must be a homogeneous polynomial in the u's")

    def __len__(self):
        return len(self.phi)

    def __iter__(self):
        return iter(self.phi)

    @property
    def is_zero(self) -> bool:
        return not any(self.phi)

    def __str__(self):
        return ", ".join(str(f) for f in self.phi)


def _phi_for(o: Sequence[int], gamma_j: Sequence[int]) -> list[LinDiffPoly]:
    n = len(o)
    phi = []
    for i in range(1, n + 1):
        terms = {}
        if i <= n - 2:
            terms[U(n - i)] = ONE
            if o[i - 1]:
                j = n - i - 1
                terms[U(j, max(o[i - 1] - gamma_j[j - 1], 0))] = ONE
        elif i == n - 1:
            terms[U(1)] = ONE
        elif o[i - 1]:
            j = n - 1
            terms[U(j, max(o[i - 1] - gamma_j[j - 1], 0))] = ONE
        phi.append(LinDiffPoly(terms))
    return phi


def default_phi(sys: DPPESystem, prof: SystemProfile | None = None) -> Perturbation:
    """The standard perturbation, built on the equations in the order given."""
    prof = prof or profile(sys)
    return Perturbation(_phi_for(prof.o, prof.gamma_j))


def sorted_phi(sys: DPPESystem, prof: SystemProfile | None = None) -> Perturbation:
    """The standard perturbation built after sorting equations by nondecreasing order.

    ``phi`` is returned in the original equation positions; ``permutation[k]``
    is the original (0-based) index of the k-th equation in sorted order.
    """
    prof = prof or profile(sys)
    perm = tuple(sorted(range(sys.n), key=lambda i: prof.o[i]))
    o = [prof.o[i] for i in perm]
    # gamma_j is a minimum over equations, so it does not depend on their order.
    built = _phi_for(o, prof.gamma_j)
    phi = [None] * sys.n
    for k, i in enumerate(perm):
        phi[i] = built[k]
    return Perturbation(phi, perm)


def generic_phi(sys: DPPESystem, prof: SystemProfile | None = None, seed: int = 0) -> Perturbation:
    """A perturbation with pseudo-random integer coefficients on every safe top-window term.

    ``u_{j, o_i - gamma_j}`` may enter ``phi_i`` whenever ``o_i >= gamma_j``;
    such terms never change ``o_i`` or ``gamma_j``.  The coefficients come
    from a seeded generator, so the result is reproducible.
    """
    prof = prof or profile(sys)
    rng = random.Random(seed)
    phi = []
    for o in prof.o:
        terms = {}
        for j, g in enumerate(prof.gamma_j, 1):
            if o >= g:
                terms[U(j, o - g)] = FieldElem.coerce(rng.choice((-3, -2, -1, 1, 2, 3)))
        phi.append(LinDiffPoly(terms))
    return Perturbation(phi)


def perturb(
    sys: DPPESystem,
    phi: Perturbation | Sequence[LinDiffPoly],
    sign: int = 1,
    check: bool = True,
) -> DPPESystem:
    """``F_i + sign * p * phi_i`` with coefficients in K[p].

    Raises :class:`OrderEscalation` when ``phi`` would change any order
    ``o_i`` or completeness index ``gamma_j``.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not isinstance(phi, Perturbation):
        phi = Perturbation(phi)
    if len(phi) != sys.n:
        raise InvalidSystem(f"perturbation has {len(phi)} entries, expected {sys.n}")
    for f in phi:
        for v in f.terms:
            if not 1 <= v.index <= sys.n - 1:
                raise InvalidSystem(f"{v} is not a parameter of the system")
    sp = P if sign > 0 else -P
    H = [
        h.map_coeffs(PertPoly.coerce) + f.map_coeffs(PertPoly.coerce).scale(sp)
        for h, f in zip(sys.H, phi)
    ]
    out = DPPESystem(sys.a, H, sys.field, perturbation=phi.phi, check=False)
    if check:
        before, after = profile(sys), profile(out)
        if (before.o, before.gamma_j) != (after.o, after.gamma_j):
            raise OrderEscalation(
                f"perturbation changes the orders: o {before.o} -> {after.o}, "
                f"gamma {before.gamma_j} -> {after.gamma_j}"
            )
    return out
