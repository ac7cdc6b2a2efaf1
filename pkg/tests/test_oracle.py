import pytest

from dppe.dpoly import DPPESystem, LinDiffPoly, co_order, normalize, substitute
from dppe.errors import ZeroDivisor
from dppe.implicitize import run
from dppe.linalg import rank
from dppe.oracle import build_M2L, charset, echelon_basis, lin_prem, reduce_chain
from dppe.resultant import build_ML, profile
from _systems import example

P = LinDiffPoly.parse


def test_lin_prem_removes_leader_derivatives():
    assert lin_prem(P("u1' + x1"), P("u1 + x2")) == P("x1 - x2'")


def test_lin_prem_without_leader_is_identity():
    A = P("x1 + 3*x2'")
    assert lin_prem(A, P("u1 + x2")) == A


def test_lin_prem_by_zero():
    with pytest.raises(ZeroDivisor):
        lin_prem(P("x1"), LinDiffPoly())


def test_reduce_chain_is_fully_reduced():
    chain = [P("u2 + x1"), P("u1' - x2")]
    R = reduce_chain(P("u2'' + u1^(3) + x3"), chain)
    assert R == P("x3 - x1'' + x2''")


def test_m2l_shape():
    sys = example(1)
    prof = profile(sys)
    M, cols = build_M2L(sys, prof)
    assert M.shape == (prof.L, len(prof.V) + len(prof.Xset) + 1)
    assert cols[-1] is None


@pytest.mark.parametrize("k, g, g0", [(1, 13, 2), (2, 18, 3)])
def test_echelon_basis_sizes(k, g, g0):
    sys = example(k)
    prof = profile(sys)
    basis = echelon_basis(sys, prof)
    assert (len(basis.G), len(basis.G0)) == (g, g0)
    M, _ = build_ML(sys, prof)
    assert len(basis.G0) == prof.L - rank(M)


@pytest.mark.parametrize("k", [1, 2])
def test_charset_matches_driver(k):
    sys = example(k)
    cs = charset(sys)
    assert cs.implicit and cs.dimension == sys.n - 1 and cs.distinct_leaders
    assert normalize(cs.A0[0]) == run(sys).A


def test_g0_elements_lie_in_the_implicit_ideal():
    sys = example(2)
    prof = profile(sys)
    basis = echelon_basis(sys, prof)
    for B in basis.G0:
        assert not substitute(B, sys)
        assert len(basis.G0) >= co_order(B, prof) + 1


def test_charset_lower_dimension():
    # x2 - x1' and x3 - 2*x1 both lie in the ideal
    sys = DPPESystem([0, 0, 0], [P("u1 + u2"), P("u1' + u2'"), P("2*u1 + 2*u2")])
    cs = charset(sys)
    assert len(cs.A0) == 2 and cs.dimension == 1 and not cs.implicit
    assert not run(sys).implicit
