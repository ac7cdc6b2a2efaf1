from fractions import Fraction

import pytest

from dppe.difffield import ONE, T, FieldElem
from dppe.dpoly import DPPESystem, LinDiffPoly, U, X, co_order, decompose, id_content_primitive, normalize, rstar_key, substitute
from dppe.errors import InvalidSystem, NonRepresentable, ZeroPolynomial
from dppe.oreops import OrePoly
from dppe.resultant import profile
from _systems import example

A1 = "x1'' - x2 - 2*x2' - 2*x2'' + x3^(3) + x3'' + x3' + x3"


def test_var_names():
    assert str(U(1, 2)) == "u1''" and str(X(3, 4)) == "x3^(4)" and str(X(2)) == "x2"


def test_rstar_ranking():
    assert rstar_key(U(1)) > rstar_key(X(1, 9))
    assert rstar_key(U(2, 1)) > rstar_key(U(1, 1)) > rstar_key(U(2, 0))
    assert rstar_key(X(1, 0)) > rstar_key(X(3, 0))
    assert rstar_key(X(3, 1)) > rstar_key(X(1, 0))


def test_derive_product_rule():
    P = LinDiffPoly({U(1): T, X(2, 1): ONE}, T**2)
    assert P.derive() == LinDiffPoly({U(1): ONE, U(1, 1): T, X(2, 2): ONE}, 2 * T)


def test_decompose_roundtrip_example1():
    sys = example(1)
    A = LinDiffPoly.parse(A1)
    ops, res = decompose(A, sys)
    assert not res
    assert ops[0] == OrePoly.parse("d^2")
    assert ops[2] == OrePoly.parse("1 + d + d^2 + d^3")
    assert not substitute(A, sys)


def test_substitute_detects_non_members():
    assert substitute(LinDiffPoly.parse("x1"), example(1))


def test_co_order_example1():
    prof = profile(example(1))
    assert co_order(LinDiffPoly.parse(A1), prof) == 1
    with pytest.raises(ZeroPolynomial):
        co_order(LinDiffPoly(), prof)


def test_id_content_primitive():
    sys = example(1)
    A = LinDiffPoly.parse(A1)
    B = A + A.derive()
    content, prim = id_content_primitive(B, sys)
    assert content == OrePoly.parse("1 + d") and prim == A
    with pytest.raises(NonRepresentable):
        id_content_primitive(LinDiffPoly.parse("x1 + 1"), sys)


def test_normalize_leader_coefficient():
    A = LinDiffPoly.parse("2*x1 - 4*x3''")
    N = normalize(A)
    assert N.terms[X(3, 2)] == ONE and N.terms[X(1)] == FieldElem.const(Fraction(-1, 2))


def test_system_validation():
    with pytest.raises(InvalidSystem):
        DPPESystem([0], [LinDiffPoly.parse("u1")])
    with pytest.raises(InvalidSystem):
        DPPESystem([0, 0, 0], [LinDiffPoly.parse("u1"), LinDiffPoly.parse("u1"), LinDiffPoly()])
    with pytest.raises(InvalidSystem):
        DPPESystem([0, 0], [LinDiffPoly.parse("x1"), LinDiffPoly.parse("u1")])
