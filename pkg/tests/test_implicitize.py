import json

import pytest
import sympy as sp

from dppe.dpoly import DPPESystem, LinDiffPoly, assemble, co_order, decompose, normalize, substitute
from dppe.errors import ZeroResultant
from dppe.implicitize import decision_to_dict, decision_to_json, extract_lowest, run, u_operators
from dppe.oracle import charset
from dppe.oreops import ore_coprime
from dppe.parsing import parse_document
from dppe.pertpoly import PertPoly
from dppe.perturb import Perturbation
from dppe.resultant import profile
from _systems import PHI1, PHI2, PSI1, example, phi, t_sym

P = LinDiffPoly.parse


def system(*rhs):
    return parse_document("\n".join(f"x{i} = {r}" for i, r in enumerate(rhs, 1))).system


def test_extract_lowest():
    dc = LinDiffPoly({LinDiffPoly.parse("x1").leader(): PertPoly([0, 0, 3, 1])}, PertPoly([0, 2]))
    D, A = extract_lowest(dc)
    assert D == 1 and A == LinDiffPoly({}, 2)
    with pytest.raises(ZeroResultant):
        extract_lowest(LinDiffPoly({}, PertPoly()))


def test_example1_decided_by_co_order():
    dec = run(example(1), phi(PHI1, 3))
    c = dec.cert
    assert dec.implicit and dec.dimension == 2
    assert (c.D_phi, c.c_A, c.step) == (1, 1, 7)
    assert str(c.content) == "1 + d"
    assert dec.A == P("x3^(3) + x1'' - 2*x2'' + x3'' - 2*x2' + x3' - x2 + x3")


def test_example2_decided_by_rank():
    dec = run(example(2), phi(PHI2, 4))
    c = dec.cert
    assert dec.implicit and dec.dimension == 3
    assert (c.D_phi, c.c_A, c.rank_ML1, c.G0_size, c.step) == (3, 2, 15, 3, 10)
    assert str(c.content) == "d^2"


def test_example2_default_matches_standard_phi():
    assert run(example(2)).A == run(example(2), phi(PHI2, 4)).A


def _sympy_substitute(A, k):
    """``A`` evaluated on the parametrization of example ``k`` with sympy, as an expression in t."""
    u1, u2 = sp.Function("u1")(t_sym), sp.Function("u2")(t_sym)
    us = {1: u1, 2: u2}
    sys = example(k)
    expr = sp.sympify(str(A.constant).replace("^", "**"), locals={"t": t_sym})
    for v, c in A.terms.items():
        Pi = sys.P(v.index)
        Pexpr = sp.sympify(str(Pi.constant).replace("^", "**"), locals={"t": t_sym})
        for w, cw in Pi.terms.items():
            Pexpr += sp.sympify(str(cw).replace("^", "**"), locals={"t": t_sym}) * sp.diff(us[w.index], t_sym, w.order)
        expr += sp.sympify(str(c).replace("^", "**"), locals={"t": t_sym}) * sp.diff(Pexpr, t_sym, v.order)
    return sp.simplify(expr)


def test_example3_is_implicit():
    sys = example(3)
    dec = run(sys, phi(PHI1, 3))
    c = dec.cert
    assert dec.implicit
    assert (c.D_phi, c.c_A, c.step) == (1, 1, 7)
    assert c.content.degree == 1
    assert not substitute(c.A_D, sys)
    assert _sympy_substitute(dec.A, 3) == 0
    # the elimination oracle agrees
    cs = charset(sys)
    assert cs.implicit and normalize(cs.A0[0]) == dec.A


def test_example3_operators_are_not_coprime():
    sys = example(3)
    dec = run(sys, phi(PHI1, 3))
    ops, residual = decompose(dec.cert.A_D, sys)
    assert not residual
    assert not ore_coprime(ops)


def test_example3_constant_coefficients_are_forced():
    # Scaling the d^0 coefficient of L_1 by 4 or negating that of L_3 leaves the ideal.
    sys = example(3)
    A_D = run(sys, phi(PHI1, 3)).cert.A_D
    x1, x3 = P("x1").leader(), P("x3").leader()
    for v, factor in ((x1, 4), (x3, -1)):
        terms = dict(A_D.terms)
        terms[v] = terms[v] * factor
        ops, _ = decompose(LinDiffPoly(terms), sys)
        assert substitute(assemble(ops, sys), sys)


def test_example3_psi_gives_the_same_equation():
    sys = example(3)
    assert run(sys, phi(PSI1, 3)).A == run(sys, phi(PHI1, 3)).A


def test_example3_rank():
    c = run(example(3)).cert
    assert c.L - 11 == 2


def test_n_zero_system():
    sys = system("u1 + 1", "u2", "u1 + 2*u2")
    dec = run(sys)
    assert dec.implicit and dec.cert.step == 5
    assert dec.A == P("x1 + 2*x2 - x3 - 1")


def test_n_zero_lower_dim():
    sys = DPPESystem([0, 0, 0], [P("u1 + u2"), P("2*u1 + 2*u2"), P("-u1 - u2")])
    dec = run(sys)
    assert not dec.implicit and dec.cert.step == 2


def test_single_constant_equation():
    sys = DPPESystem([0, 0, 5], [P("u1'' + 2*u1'"), P("2*u1'' - 2*u2"), LinDiffPoly()])
    dec = run(sys)
    assert dec.implicit and dec.cert.step == 1
    assert dec.cert.constant_equations == (2,) and dec.cert.operator_rank == 2
    assert dec.A == P("x3 - 5")
    assert charset(sys).implicit


def test_single_constant_equation_with_dependent_rest():
    sys = DPPESystem([0, 0, 5], [P("u1 + u2"), P("u1' + u2'"), LinDiffPoly()])
    dec = run(sys)
    assert not dec.implicit and dec.cert.operator_rank == 1


def test_two_constant_equations():
    sys = DPPESystem([0, 2, 0], [LinDiffPoly(), LinDiffPoly(), P("u2' + 2*u1")])
    dec = run(sys)
    assert not dec.implicit and dec.cert.step == 1


def test_elimination_witness_when_every_resultant_vanishes():
    # u2 sits only in x1, so no profile-preserving perturbation fills M(L)
    sys = system("2*u1'' + 2*u2' - 2", "-2*u1'' + 2*u1' + u1 + 1", "2*u1")
    dec = run(sys)
    assert dec.cert.witness == "elimination" and dec.cert.D_phi is None
    assert dec.implicit and dec.A == P("x3'' - x3' + x2 - (1/2)*x3 - 1")
    assert normalize(charset(sys).A0[0]) == dec.A
    with pytest.raises(ZeroResultant) as err:
        run(sys, fallback=False)
    assert err.value.tried


def test_user_phi_zero_resultant():
    sys = example(1)
    with pytest.raises(ZeroResultant):
        run(sys, Perturbation([LinDiffPoly()] * 3))


def test_u_operators():
    ops = u_operators(example(2))
    # H_1 of the second example carries -3*u2'
    assert str(ops[0][1]) == "-3*d"


def test_json_round_trip():
    dec = run(example(1), phi(PHI1, 3))
    data = json.loads(decision_to_json(dec))
    assert data["decision"] == "implicit" and data["dimension"] == "2"
    assert data["implicit_equation"]["text"] == str(dec.A)
    cert = data["certificate"]
    assert cert["D_phi"] == "1" and cert["c_A"] == "1" and cert["step"] == "7"
    assert cert["perturbation"] == ["u1'' + u2", "u1", "u2'"]
    short = decision_to_dict(dec, certificate=False)["certificate"]
    assert "A_D" not in short and short["rank_S"] == "2"


def test_co_order_of_result():
    sys = example(2)
    dec = run(sys)
    assert co_order(dec.A, profile(sys)) == 2
