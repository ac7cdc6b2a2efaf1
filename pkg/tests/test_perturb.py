import pytest

from dppe.dpoly import U, DPPESystem, LinDiffPoly
from dppe.errors import InvalidSystem, OrderEscalation
from dppe.pertpoly import PertPoly
from dppe.perturb import Perturbation, default_phi, generic_phi, perturb, sorted_phi
from dppe.resultant import dcres, profile
from _systems import PHI1, PHI2, example, phi, random_systems


@pytest.mark.parametrize("k, expected", [(1, PHI1), (2, PHI2), (3, PHI1)])
def test_default_phi_on_examples(k, expected):
    sys = example(k)
    assert default_phi(sys).phi == tuple(phi(expected, sys.n))


def test_default_phi_skips_epsilon_for_order_zero():
    sys = DPPESystem([0, 0, 0], [LinDiffPoly.parse(x) for x in ("u1", "u2", "u1 + u2")])
    got = default_phi(sys)
    assert [str(f) for f in got] == ["u2", "u1", "0"]


def test_sorted_phi_maps_back_to_original_positions():
    sys = example(2)
    alt = sorted_phi(sys)
    prof = profile(sys)
    assert [prof.o[i] for i in alt.permutation] == sorted(prof.o)
    assert str(alt) == "u2' + u3, u1, u3'', u2 + u1"


def test_generic_phi_is_reproducible_and_safe():
    sys = example(2)
    a, b = generic_phi(sys, seed=4), generic_phi(sys, seed=4)
    assert a == b
    perturb(sys, a)  # keeps the profile, so no OrderEscalation
    prof = profile(sys)
    for f, o in zip(a, prof.o):
        for v in f.terms:
            assert v.order == o - prof.gamma_j[v.index - 1]


def test_perturbed_coefficients_follow_the_sign():
    sys = example(1)
    p_plus = perturb(sys, phi(PHI1, 3))
    p_minus = perturb(sys, phi(PHI1, 3), sign=-1)
    # H_1 has -u1'' in the first example
    assert p_plus.H[0].coeff(U(1, 2)) == PertPoly([-1, 1])
    assert p_minus.H[0].coeff(U(1, 2)) == PertPoly([-1, -1])


def test_perturbed_resultant_specializes_at_zero():
    sys = example(2)
    prof = profile(sys)
    dc = dcres(perturb(sys, phi(PHI2, 4)), prof)
    assert dc.map_coeffs(lambda c: c[0]) == dcres(sys, prof)


def test_zero_perturbation_leaves_system_unchanged():
    sys = example(1)
    zero = Perturbation([LinDiffPoly()] * 3)
    assert zero.is_zero
    out = perturb(sys, zero)
    assert dcres(out, profile(sys)).map_coeffs(lambda c: c[0]) == dcres(sys)


def test_order_escalation_is_rejected():
    sys = example(1)
    with pytest.raises(OrderEscalation):
        perturb(sys, phi("u1^(3), u1, u2'", 3))


@pytest.mark.parametrize(
    "entries, exc",
    [
        (["x1", "u1", "u2"], InvalidSystem),
        (["u1 + 1", "u1", "u2"], InvalidSystem),
    ],
)
def test_phi_must_be_homogeneous_in_u(entries, exc):
    with pytest.raises(exc):
        Perturbation([LinDiffPoly.parse(e) for e in entries])


def test_phi_length_and_parameters_checked():
    sys = random_systems()[0]
    with pytest.raises(InvalidSystem):
        perturb(sys, [LinDiffPoly.parse("u1")])
    with pytest.raises(InvalidSystem):
        perturb(sys, [LinDiffPoly.parse("u7")] * sys.n)
