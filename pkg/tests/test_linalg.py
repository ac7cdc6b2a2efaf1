import random

import pytest
import sympy as sp

from dppe.difffield import ONE, T, ZERO, FieldElem
from dppe.linalg import MatrixR, bareiss_det, det, rank, rref
from dppe.pertpoly import P, PertPoly
from _systems import p_sym, sympy_matrix, to_sympy


def rand_field(rng, t_prob=0.4):
    c = FieldElem.const(rng.randint(-3, 3))
    if rng.random() < t_prob:
        c = c + FieldElem.const(rng.randint(-2, 2)) * T
        if rng.random() < 0.3:
            c = c / (T + rng.randint(1, 3))
    return c


def rand_pert(rng):
    return PertPoly([rand_field(rng, 0.2) for _ in range(rng.randint(0, 3))])


@pytest.mark.parametrize("seed", range(12))
def test_field_det_and_rank_match_sympy(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    rows = [[rand_field(rng) for _ in range(n)] for _ in range(n)]
    if seed % 3 == 0 and n > 1:
        rows[-1] = [a + b for a, b in zip(rows[0], rows[1 % n])]
    M = MatrixR(rows)
    S = sympy_matrix(M)
    assert sp.simplify(to_sympy(det(M)) - S.det()) == 0
    assert rank(M) == S.rank(simplify=True)


@pytest.mark.parametrize("seed", range(8))
def test_pert_det_matches_sympy(seed):
    rng = random.Random(100 + seed)
    n = rng.randint(1, 5)
    M = MatrixR([[rand_pert(rng) for _ in range(n)] for _ in range(n)])
    d = det(M)
    assert isinstance(d, PertPoly)
    assert sp.expand(sp.cancel(to_sympy(d) - sympy_matrix(M).det())) == 0


def test_rectangular_rank_and_rref():
    M = MatrixR([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(M) == 2
    E, piv = rref(M)
    assert piv == [0, 1]
    assert E.rows[0] == (ONE, ZERO, ONE) and E.rows[2] == (ZERO, ZERO, ZERO)


def test_det_requires_square():
    with pytest.raises(ValueError):
        det(MatrixR([[1, 2]]))


def test_empty_det_is_one():
    assert det(MatrixR([])) == ONE


def test_generic_bareiss_agrees():
    rng = random.Random(7)
    rows = [[rand_pert(rng) for _ in range(4)] for _ in range(4)]
    assert bareiss_det(rows, PertPoly.coerce(1)) == det(MatrixR(rows))


def test_pertpoly_arithmetic():
    q = (P + 1) * (P - T)
    assert q == PertPoly([-T, 1 - T, 1])
    assert q.low_degree == 0 and (P * q).low_degree == 1
    assert q.at(T) == ZERO
    quo, rem = q.divmod(P + 1)
    assert quo == P - T and not rem
    assert str(PertPoly([0, 2, -1])) == "-p^2 + 2*p"
    assert PertPoly().low_degree == -1
