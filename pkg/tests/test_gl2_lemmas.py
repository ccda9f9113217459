import cmath
import math

import numpy as np
import pytest
import sympy as sp

from quandlelab import acceptance
from quandlelab.gl2 import lemmas
from quandlelab.gl2.classes import DiagPair, Jordan, Scalar, in_class
from quandlelab.gl2.matrix import D, Mat2, conj_op, residual
from quandlelab.gl2.witness import Status

from oracles import inv2, matmul

R3_TABLE = ((0, 2, 1), (2, 1, 0), (1, 0, 2))


def r3_groebner(l1, l2, nonzero: str):
    """Groebner basis for an R_3 copy {D, X, X*D} inside M[l1,l2] with X not commuting with D.

    ``nonzero`` picks which off-diagonal entry of X is forced invertible.
    """
    a, b, c, d, t = sp.symbols("a b c d t")
    l1, l2 = sp.nsimplify(l1), sp.nsimplify(l2)
    Dm = sp.diag(l1, l2)
    X = sp.Matrix([[a, b], [c, d]])
    elems = [Dm, X, Dm.inv() * X * Dm]
    eqs = [X.trace() - (l1 + l2), X.det() - l1 * l2, t * (b if nonzero == "b" else c) - 1]
    for i in range(3):
        for j in range(3):
            # x_j^-1 x_i x_j = x_k  <=>  x_i x_j = x_j x_k
            eqs += list(elems[i] * elems[j] - elems[j] * elems[R3_TABLE[i][j]])
    return sp.groebner([sp.expand(e) for e in eqs], t, a, b, c, d, order="lex")


# -- swap and diagonalization -------------------------------------------

@pytest.mark.parametrize("l1,l2,expected", [(1, -1, True), (2, -2, True), (1j, -1j, True), (2, 3, False), (1, 2j, False)])
def test_swap_check(l1, l2, expected):
    rep = lemmas.swap_check(l1, l2)
    assert rep.expected_witness is expected and rep.ok
    assert (rep.report.status is Status.WITNESS) is expected


def test_diagonalizing_witnesses():
    rep = lemmas.diagonalizing_witnesses(2, 3, samples=50)
    assert rep.ok and rep.max_residual <= 1e-9


# -- subquandle order ----------------------------------------------------

def test_order_i_n4():
    rep = lemmas.subquandle_order_test(DiagPair(1j, 1), 4, samples=100)
    assert rep.predicted and rep.agreements == 100 and rep.ok


def test_order_ratio_two_counterexample():
    rep = lemmas.subquandle_order_test(DiagPair(2, 1), 3, samples=50)
    assert not rep.predicted and rep.ok
    cex = rep.counterexample
    assert abs(cex.got - (1 / 2) ** 3) < 1e-15
    # oracle: B^-3 A B^3 by list arithmetic
    B3 = matmul(matmul(cex.B.rows(), cex.B.rows()), cex.B.rows())
    got = matmul(matmul(inv2(B3), cex.A.rows()), B3)
    assert abs(got[0][1] - cex.got) < 1e-15 and cex.deviation > 1e-3


def test_order_scalar_trivial():
    rep = lemmas.subquandle_order_test(Scalar(3), 5)
    assert rep.trivial and rep.ok


def test_order_fifth_root():
    w = cmath.exp(2j * math.pi / 5)
    rep = lemmas.subquandle_order_test(DiagPair(w, 1), 5, samples=200)
    assert rep.agreements == 200 and rep.max_residual <= 1e-8


def test_order_rejects_jordan():
    with pytest.raises(ValueError):
        lemmas.subquandle_order_test(Jordan(1), 2)


# -- PGL count -----------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 4])
def test_pgl_count_examples(n):
    rep = lemmas.count_trivial_components_pgl(n)
    assert rep.count == n and rep.ok
    assert all(p == s == 50 for _, p, s in rep.per_class)


def test_pgl_projective_coincidences():
    # D(1,w) and D(1,1/w) are projectively the same class
    for n in range(1, 9):
        assert lemmas.count_trivial_components_pgl(n, samples=5).distinct_projective_classes == n // 2 + 1
    w = cmath.exp(2j * math.pi / 5)
    a, b = D(1, w), D(1, 1 / w).scale(w)
    assert residual(D(b.d, b.a), a) < 1e-12


# -- Jordan type ---------------------------------------------------------

def test_jordan_probe_examples():
    p = lemmas.jordan_type_probe(1, 1, 3)
    assert residual(p.result, Mat2.of([[4, 1], [-9, -2]])) <= 1e-12 and p.differs_from_base
    p = lemmas.jordan_type_probe(1, 2, 1)
    assert residual(p.result, Mat2.of([[3, 1], [-4, -1]])) <= 1e-12
    with pytest.raises(ValueError):
        lemmas.jordan_type_probe(1, 1, 0)


def test_jordan_probe_oracle():
    # direct P^-n A P^n with list arithmetic
    for lam in (1, 1j, 2):
        A = [[lam, 1], [0, lam]]
        P = [[lam, 0], [1, lam]]
        for n in (1, 2, 3):
            Pn = [[1, 0], [0, 1]]
            for _ in range(n):
                Pn = matmul(Pn, P)
            X = A
            for m in range(1, 6):
                X = matmul(matmul(inv2(Pn), X), Pn)
                assert residual(lemmas.jordan_type_probe(lam, n, m).result, Mat2.of(X)) <= 1e-9


# -- R_3 -----------------------------------------------------------------

def test_r3_witness():
    rep = lemmas.r3_probe(DiagPair(1, -1))
    assert rep.status is Status.WITNESS and rep.residual <= 1e-10
    assert rep.solver_values["a"] == -0.5 and rep.solver_values["d"] == 0.5
    assert abs(rep.solver_values["bc"] - 0.75) < 1e-15
    elems = rep.matrices
    for i in range(3):
        for j in range(3):
            assert residual(conj_op(elems[i], elems[j]), elems[R3_TABLE[i][j]]) <= 1e-10
    assert all(in_class(e, DiagPair(1, -1)) for e in elems)


def test_r3_witness_groebner_oracle():
    for nz in ("b", "c"):
        G = r3_groebner(1, -1, nz)
        assert list(G.exprs) != [1]
        a, b, c, d = sp.symbols("a b c d")
        exprs = {sp.expand(e) for e in G.exprs}
        assert {2 * a + 1, 2 * d - 1, 4 * b * c - 3} <= exprs


@pytest.mark.parametrize("pair", [(1, 2), (1j, 3), (2, -3), (sp.Rational(1, 2), 5)])
def test_r3_refutation_groebner_oracle(pair):
    l1, l2 = pair
    for nz in ("b", "c"):
        assert list(r3_groebner(l1, l2, nz).exprs) == [1]
    assert lemmas.r3_probe(DiagPair(complex(l1), complex(l2))).status is Status.REFUTED


def test_r3_refutations():
    rep = lemmas.r3_probe(DiagPair(1, 2))
    assert rep.status is Status.REFUTED and rep.refutation == "forces λ₁² = λ₂²"
    rep = lemmas.r3_probe(Jordan(1))
    assert rep.status is Status.REFUTED and rep.refutation == "forces c = 0 and a = d"


def test_r3_seeded_pairs_refuted():
    for l1, l2 in acceptance.gaussian_pairs(20, 0xC0FFEE):
        assert lemmas.r3_probe(DiagPair(l1, l2)).status is Status.REFUTED


# -- return pairs --------------------------------------------------------

def test_return_pair_values():
    _, _, vals = lemmas.return_pair(2, 3)
    assert vals["e"] == pytest.approx(15 / 4) and vals["h"] == pytest.approx(5 / 4)
    assert vals["fg"] == pytest.approx(-21 / 16)


@pytest.mark.parametrize("pair", [(2, 3), (1, 3), (3, 1), (2, -1), (4, 2), (1j, 2)])
def test_noncommuting_return_pair(pair):
    rep = lemmas.noncommuting_return_pair(*pair)
    assert rep.ok and rep.residual <= 1e-8
    A, B = rep.matrices
    Dm = D(*pair)
    assert (A @ B - B @ A).norm() > 1e-6
    assert residual(conj_op(conj_op(Dm, A), B), Dm) <= 1e-8
    if not lemmas.is_admissible(*pair):
        assert rep.solver_values["k"] != 1


def test_noncommuting_return_pair_rejects():
    with pytest.raises(ValueError):
        lemmas.noncommuting_return_pair(1, -1)
    with pytest.raises(ValueError):
        lemmas.noncommuting_return_pair(2, 2)


# -- maximal trivial pairs ----------------------------------------------

@pytest.mark.parametrize("pair", [(1, 2), (1, -1), (2j, 3)])
def test_max_trivial_pair(pair):
    rep = lemmas.max_trivial_pair_check(*pair, samples=20)
    assert rep.ok and len(rep.solutions) == 2


def test_max_trivial_pair_rejects_equal():
    with pytest.raises(ValueError):
        lemmas.max_trivial_pair_check(2, 2)


# -- root transport ------------------------------------------------------

def test_class_root_transport():
    rng = np.random.default_rng(4)
    from quandlelab.gl2.matrix import random_conjugator

    for n in range(1, 5):
        P, A = random_conjugator(rng), random_conjugator(rng)
        rt = lemmas.class_root_transport(P, A, n)
        assert rt.root_residual <= 1e-10 and rt.transport_residual <= 1e-9


def test_sample_transport_bound():
    assert lemmas.sample_transport(100, 4) <= 1e-8
