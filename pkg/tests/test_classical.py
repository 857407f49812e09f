import random

import pytest

from fixtures import Symbols, dg1_example, rand_poly
from kron_ansatz import linalg
from kron_ansatz.ansatz import frobenius_companion
from kron_ansatz.blocksym import is_block_symmetric
from kron_ansatz.classical import (L1Params, dl_basis_pencil, dl_basis_z, dl_pencil,
                                   intersection_check, l1_pencil, l1_rank_condition,
                                   l2_pencil, p_tableau, satisfies_l1, satisfies_l2)
from kron_ansatz.matpoly import DimensionError, Pencil, from_coeffs
from kron_ansatz.oracle import Status, is_strong_linearization


def _abc(n=2):
    s = Symbols(1, n, 2)
    return s, s.p(2), s.p(1), s.p(0)


def _abcd(n=2):
    s = Symbols(2, n, 3)
    return s, s.p(3), s.p(2), s.p(1), s.p(0)


def test_tableau_k2():
    s, A, B, C = _abc()
    tab = p_tableau(s.P)
    Z = linalg.zeros(2, 2)
    assert linalg.equal(tab.grid(), linalg.assemble([[A, Z], [B, -C]]))


def test_tableau_k3():
    s, A, B, C, D = _abcd()
    Z = linalg.zeros(2, 2)
    J =linalg.assemble([[Z, A], [A, B], [B, C]])
    H = linalg.assemble([[Z, Z], [-C, -D], [-D, Z]])
    tab = p_tableau(s.P)
    assert linalg.equal(tab.J, J) and linalg.equal(tab.H, H)


def test_dl_basis_z_k2():
    s, A, B, C = _abc()
    Z = linalg.zeros(2, 2)
    assert linalg.equal(dl_basis_z(s.P, 1), linalg.assemble([[Z], [-C]]))
    assert linalg.equal(dl_basis_z(s.P, 2), linalg.assemble([[A], [B]]))


def test_dl_basis_z_k3():
    s, A, B, C, D = _abcd()
    Z = linalg.zeros(2, 2)
    assert linalg.equal(dl_basis_z(s.P, 1), linalg.assemble([[Z, Z], [-C, -D], [-D, Z]]))
    assert linalg.equal(dl_basis_z(s.P, 2), linalg.assemble([[A, Z], [B, Z], [Z, -D]]))
    assert linalg.equal(dl_basis_z(s.P, 3), linalg.assemble([[Z, A], [A, B], [B, C]]))
    with pytest.raises(ValueError):
        dl_basis_z(s.P, 4)


def test_dl_pencils_k2_explicit():
    s, A, B, C = _abc()
    Z = linalg.zeros(2, 2)
    e1 = Pencil(linalg.assemble([[A, Z], [Z, -C]]), linalg.assemble([[B, C], [C, Z]]))
    e2 = Pencil(linalg.assemble([[Z, A], [A, B]]), linalg.assemble([[-A, Z], [Z, C]]))
    assert dl_pencil(s.P, [1, 0]) == e1
    assert dl_pencil(s.P, [0, 1]) == e2
    assert dl_pencil(s.P, [2, -1]) == e1.scale(2) + e2.scale(-1)


@pytest.mark.parametrize("k,n", [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (4, 2)])
def test_basis_pencils_block_symmetric_in_both_spaces(k, n):
    P = rand_poly(k * 10 + n, n, k)
    for i in range(1, k + 1):
        B = dl_basis_pencil(P, i)
        e = [0] * k
        e[i - 1] = 1
        assert is_block_symmetric(B, n)
        assert satisfies_l1(B, P, e)
        assert satisfies_l2(B, P, e)


def _rand_z(rng, rows, cols):
    return linalg.matrix([[rng.randint(-2, 2) for _ in range(cols)] for _ in range(rows)])


def test_l1_l2_identities_random():
    rng = random.Random(3)
    for k, n in [(2, 2), (3, 1), (3, 2), (4, 1)]:
        P = rand_poly(k + n, n, k)
        for _ in range(3):
            v = [rng.randint(-2, 2) for _ in range(k)]
            L1 = l1_pencil(P, v, _rand_z(rng, k * n, (k - 1) * n))
            L2 = l2_pencil(P, v, _rand_z(rng, (k - 1) * n, k * n))
            assert satisfies_l1(L1, P, v)
            assert satisfies_l2(L2, P, v)
            w = [x + 1 for x in v]
            assert not satisfies_l1(L1, P, w)


def test_l1_params_form():
    P = rand_poly(4, 2, 3)
    Z = dl_basis_z(P, 2)
    assert l1_pencil(P, L1Params([0, 1, 0], Z)) == l1_pencil(P, [0, 1, 0], Z)
    with pytest.raises(DimensionError):
        l1_pencil(P, [1, 0], Z)
    with pytest.raises(DimensionError):
        l1_pencil(P, [1, 0, 0], Z[:4])


def test_frobenius_is_l1_member():
    P = rand_poly(5, 2, 3)
    k, n = 3, 2
    Z = linalg.assemble([[linalg.zeros(n, (k - 1) * n)], [linalg.eye((k - 1) * n)]])
    assert l1_pencil(P, [1, 0, 0], Z) == frobenius_companion(P)
    assert l1_rank_condition([1, 0, 0], Z)


def test_l1_rank_condition_examples():
    Z = linalg.matrix([[0], [1]])
    assert l1_rank_condition([1, 0], Z)
    assert not l1_rank_condition([0, 1], Z)
    assert not l1_rank_condition([0, 0], Z)


def test_l1_rank_condition_vs_oracle():
    rng = random.Random(8)
    P = rand_poly(6, 1, 3)
    seen = set()
    for _ in range(12):
        v = [rng.randint(-1, 1) for _ in range(3)]
        Z = linalg.matrix([[rng.randint(-1, 1) for _ in range(2)] for _ in range(3)])
        cond = l1_rank_condition(v, Z)
        status = is_strong_linearization(l1_pencil(P, v, Z), P).status
        assert status == (Status.YES if cond else Status.NO)
        seen.add(cond)
    assert seen == {True, False}


def test_dg1_is_dl_first_basis_pencil():
    s, L = dg1_example()
    assert L == dl_pencil(s.P, [1, 0, 0, 0, 0, 0])


@pytest.mark.parametrize("n", [1, 2])
def test_intersection_check_k3(n):
    assert intersection_check(rand_poly(n, n, 3))


def test_rejects_rectangular_and_low_grade():
    with pytest.raises(DimensionError):
        p_tableau(rand_poly(0, 2, 3, 1))
    with pytest.raises(ValueError):
        p_tableau(from_coeffs([linalg.eye(2), linalg.eye(2)]))
