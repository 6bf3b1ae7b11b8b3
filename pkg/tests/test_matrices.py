import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qtorus.cyclo import Cyclo, zeta
from qtorus.matrices import (CycloMatrix, MatrixError, ResourceCapError, UnitaryMatrix,
                             block_fourier, conjugate_intertwiner, diagonal_unitary,
                             fourier_matrix, identity_unitary, parse_matrix, parse_unitary,
                             permutation_matrix, t_pi_matrix)
from qtorus.partitions import compose, cup, identity, involute, single_block, tensor
from strategies import composable_pairs, partitions, sample_unitaries


@pytest.mark.parametrize("N", range(1, 8))
def test_fourier_is_unitary_and_symmetric(N):
    F = fourier_matrix(N)
    assert F.is_symmetric()
    assert (F @ F.adjoint()).m == CycloMatrix.identity(N)


def test_builders():
    assert str(block_fourier((2, 3))) == "fourier:2,3"
    P = permutation_matrix([2, 3, 1])
    assert P[1, 0] == 1 and P[2, 1] == 1 and P[0, 2] == 1
    D = diagonal_unitary([Cyclo.one(), zeta(3)])
    assert D[1, 1] == zeta(3)
    with pytest.raises(MatrixError):
        permutation_matrix([1, 1])
    with pytest.raises(MatrixError):
        diagonal_unitary([Cyclo.rational(2)])


def test_parse_unitary_specs():
    q = parse_unitary("perm:[2,1] @ diag:1,z(4,1) @ fourier:2")
    want = permutation_matrix([2, 1]).m @ diagonal_unitary([1, zeta(4)]).m @ fourier_matrix(2).m
    assert q.m == want
    assert parse_unitary("id:3").m == CycloMatrix.identity(3)
    lit = parse_unitary("sqrt(2)/2, sqrt(2)/2; sqrt(2)/2, -sqrt(2)/2")
    assert lit.m == fourier_matrix(2).m
    for bad in ("1, 1; 1, 1", "fourier:x", "perm:[1,3]", "id:2 @ id:3", "1, 0"):
        with pytest.raises(MatrixError):
            parse_unitary(bad)


@settings(max_examples=120)
@given(composable_pairs(max_side=2), st.integers(1, 3))
def test_composition_rule(pq, N):
    p, q = pq
    r, loops = compose(p, q)
    assert t_pi_matrix(p, N) @ t_pi_matrix(q, N) == t_pi_matrix(r, N).scale(N ** loops)


@settings(max_examples=120)
@given(partitions(max_side=2), partitions(max_side=2), st.integers(1, 3))
def test_tensor_rule(p, q, N):
    assert t_pi_matrix(tensor(p, q), N) == t_pi_matrix(p, N).kron(t_pi_matrix(q, N))


@given(partitions(max_side=3), st.integers(1, 3))
def test_involution_is_adjoint(p, N):
    assert t_pi_matrix(involute(p), N) == t_pi_matrix(p, N).adjoint()


def test_cup_and_identity_maps():
    assert t_pi_matrix(identity(1), 3) == CycloMatrix.identity(3)
    c = t_pi_matrix(cup(), 2)
    assert (c.rows, c.cols) == (4, 1)
    assert [c[r, 0] for r in range(4)] == [1, 0, 0, 1]


def test_entry_cap():
    with pytest.raises(ResourceCapError):
        t_pi_matrix(identity(3), 10, cap=1000)


def _kron_all(mats):
    out = CycloMatrix.identity(1)
    for m in mats:
        out = out.kron(m)
    return out


@pytest.mark.parametrize("Q", sample_unitaries(4, seed=11, sizes=(2, 3)), ids=str)
@pytest.mark.parametrize("k, l", [("w", "w"), ("", "ww"), ("wb", ""), ("b", "b"), ("wb", "bw")])
def test_conjugation_against_explicit_products(Q, k, l):
    N = Q.n
    T = t_pi_matrix(single_block(len(k), len(l)), N)
    right = _kron_all([Q.m if c == "w" else Q.m.conj() for c in k])
    left = _kron_all([Q.m if c == "w" else Q.m.conj() for c in l])
    assert conjugate_intertwiner(T, k, l, Q) == left.adjoint() @ T @ right


@pytest.mark.parametrize("Q", sample_unitaries(4, seed=5), ids=str)
def test_conjugated_identity_is_identity(Q):
    T = CycloMatrix.identity(Q.n)
    assert conjugate_intertwiner(T, 1, 1, Q) == T


def test_unitarity_is_checked():
    with pytest.raises(MatrixError):
        UnitaryMatrix(2, parse_matrix("1, 1; 0, 1"))
    assert identity_unitary(2).n == 2
