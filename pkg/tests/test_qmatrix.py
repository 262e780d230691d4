import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from quatspec import qmatrix as qm
from quatspec.errors import NotContractive
from quatspec.quaternion import Quaternion, hamilton
from quatspec.space import inner, norm, random_vector

seeds = st.integers(0, 2 ** 32 - 1)


def q(*c):
    return list(c) + [0] * (4 - len(c))


def test_apply_examples(rng):
    d = qm.diag([q(0, 1), q(0, 0, 1)])
    assert np.allclose(qm.apply(d, [q(1), q(1)]), [q(0, 1), q(0, 0, 1)])
    a, phi = qm.random_matrix(rng, 3), random_vector(rng, 3)
    k = [0, 0, 0, 1]
    assert np.allclose(qm.apply(a, hamilton(phi, k)), hamilton(qm.apply(a, phi), k))
    assert not np.any(qm.apply(qm.zeros(3), phi))


@given(seeds)
def test_adjoint(seed):
    rng = np.random.default_rng(seed)
    a = qm.random_matrix(rng, 4)
    assert np.array_equal(qm.adjoint(qm.adjoint(a)), a)
    phi, psi = random_vector(rng, 4), random_vector(rng, 4)
    assert abs(inner(psi, qm.apply(a, phi)) - inner(qm.apply(qm.adjoint(a), psi), phi)) <= 1e-10
    assert np.allclose(qm.adjoint(np.array([[q(0, 1)]], float)), [[q(0, -1)]])


def test_scalar_op(rng):
    a = qm.random_matrix(rng, 3)
    assert np.allclose(qm.scalar_op((2.5, 0, 0, 0), a), 2.5 * a)
    assert np.allclose(qm.scalar_op((2.5, 0, 0, 0), a, side="right"), 2.5 * a)
    phi = random_vector(rng, 3)
    jop = qm.scalar_op((0, 0, 1, 0), qm.identity(3))
    assert np.allclose(qm.apply(jop, phi), hamilton([0, 0, 1, 0], phi))
    qq = rng.standard_normal(4)
    lhs = qm.adjoint(qm.scalar_op(qq, a))
    rhs = qm.scalar_op(qq * [1, -1, -1, -1], qm.adjoint(a), side="right")
    assert np.max(np.abs(lhs - rhs)) <= 1e-10


def test_chi_examples():
    assert np.allclose(qm.chi(np.array([[q(0, 0, 1)]], float)), [[0, 1], [-1, 0]])
    assert np.allclose(qm.chi(np.array([[q(0, 1)]], float)), [[1j, 0], [0, -1j]])


@given(seeds)
def test_chi_roundtrip_and_products(seed):
    rng = np.random.default_rng(seed)
    a, b = qm.random_matrix(rng, 3), qm.random_matrix(rng, 3)
    assert np.allclose(qm.unchi(qm.chi(a)), a)
    scale = np.linalg.norm(qm.chi(a), 2) * np.linalg.norm(qm.chi(b), 2)
    assert np.linalg.norm(qm.chi(qm.matmul(a, b)) - qm.chi(a) @ qm.chi(b), 2) <= 1e-12 * scale
    assert np.allclose(qm.chi(qm.adjoint(a)), qm.chi(a).conj().T)


def test_rank_kernel_examples():
    assert qm.rank_kernel(qm.identity(3))[0] == 3
    assert qm.kernel(qm.identity(3)).shape[0] == 0
    a = np.array([[q(1), q(0, 1)], [q(0, 0, 1), q(0, 0, 0, -1)]], float)
    r, ker = qm.rank_kernel(a)
    assert r == 1 and ker.shape[0] == 1
    assert np.max(np.abs(qm.apply(a, ker[0]))) < 1e-12
    # the kernel is the right span of (-i, 1)/sqrt(2)
    ref = np.array([q(0, -1), q(1)], float) / math.sqrt(2)
    assert abs(abs(inner(ref, ker[0])) - 1.0) < 1e-12
    sv = np.linalg.svd(qm.chi(a), compute_uv=False)
    assert int(np.sum(sv > 1e-10 * sv[0])) == 2


@given(seeds, st.integers(1, 6))
def test_rank_identities(seed, n):
    rng = np.random.default_rng(seed)
    r = int(rng.integers(0, n + 1))
    a = qm.random_rank_matrix(rng, n, r)
    rank, ker = qm.rank_kernel(a)
    assert rank == r == qm.rank(qm.adjoint(a))
    assert rank + ker.shape[0] == n
    for k in ker:
        assert abs(norm(k) - 1.0) < 1e-10
        assert norm(qm.apply(a, k)) <= 1e-9 * (1 + qm.op_norm(a))
    # range is orthogonal to the adjoint kernel
    image = qm.apply(a, random_vector(rng, n))
    for k in qm.kernel(qm.adjoint(a)):
        assert abs(inner(k, image)) <= 1e-9 * (1 + norm(image))


def test_op_norm(rng):
    assert math.isclose(qm.op_norm(qm.identity(4)), 1.0)
    assert math.isclose(qm.op_norm(qm.diag([q(0, 1), q(0, 0, 2)])), 2.0)
    a = qm.random_matrix(rng, 4)
    bound = qm.op_norm(a) + 1e-10
    for _ in range(100):
        phi = random_vector(rng, 4)
        assert norm(qm.apply(a, phi / norm(phi))) <= bound


def test_finite_rank_decomp_examples(rng):
    u = random_vector(rng, 3)
    u /= norm(u)
    v = random_vector(rng, 3)
    a = qm.matmul(u[:, None, :], np.swapaxes(v[:, None, :], 0, 1) * [1, -1, -1, -1])
    dec = qm.finite_rank_decomp(a)
    assert dec.rank == 1
    assert np.allclose(dec.matrix(), a)
    assert abs(abs(inner(dec.u[0], u)) - 1.0) < 1e-10
    eye = qm.finite_rank_decomp(qm.identity(2))
    assert eye.rank == 2 and np.allclose(eye.matrix(), qm.identity(2))
    b = qm.random_rank_matrix(rng, 4, 2)
    dec = qm.finite_rank_decomp(b)
    for ui, vi in zip(dec.u, dec.v):
        assert np.max(np.abs(qm.apply(qm.adjoint(b), ui) - vi)) <= 1e-10


def test_neumann(rng):
    assert np.allclose(qm.neumann_inverse(qm.zeros(3)), qm.identity(3))
    assert np.allclose(qm.neumann_inverse(0.5 * qm.identity(2)), 2 * qm.identity(2))
    with pytest.raises(NotContractive):
        qm.neumann_inverse(qm.identity(2))
    a = qm.random_matrix(rng, 4)
    a *= 0.9 / qm.op_norm(a)
    res = qm.matmul(qm.identity(4) - a, qm.neumann_inverse(a)) - qm.identity(4)
    assert qm.op_norm(res) <= 1e-10


def test_left_mul_matrix_in_a_basis(rng):
    from quatspec.space import gram_schmidt, left_mul
    basis = gram_schmidt([random_vector(rng, 3) for _ in range(3)])
    qq = Quaternion(0.3, -1, 2, 0.5)
    phi = random_vector(rng, 3)
    m = qm.left_mul_matrix(qq, basis)
    assert np.allclose(qm.apply(m, phi), left_mul(qq, phi, basis))
