import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from quatspec.errors import BasisError, EmptySpanError
from quatspec.quaternion import Quaternion, hamilton
from quatspec.space import (
    HilbertBasis, gram_schmidt, inner, left_mul, norm, project, random_vector, right_scale,
)

seeds = st.integers(0, 2 ** 32 - 1)


def vec(*qs):
    return np.array([Quaternion(*q).as_array() if isinstance(q, tuple) else [q, 0, 0, 0] for q in qs],
                    dtype=float)


def test_inner_examples():
    assert inner(vec(1, 0), vec((0, 1, 0, 0), 0)) == Quaternion(0, 1)
    assert inner(vec(1, (0, 0, 1, 0)), vec(1, (0, 0, 1, 0))) == Quaternion(2)


@given(seeds)
def test_inner_is_conjugate_linear_on_the_left(seed):
    rng = np.random.default_rng(seed)
    phi, psi = random_vector(rng, 3), random_vector(rng, 3)
    q = Quaternion.from_array(rng.standard_normal(4))
    lhs = inner(right_scale(phi, q), psi)
    assert lhs.isclose(q.conj() * inner(phi, psi), 1e-12)


def test_left_mul_standard_basis():
    phi = vec((0, 1, 0, 0), 1)
    out = left_mul(Quaternion(0, 0, 1), phi)
    assert np.allclose(out, vec((0, 0, 0, -1), (0, 0, 1, 0)))


@given(seeds)
def test_left_mul_properties(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 5))
    basis = gram_schmidt([random_vector(rng, n) for _ in range(n)])
    phi = random_vector(rng, n)
    r = float(rng.standard_normal())
    assert np.allclose(left_mul((r, 0, 0, 0), phi, basis), phi * r)
    q = rng.standard_normal(4)
    for b in basis:
        assert np.allclose(left_mul(q, b, basis), hamilton(b, q))
    assert math.isclose(norm(left_mul(q, phi, basis)), np.linalg.norm(q) * norm(phi), rel_tol=1e-10)


def test_gram_schmidt_examples():
    b = gram_schmidt([vec(1, 0), vec(1, 1)])
    assert np.allclose(b.vectors, [vec(1, 0), vec(0, 1)])
    b = gram_schmidt([vec(1, (0, 1, 0, 0))])
    assert np.allclose(b.vectors[0], vec(1, (0, 1, 0, 0)) / math.sqrt(2))
    assert len(gram_schmidt([vec(1, 0), vec((0, 1, 0, 0), 0)])) == 1
    with pytest.raises(EmptySpanError):
        gram_schmidt([vec(0, 0)])


def test_basis_validation():
    with pytest.raises(BasisError):
        HilbertBasis(np.stack([vec(1, 0), vec(1, 0)]))


@given(seeds)
def test_projection(seed):
    rng = np.random.default_rng(seed)
    phi = random_vector(rng, 4)
    m = gram_schmidt([random_vector(rng, 4) for _ in range(2)])
    p = project(m, phi)
    assert math.isclose(norm(phi) ** 2, norm(p) ** 2 + norm(phi - p) ** 2, rel_tol=1e-10)
    assert np.allclose(project(m, p), p)
    e0 = HilbertBasis(vec(1, 0)[None])
    assert np.allclose(project(e0, vec((1, 2, 3, 4), (5, 6, 7, 8))), vec((1, 2, 3, 4), 0))


@given(seeds)
def test_parseval(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 6))
    basis = gram_schmidt([random_vector(rng, n) for _ in range(n)])
    phi = random_vector(rng, n)
    assert math.isclose(norm(phi) ** 2, float(np.sum(basis.coefficients(phi) ** 2)), rel_tol=1e-10)


@given(seeds)
def test_left_mul_is_adjoint_to_conjugate(seed):
    rng = np.random.default_rng(seed)
    basis = gram_schmidt([random_vector(rng, 3) for _ in range(3)])
    phi, psi = random_vector(rng, 3), random_vector(rng, 3)
    q = rng.standard_normal(4)
    qbar = q * np.array([1, -1, -1, -1])
    assert inner(left_mul(qbar, phi, basis), psi).isclose(inner(phi, left_mul(q, psi, basis)), 1e-10)
