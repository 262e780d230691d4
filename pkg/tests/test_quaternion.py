import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from quatspec.errors import DivisionByZero
from quatspec.quaternion import (
    I, J, K, ONE, Quaternion, SphereClass, conjugate_by, qinv, qmul, random_unit, slice_unit,
    sphere_rep,
)

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
quats = st.builds(Quaternion, finite, finite, finite, finite)
nonzero = quats.filter(lambda q: abs(q) > 1e-3)


def test_hamilton_units():
    assert qmul(I, J) == K
    assert qmul(J, I) == -K
    assert qmul(I, I) == -ONE


def test_identity_and_expansion():
    q = Quaternion(1, 2, 3, 4)
    assert qmul(ONE, q) == q
    assert qmul(Quaternion(1, 1), Quaternion(1, -1)) == Quaternion(2)


def test_inverse():
    assert qinv(I) == -I
    assert qinv(Quaternion(1, 1, 1, 1)).isclose(Quaternion(1, -1, -1, -1) * 0.25)
    with pytest.raises(DivisionByZero):
        qinv(Quaternion(0))


def test_sphere_rep_examples():
    assert sphere_rep(Quaternion(2, 3, 0, -4)) == SphereClass(2.0, 5.0)
    assert sphere_rep(Quaternion(7)) == SphereClass(7.0, 0.0)
    assert sphere_rep(J) == sphere_rep(I) == SphereClass(0.0, 1.0)


def test_conjugate_by_examples(rng):
    assert conjugate_by(I, J).isclose(-I)
    q = Quaternion(1, 2, 3, 4)
    assert conjugate_by(q, ONE) == q
    p = conjugate_by(Quaternion(2, 3), random_unit(rng))
    assert math.isclose(p.q0, 2.0, abs_tol=1e-12)
    assert math.isclose(math.sqrt(p.q1 ** 2 + p.q2 ** 2 + p.q3 ** 2), 3.0, rel_tol=1e-12)


@given(quats, quats)
def test_norm_is_multiplicative(p, q):
    assert math.isclose(abs(p * q), abs(p) * abs(q), rel_tol=1e-14, abs_tol=1e-300)


@given(quats, quats)
def test_conjugate_reverses_products(p, q):
    assert (p * q).conj().isclose(q.conj() * p.conj(), 1e-14)


@given(quats)
def test_conjugation_fixes_sphere(q):
    assert sphere_rep(q.conj()) == sphere_rep(q)


@given(quats, nonzero)
def test_conjugate_by_preserves_sphere(q, s):
    a, b = sphere_rep(q), sphere_rep(conjugate_by(q, s))
    assert a.distance(b) <= 1e-12 * max(1.0, abs(q))


@given(st.tuples(finite, finite, finite).filter(lambda v: np.linalg.norm(v) > 1e-6))
def test_units_square_to_minus_one(v):
    u = Quaternion(0.0, *(np.array(v) / np.linalg.norm(v)))
    assert sphere_rep(u).distance(SphereClass(0.0, 1.0)) < 1e-12
    assert abs(u * u + 1) <= 1e-12


def test_slice_unit():
    assert np.allclose(slice_unit([(1, 0, 0, 0)]), [0, 1, 0, 0])
    assert np.allclose(slice_unit([(1, 0, 2, 0), (0, 0, -1, 0)]), [0, 0, 1, 0])
    assert slice_unit([(0, 1, 0, 0), (0, 0, 1, 0)]) is None


def test_sphere_contains():
    c = SphereClass(1.0, 2.0)
    assert c.contains(Quaternion(1, 0, 0, 2))
    assert not c.contains(Quaternion(1, 0, 0, 2.1))
    with pytest.raises(ValueError):
        SphereClass(0.0, -1.0)
