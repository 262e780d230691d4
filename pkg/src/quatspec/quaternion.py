"""Quaternion scalars, Hamilton products on arrays, and sphere classes.

A quaternion ``q0 + q1 i + q2 j + q3 k`` is either a :class:`Quaternion`
value or a float array whose trailing axis has length 4.  Vectors and
matrices over the quaternions use the same trailing axis, so a length-n
vector is an ``(n, 4)`` array and an n x m matrix is ``(n, m, 4)``.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DivisionByZero

EQ_TOL = 1e-12


def hamilton(a, b):
    """Broadcasting Hamilton product of quaternion arrays."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a0, a1, a2, a3 = np.moveaxis(a, -1, 0)
    b0, b1, b2, b3 = np.moveaxis(b, -1, 0)
    return np.stack([
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ], axis=-1)


def conj_arr(a):
    out = np.array(a, dtype=float, copy=True)
    out[..., 1:] *= -1.0
    return out


def abs_arr(a):
    return np.sqrt(np.sum(np.square(a), axis=-1))


def to_complex_pair(a):
    """Split ``z1 + z2 j`` into its complex parts ``(z1, z2)``."""
    a = np.asarray(a, dtype=float)
    return a[..., 0] + 1j * a[..., 1], a[..., 2] + 1j * a[..., 3]


def from_complex_pair(z1, z2):
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    return np.stack([z1.real, z1.imag, z2.real, z2.imag], axis=-1)


@dataclass(frozen=True)
class Quaternion:
    q0: float
    q1: float = 0.0
    q2: float = 0.0
    q3: float = 0.0

    @classmethod
    def from_array(cls, a):
        a = np.asarray(a, dtype=float).reshape(4)
        return cls(*(float(x) for x in a))

    def as_array(self):
        return np.array([self.q0, self.q1, self.q2, self.q3])

    def __iter__(self):
        return iter((self.q0, self.q1, self.q2, self.q3))

    @property
    def real(self):
        return self.q0

    @property
    def imag(self):
        return (self.q1, self.q2, self.q3)

    def __abs__(self):
        return math.sqrt(self.q0 ** 2 + self.q1 ** 2 + self.q2 ** 2 + self.q3 ** 2)

    def conj(self):
        return Quaternion(self.q0, -self.q1, -self.q2, -self.q3)

    def __neg__(self):
        return Quaternion(-self.q0, -self.q1, -self.q2, -self.q3)

    def __add__(self, other):
        o = as_quaternion(other)
        return Quaternion(self.q0 + o.q0, self.q1 + o.q1, self.q2 + o.q2, self.q3 + o.q3)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-as_quaternion(other))

    def __rsub__(self, other):
        return as_quaternion(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.q0 * other, self.q1 * other, self.q2 * other, self.q3 * other)
        return qmul(self, other)

    def __rmul__(self, other):
        return qmul(other, self)

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            if other == 0:
                raise DivisionByZero("division of a quaternion by zero")
            return self * (1.0 / other)
        return qmul(self, qinv(other))

    def isclose(self, other, tol=EQ_TOL):
        o = as_quaternion(other)
        scale = max(1.0, abs(self), abs(o))
        return abs(self - o) <= tol * scale

    def __repr__(self):
        return f"Quaternion({self.q0!r}, {self.q1!r}, {self.q2!r}, {self.q3!r})"


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def as_quaternion(x):
    if isinstance(x, Quaternion):
        return x
    if isinstance(x, (int, float, np.floating, np.integer)):
        return Quaternion(float(x))
    return Quaternion.from_array(x)


def qmul(p, q):
    """Hamilton product ``p q``."""
    p = as_quaternion(p)
    q = as_quaternion(q)
    return Quaternion(
        p.q0 * q.q0 - p.q1 * q.q1 - p.q2 * q.q2 - p.q3 * q.q3,
        p.q0 * q.q1 + p.q1 * q.q0 + p.q2 * q.q3 - p.q3 * q.q2,
        p.q0 * q.q2 - p.q1 * q.q3 + p.q2 * q.q0 + p.q3 * q.q1,
        p.q0 * q.q3 + p.q1 * q.q2 - p.q2 * q.q1 + p.q3 * q.q0,
    )


def qinv(q):
    """``conj(q) / |q|^2``; raises :class:`DivisionByZero` for ``q = 0``."""
    q = as_quaternion(q)
    n2 = q.q0 ** 2 + q.q1 ** 2 + q.q2 ** 2 + q.q3 ** 2
    if n2 == 0.0:
        raise DivisionByZero("zero quaternion has no inverse")
    return Quaternion(q.q0 / n2, -q.q1 / n2, -q.q2 / n2, -q.q3 / n2)


def conjugate_by(q, s):
    """Similarity action ``s^-1 q s``; stays inside the sphere class of ``q``."""
    return qmul(qinv(s), qmul(q, s))


@dataclass(frozen=True, order=True)
class SphereClass:
    """The similarity class ``{re + rad I : I^2 = -1}`` of a quaternion.

    Ordering is lexicographic on ``(re, rad)`` so reports sort
    deterministically.
    """

    re: float
    rad: float

    def __post_init__(self):
        if self.rad < 0:
            raise ValueError(f"sphere radius must be nonnegative, got {self.rad}")

    @property
    def is_real(self):
        return self.rad == 0.0

    def representative(self):
        """Canonical member ``re + rad i``."""
        return Quaternion(self.re, self.rad)

    def contains(self, p, tol=EQ_TOL):
        p = as_quaternion(p)
        other = sphere_rep(p)
        scale = max(1.0, abs(p))
        return abs(other.re - self.re) <= tol * scale and abs(other.rad - self.rad) <= tol * scale

    def distance(self, other):
        return math.hypot(self.re - other.re, self.rad - other.rad)


def sphere_rep(q):
    q = as_quaternion(q)
    return SphereClass(q.q0, math.sqrt(q.q1 ** 2 + q.q2 ** 2 + q.q3 ** 2))


def slice_unit(values, tol=1e-12):
    """Common imaginary unit of a set of quaternions, or ``None``.

    Every value must lie in ``R + R I`` for a single unit ``I``; all-real
    input returns ``i``.
    """
    unit = None
    for v in values:
        v = np.asarray(v, dtype=float)
        im = v[1:]
        r = float(np.linalg.norm(im))
        if r <= tol * max(1.0, float(np.linalg.norm(v))):
            continue
        u = im / r
        if unit is None:
            unit = u
        elif np.linalg.norm(np.cross(unit, u)) > 1e-9:
            return None
    if unit is None:
        return np.array([0.0, 1.0, 0.0, 0.0])
    return np.concatenate([[0.0], unit])


def random_quaternion(rng, size=None):
    shape = (4,) if size is None else tuple(np.atleast_1d(size)) + (4,)
    return rng.standard_normal(shape)


def random_unit(rng):
    v = rng.standard_normal(4)
    return Quaternion.from_array(v / np.linalg.norm(v))
