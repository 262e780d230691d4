"""Vectors of a finite-dimensional right quaternionic Hilbert space.

A vector is an ``(n, 4)`` float array.  Scalars act on the right,
``(phi q)_k = phi_k q``, and the inner product is conjugate-linear in the
first slot: ``<phi|psi> = sum_k conj(phi_k) psi_k``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import BasisError, DimensionError, EmptySpanError
from .quaternion import Quaternion, abs_arr, as_quaternion, conj_arr, hamilton

ORTHO_TOL = 1e-10
DROP_TOL = 1e-10


def as_vector(phi):
    v = np.asarray(phi, dtype=float)
    if v.ndim != 2 or v.shape[1] != 4:
        raise DimensionError(f"expected an (n, 4) quaternion vector, got shape {v.shape}")
    return v


def _q(q):
    return as_quaternion(q).as_array()


def inner(phi, psi):
    phi = as_vector(phi)
    psi = as_vector(psi)
    if phi.shape[0] != psi.shape[0]:
        raise DimensionError(f"length mismatch: {phi.shape[0]} vs {psi.shape[0]}")
    return Quaternion.from_array(hamilton(conj_arr(phi), psi).sum(axis=0))


def _inner_arr(phi, psi):
    return hamilton(conj_arr(phi), psi).sum(axis=0)


def norm(phi):
    return float(np.sqrt(np.sum(np.square(phi))))


def right_scale(phi, q):
    """``phi q``: every component multiplied by ``q`` on the right."""
    return hamilton(as_vector(phi), _q(q))


def basis_vector(n, k):
    e = np.zeros((n, 4))
    e[k, 0] = 1.0
    return e


@dataclass(frozen=True, eq=False)
class HilbertBasis:
    """An orthonormal family of vectors, stored as a ``(m, n, 4)`` array."""

    vectors: np.ndarray

    def __post_init__(self):
        vs = np.asarray(self.vectors, dtype=float)
        if vs.ndim != 3 or vs.shape[2] != 4:
            raise BasisError(f"basis array must have shape (m, n, 4), got {vs.shape}")
        object.__setattr__(self, "vectors", vs)
        g = gram(vs)
        target = np.zeros_like(g)
        target[np.arange(len(vs)), np.arange(len(vs)), 0] = 1.0
        if np.max(np.abs(g - target), initial=0.0) > ORTHO_TOL:
            raise BasisError("vectors are not orthonormal")

    def __len__(self):
        return self.vectors.shape[0]

    def __iter__(self):
        return iter(self.vectors)

    @property
    def dim(self):
        return self.vectors.shape[1]

    @property
    def complete(self):
        return len(self) == self.dim

    def coefficients(self, phi):
        """Right coefficients ``<b_k|phi>`` as an ``(m, 4)`` array."""
        phi = as_vector(phi)
        return hamilton(conj_arr(self.vectors), phi[None]).sum(axis=1)

    def expand(self, coeffs):
        return hamilton(self.vectors, np.asarray(coeffs)[:, None, :]).sum(axis=0)


def gram(vs):
    """Matrix of inner products ``<v_a|v_b>``, shape ``(m, m, 4)``."""
    vs = np.asarray(vs, dtype=float)
    return hamilton(conj_arr(vs)[:, None], vs[None, :]).sum(axis=2)


def standard_basis(n):
    return HilbertBasis(np.stack([basis_vector(n, k) for k in range(n)]))


def left_mul(q, phi, basis=None):
    """Left scalar multiplication induced by ``basis``.

    ``q phi = sum_k b_k q <b_k|phi>``.  Without a basis the standard basis
    is used, where this is plain componentwise left multiplication.
    """
    phi = as_vector(phi)
    qa = _q(q)
    if basis is None:
        return hamilton(qa, phi)
    if not isinstance(basis, HilbertBasis):
        basis = HilbertBasis(basis)
    if not basis.complete or basis.dim != phi.shape[0]:
        raise BasisError("basis does not span the space of the vector")
    coeffs = hamilton(qa, basis.coefficients(phi))
    return basis.expand(coeffs)


def gram_schmidt(vs, drop_tol=DROP_TOL):
    """Orthonormal basis of the right span of ``vs``.

    Classical Gram-Schmidt with one re-orthogonalization pass; vectors whose
    residual norm falls below ``drop_tol`` times the largest input norm are
    dropped as dependent.
    """
    vs = [as_vector(v) for v in vs]
    if not vs:
        raise EmptySpanError("no vectors given")
    scale = max(norm(v) for v in vs)
    if scale == 0.0:
        raise EmptySpanError("all input vectors are zero")
    out = []
    for v in vs:
        w = v.copy()
        for _ in range(2):
            for u in out:
                w = w - hamilton(u, _inner_arr(u, w))
        nw = norm(w)
        if nw < drop_tol * scale:
            continue
        out.append(w / nw)
    return HilbertBasis(np.stack(out))


def project(basis_of_m, phi):
    """Orthogonal projection onto the right span of an orthonormal family."""
    phi = as_vector(phi)
    if isinstance(basis_of_m, HilbertBasis):
        b = basis_of_m
    else:
        b = HilbertBasis(np.asarray(basis_of_m, dtype=float))
    if b.dim != phi.shape[0]:
        raise DimensionError("basis and vector live in different spaces")
    return b.expand(b.coefficients(phi))


def random_vector(rng, n):
    return rng.standard_normal((n, 4))


def vector_abs(phi):
    return abs_arr(phi)
