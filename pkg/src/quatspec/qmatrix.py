"""Right-linear operators on H^n as quaternion matrices.

Matrices are ``(n, m, 4)`` arrays acting on column vectors from the left,
``(A phi)_i = sum_j A_ij phi_j``, which makes them right linear.  Ranks,
kernels and norms go through the complex image

    chi(A) = [[A1, A2], [-conj(A2), conj(A1)]],   A = A1 + A2 j,

a multiplicative, adjoint-compatible embedding into 2n x 2m complex
matrices.  A quaternion vector ``phi = a + c j`` corresponds to the complex
column ``(a, -conj(c))``; its structure partner ``(-conj(b), conj(a))``
is the image of ``-phi j``.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import BasisError, DimensionError, NotContractive, NumericalError, RankAmbiguous
from .quaternion import as_quaternion, conj_arr, from_complex_pair, hamilton, to_complex_pair
from .space import HilbertBasis, _inner_arr, as_vector, norm

RANK_RTOL = 1e-10
NEUMANN_MAX_TERMS = 10_000


def as_matrix(a):
    m = np.asarray(a, dtype=float)
    if m.ndim != 3 or m.shape[2] != 4:
        raise DimensionError(f"expected an (n, m, 4) quaternion matrix, got shape {m.shape}")
    return m


def identity(n):
    e = np.zeros((n, n, 4))
    e[np.arange(n), np.arange(n), 0] = 1.0
    return e


def zeros(n, m=None):
    return np.zeros((n, n if m is None else m, 4))


def diag(entries):
    entries = [as_quaternion(e).as_array() for e in entries]
    n = len(entries)
    d = np.zeros((n, n, 4))
    for k, e in enumerate(entries):
        d[k, k] = e
    return d


def real_scalar_matrix(r, n):
    return identity(n) * float(r)


def apply(a, phi):
    a = as_matrix(a)
    phi = as_vector(phi)
    if a.shape[1] != phi.shape[0]:
        raise DimensionError(f"matrix has {a.shape[1]} columns, vector has {phi.shape[0]} entries")
    return _kernels.qmatmul(a, phi[:, None, :])[:, 0, :]


def matmul(a, b):
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape[:2]} by {b.shape[:2]}")
    return _kernels.qmatmul(a, b)


def adjoint(a):
    """Conjugate transpose; the unique operator with <psi|A phi> = <A^dag psi|phi>."""
    return conj_arr(np.swapaxes(as_matrix(a), 0, 1))


def chi(a):
    a1, a2 = to_complex_pair(as_matrix(a))
    return np.block([[a1, a2], [-a2.conj(), a1.conj()]])


def unchi(c):
    """Inverse of :func:`chi` read off the first block row."""
    c = np.asarray(c)
    n, m = c.shape[0] // 2, c.shape[1] // 2
    return from_complex_pair(c[:n, :m], c[:n, m:])


def vector_to_complex(phi):
    a, c = to_complex_pair(as_vector(phi))
    return np.concatenate([a, -c.conj()])


def complex_to_vector(x):
    x = np.asarray(x, dtype=complex)
    n = x.shape[0] // 2
    return from_complex_pair(x[:n], -x[n:].conj())


def singular_values(a):
    """Quaternionic singular values (each complex pair counted once), descending."""
    a = as_matrix(a)
    if min(a.shape[:2]) == 0:
        return np.zeros(0)
    a1, a2 = to_complex_pair(a)
    # chi is block diagonal when A2 = 0; its singular values are those of A1 twice
    if not np.any(a[..., 2:]):
        src = a1.real if not np.any(a[..., 1]) else a1
        return np.linalg.svd(src, compute_uv=False)
    sv = np.linalg.svd(chi(a), compute_uv=False)
    return sv[::2].copy()


def op_norm(a):
    sv = singular_values(a)
    return float(sv[0]) if sv.size else 0.0


def _chi_svd(a):
    try:
        return np.linalg.svd(chi(a))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericalError(str(exc)) from exc


def _complex_rank(sv):
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    count = int(np.sum(sv > RANK_RTOL * sv[0]))
    if count % 2:
        raise RankAmbiguous(f"{count} complex singular values above the cutoff")
    return count


def rank(a):
    return _complex_rank(np.linalg.svd(chi(a), compute_uv=False)) // 2


def _quaternionic_span(columns, expected, n):
    """Orthonormal quaternionic basis of a complex subspace closed under ``J``.

    Pivoted Gram-Schmidt: each step keeps the candidate with the largest
    residual, so a structure partner ``x, Jx`` is never mistaken for a new
    direction.  Leftover residuals above 1e-8 mean the subspace was not
    ``J``-closed.
    """
    if expected == 0:
        return np.zeros((0, n, 4))
    cands = [complex_to_vector(x) for x in columns]
    chosen = []
    for _ in range(expected):
        norms = [norm(c) for c in cands]
        k = int(np.argmax(norms))
        w = cands.pop(k) / norms[k]
        for _ in range(2):
            for u in chosen:
                w = w - hamilton(u, _inner_arr(u, w))
        w = w / norm(w)
        chosen.append(w)
        cands = [c - hamilton(w, _inner_arr(w, c)) for c in cands]
    if cands and max(norm(c) for c in cands) > 1e-8:
        raise RankAmbiguous(
            f"complex subspace of dimension {len(columns)} does not pair into {expected} quaternionic vectors")
    return np.stack(chosen)


def rank_kernel(a):
    """Quaternionic rank and an orthonormal kernel basis (``(k, n, 4)`` array)."""
    a = as_matrix(a)
    n = a.shape[1]
    u, sv, vh = _chi_svd(a)
    r2 = _complex_rank(sv)
    kernel_cols = vh[r2:].conj()
    kern = _quaternionic_span(list(kernel_cols), n - r2 // 2, n)
    return r2 // 2, kern


def kernel(a):
    return rank_kernel(a)[1]


def range_basis(a):
    a = as_matrix(a)
    u, sv, vh = _chi_svd(a)
    r2 = _complex_rank(sv)
    return _quaternionic_span(list(u[:, :r2].T), r2 // 2, a.shape[0])


def left_mul_matrix(q, basis=None, n=None):
    """Matrix of ``phi -> q phi`` for the left multiplication of ``basis``."""
    qa = as_quaternion(q).as_array()
    if basis is None:
        if n is None:
            raise DimensionError("dimension needed for the standard basis")
        m = zeros(n)
        m[np.arange(n), np.arange(n)] = qa
        return m
    if not isinstance(basis, HilbertBasis):
        basis = HilbertBasis(basis)
    if not basis.complete:
        raise BasisError("basis does not span the space")
    b = np.swapaxes(basis.vectors, 0, 1)         # columns are basis vectors
    dq = zeros(len(basis))
    dq[np.arange(len(basis)), np.arange(len(basis))] = qa
    return matmul(matmul(b, dq), adjoint(b))


def scalar_op(q, a, side="left", basis=None):
    """``qA`` (``(qA) phi = q (A phi)``) or ``Aq`` (``(Aq) phi = A (q phi)``)."""
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionError("scalar multiplication needs a square operator")
    lq = left_mul_matrix(q, basis, n=a.shape[0])
    if side == "left":
        return matmul(lq, a)
    if side == "right":
        return matmul(a, lq)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


@dataclass(frozen=True, eq=False)
class FiniteRankDecomp:
    """``A phi = sum_i u_i <v_i|phi>`` with orthonormal ``u_i`` spanning ran(A)."""

    u: np.ndarray
    v: np.ndarray

    @property
    def rank(self):
        return self.u.shape[0]

    def apply(self, phi):
        phi = as_vector(phi)
        out = np.zeros((self.u.shape[1], 4))
        for ui, vi in zip(self.u, self.v):
            out += hamilton(ui, _inner_arr(vi, phi))
        return out

    def apply_adjoint(self, psi):
        psi = as_vector(psi)
        out = np.zeros((self.v.shape[1], 4))
        for ui, vi in zip(self.u, self.v):
            out += hamilton(vi, _inner_arr(ui, psi))
        return out

    def matrix(self):
        # sum_i u_i v_i^dag
        if self.rank == 0:
            return zeros(self.u.shape[1] if self.u.ndim == 3 else 0, self.v.shape[1] if self.v.ndim == 3 else 0)
        uu = np.swapaxes(self.u, 0, 1)
        return matmul(uu, conj_arr(self.v))


def finite_rank_decomp(a):
    a = as_matrix(a)
    u = range_basis(a)
    if u.shape[0] == 0:
        return FiniteRankDecomp(np.zeros((0, a.shape[0], 4)), np.zeros((0, a.shape[1], 4)))
    ad = adjoint(a)
    v = np.stack([apply(ad, ui) for ui in u])
    return FiniteRankDecomp(u, v)


def neumann_inverse(a, tol=1e-13):
    """``(I - A)^-1`` as the tolerance-truncated series ``sum_k A^k``.

    Requires ``op_norm(A) < 1``; summation stops once the next power has
    norm below ``tol`` (at most 10000 terms).
    """
    a = as_matrix(a)
    nrm = op_norm(a)
    if nrm >= 1.0:
        raise NotContractive(f"operator norm {nrm:.6g} is not below 1")
    n = a.shape[0]
    total = identity(n)
    power = identity(n)
    for _ in range(NEUMANN_MAX_TERMS):
        power = matmul(power, a)
        total = total + power
        if op_norm(power) < tol:
            return total
    raise NumericalError("Neumann series did not reach the tolerance within 10000 terms")


def random_matrix(rng, n, m=None):
    return rng.standard_normal((n, n if m is None else m, 4))


def random_rank_matrix(rng, n, r):
    """Random n x n matrix of quaternionic rank ``r`` (almost surely)."""
    if r == 0:
        return zeros(n)
    return matmul(random_matrix(rng, n, r), random_matrix(rng, r, n))


def matrix_norm_fro(a):
    return norm(as_matrix(a).reshape(-1, 4))
