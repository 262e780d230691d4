"""Hot inner loops with a numba path and a pure-numpy path.

The numba path is used when numba imports and the environment variable
``QUATSPEC_NUMBA`` is not set to ``0``.  Both paths are always importable
so tests and the benchmark can exercise each one directly.
"""

import os

import numpy as np

# TBB in this image is too old for numba; pick the portable layer unless told otherwise
os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

try:
    from numba import njit, prange
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None

USE_NUMBA = njit is not None and os.environ.get("QUATSPEC_NUMBA", "1") != "0"


# -- quaternion matrix product ------------------------------------------------

def qmatmul_numpy(a, b):
    # (A1 + A2 j)(B1 + B2 j) = (A1 B1 - A2 conj(B2)) + (A1 B2 + A2 conj(B1)) j
    a1 = a[..., 0] + 1j * a[..., 1]
    a2 = a[..., 2] + 1j * a[..., 3]
    b1 = b[..., 0] + 1j * b[..., 1]
    b2 = b[..., 2] + 1j * b[..., 3]
    c1 = a1 @ b1 - a2 @ b2.conj()
    c2 = a1 @ b2 + a2 @ b1.conj()
    out = np.empty(c1.shape + (4,))
    out[..., 0] = c1.real
    out[..., 1] = c1.imag
    out[..., 2] = c2.real
    out[..., 3] = c2.imag
    return out


def _qmatmul_loops(a, b):
    n, m = a.shape[0], a.shape[1]
    p = b.shape[1]
    out = np.zeros((n, p, 4))
    for i in range(n):
        for k in range(m):
            x0 = a[i, k, 0]
            x1 = a[i, k, 1]
            x2 = a[i, k, 2]
            x3 = a[i, k, 3]
            if x0 == 0.0 and x1 == 0.0 and x2 == 0.0 and x3 == 0.0:
                continue
            for j in range(p):
                y0 = b[k, j, 0]
                y1 = b[k, j, 1]
                y2 = b[k, j, 2]
                y3 = b[k, j, 3]
                out[i, j, 0] += x0 * y0 - x1 * y1 - x2 * y2 - x3 * y3
                out[i, j, 1] += x0 * y1 + x1 * y0 + x2 * y3 - x3 * y2
                out[i, j, 2] += x0 * y2 - x1 * y3 + x2 * y0 + x3 * y1
                out[i, j, 3] += x0 * y3 + x1 * y2 - x2 * y1 + x3 * y0
    return out


# -- smallest singular value of the pseudo-resolvent over a grid ----------------

def mu_grid_numpy(c, res, rads):
    """sigma_min(C^2 - 2 re C + (re^2 + rad^2) I) for every (re, rad) pair.

    ``c`` is the complex image of a quaternionic matrix; quaternionic singular
    values are the pairs of complex ones, so the complex minimum is the answer.
    """
    n = c.shape[0]
    c2 = c @ c
    eye = np.eye(n)
    re = np.asarray(res, dtype=float)[:, None, None]
    ab2 = (np.asarray(res, dtype=float) ** 2 + np.asarray(rads, dtype=float) ** 2)[:, None, None]
    stack = c2[None] - 2.0 * re * c[None] + ab2 * eye[None]
    sv = np.linalg.svd(stack, compute_uv=False)
    return sv[:, -1].copy()


def _mu_grid_loops(c, res, rads):
    n = c.shape[0]
    c2 = c @ c
    out = np.empty(res.shape[0])
    for t in prange(res.shape[0]):
        m = c2 - 2.0 * res[t] * c
        shift = res[t] * res[t] + rads[t] * rads[t]
        for i in range(n):
            m[i, i] += shift
        s = np.linalg.svd(m)[1]
        out[t] = s[n - 1]
    return out


if njit is not None:
    qmatmul_numba = njit(cache=True)(_qmatmul_loops)
    mu_grid_numba = njit(cache=True, parallel=True)(_mu_grid_loops)
else:  # pragma: no cover
    qmatmul_numba = _qmatmul_loops
    mu_grid_numba = None


def qmatmul(a, b):
    """Product of quaternion matrices stored as (n, m, 4) and (m, p, 4) arrays."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"inner dimensions differ: {a.shape} @ {b.shape}")
    if USE_NUMBA and _loops_pay_off(a, b.shape[1]):
        return qmatmul_numba(np.ascontiguousarray(a, dtype=float),
                             np.ascontiguousarray(b, dtype=float))
    return qmatmul_numpy(a, b)


def _loops_pay_off(a, p):
    # the loop kernel skips zero entries of a, so its cost is nnz(a) * p;
    # BLAS runs about 5x faster per dense multiply-add (see the benchmark)
    n, m = a.shape[0], a.shape[1]
    if n * m * p <= 16 ** 3:
        return True
    nnz = np.count_nonzero(np.any(a != 0.0, axis=2))
    return 5 * nnz < n * m


def _threads():
    try:
        import numba
        return numba.config.NUMBA_NUM_THREADS
    except ImportError:  # pragma: no cover
        return 1


def mu_grid(c, res, rads):
    res = np.ascontiguousarray(res, dtype=float)
    rads = np.ascontiguousarray(rads, dtype=float)
    # per-point LAPACK calls only beat the batched numpy SVD when prange has threads
    if USE_NUMBA and _threads() > 1:
        return mu_grid_numba(np.ascontiguousarray(c, dtype=complex), res, rads)
    return mu_grid_numpy(c, res, rads)
