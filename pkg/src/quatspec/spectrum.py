"""Pseudo-resolvent, S-spectrum extraction and classification for matrices.

The pseudo-resolvent ``R_q(A) = A^2 - 2 Re(q) A + |q|^2 I`` has real
coefficients, so everything here depends on ``q`` only through its sphere
class.  Right eigenvalues are read from the eigenvalues of ``chi(A)``, which
come in conjugate pairs ``{lam, conj(lam)}``; each pair is one sphere.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import NumericalError
from .qmatrix import adjoint, as_matrix, chi, identity, matmul, op_norm, rank_kernel, singular_values
from .quaternion import Quaternion, SphereClass, as_quaternion

DEDUP_TOL = 1e-8
CLAMP_IMAG = 1e-10


def default_tol(a):
    return 1e-8 * max(1.0, op_norm(a)) ** 2


def pseudo_resolvent(a, q):
    a = as_matrix(a)
    q = as_quaternion(q)
    n = a.shape[0]
    return matmul(a, a) - 2.0 * q.q0 * a + (abs(q) ** 2) * identity(n)


def mu(a, q):
    """``min ||R_q(A) phi||`` over unit ``phi``: the smallest singular value."""
    sv = singular_values(pseudo_resolvent(a, q))
    return float(sv[-1])


def point_spectrum(a):
    """Sphere classes of right eigenvalues with their multiplicities.

    Returns a list of ``(SphereClass, multiplicity)`` in ``(re, rad)`` order.
    """
    a = as_matrix(a)
    n = a.shape[0]
    if n == 0:
        return []
    try:
        lam = np.linalg.eigvals(chi(a))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed: {exc}") from exc
    if not np.all(np.isfinite(lam)):
        raise NumericalError("eigensolver returned non-finite values")
    # the 2n eigenvalues are closed under conjugation; the n largest imaginary
    # parts pick one member of every pair
    lam = lam[np.argsort(-lam.imag, kind="stable")][:n]
    scale = max(1.0, float(np.max(np.abs(lam))))
    reps = []
    for z in lam:
        rad = abs(z.imag)
        if rad <= CLAMP_IMAG * scale:
            rad = 0.0
        reps.append((float(z.real), float(rad)))
    reps.sort()
    merged = []
    for re, rad in reps:
        if merged:
            (mre, mrad), cnt = merged[-1]
            if abs(re - mre) + abs(rad - mrad) < DEDUP_TOL * (1.0 + np.hypot(re, rad)):
                merged[-1] = ((mre, mrad), cnt + 1)
                continue
        merged.append(((re, rad), 1))
    # sorting by re first can separate near-equal reps by a different rad; a
    # second pass over all pairs rejoins them
    out = []
    for (re, rad), cnt in merged:
        for k, (cls, c) in enumerate(out):
            if abs(cls.re - re) + abs(cls.rad - rad) < DEDUP_TOL * (1.0 + np.hypot(re, rad)):
                out[k] = (cls, c + cnt)
                break
        else:
            out.append((SphereClass(re, rad), cnt))
    out.sort(key=lambda item: (item[0].re, item[0].rad))
    return out


@dataclass(frozen=True)
class Classification:
    point: bool
    approximate: bool
    compression: bool
    residual: bool
    continuous: bool
    mu: float

    @property
    def resolvent(self):
        return not (self.point or self.approximate or self.compression)

    def flags(self):
        return {
            "point": self.point,
            "approximate": self.approximate,
            "compression": self.compression,
            "residual": self.residual,
            "continuous": self.continuous,
        }


def classify(a, q, tol=None):
    """Spectral flags of ``q`` for the matrix ``A``.

    ``point``: R_q(A) has a kernel.  ``approximate``: mu(A, q) <= tol.
    ``compression``: R_conj(q)(A^dag) has a kernel, i.e. the range of
    R_q(A) is not dense.  Residual and continuous parts are computed from
    the same data and are empty in finite dimension.
    """
    a = as_matrix(a)
    q = as_quaternion(q)
    if tol is None:
        tol = default_tol(a)
    if tol <= 0:
        raise ValueError("tol must be positive")
    r = pseudo_resolvent(a, q)
    n = a.shape[0]
    rk, _ = rank_kernel(r)
    point = rk < n
    m = mu(a, q)
    approximate = m <= tol
    rk_adj, _ = rank_kernel(pseudo_resolvent(adjoint(a), q.conj()))
    compression = rk_adj < n
    residual = (not point) and compression
    continuous = (not point) and (not compression) and approximate
    return Classification(point, approximate, compression, residual, continuous, m)


@dataclass
class SpectrumReport:
    spheres: list = field(default_factory=list)      # dicts: sphere, mult, flags, mu
    resolvent_certificates: list = field(default_factory=list)   # (Quaternion, mu)
    tol: float = 0.0

    def to_dict(self):
        return {
            "tol": self.tol,
            "spheres": [
                {
                    "re": s["sphere"].re,
                    "rad": s["sphere"].rad,
                    "mult": s["mult"],
                    "mu": s["mu"],
                    "flags": s["flags"],
                }
                for s in self.spheres
            ],
            "resolvent_certificates": [
                {"q": list(q), "mu": m} for q, m in self.resolvent_certificates
            ],
        }


def spectrum_report(a, tol=None):
    a = as_matrix(a)
    if tol is None:
        tol = default_tol(a)
    nrm = op_norm(a)
    spheres = []
    for cls, mult in point_spectrum(a):
        c = classify(a, cls.representative(), tol)
        spheres.append({"sphere": cls, "mult": mult, "flags": c.flags(), "mu": c.mu})
    # |q| > ||A|| is always resolvent; certify two such points
    far = nrm + 1.0
    certs = []
    for q in (Quaternion(far), Quaternion(0.0, far)):
        certs.append((q, mu(a, q)))
    return SpectrumReport(spheres, certs, tol)


def _grid_shape(grid):
    if isinstance(grid, int):
        return grid, grid
    n_re, n_rad = grid
    return int(n_re), int(n_rad)


def scan(a, re_range, rad_range, grid):
    """mu on a grid of canonical representatives ``re + rad i``.

    Returns ``(res, rads, values)`` with ``values[i, j] = mu(A, res[i] + rads[j] i)``;
    row-major order is ``re`` outer, ``rad`` inner.
    """
    a = as_matrix(a)
    n_re, n_rad = _grid_shape(grid)
    if n_re < 2 or n_rad < 2:
        raise ValueError("grid needs at least 2 points per axis")
    if rad_range[0] < 0 or rad_range[1] < rad_range[0] or re_range[1] < re_range[0]:
        raise ValueError("invalid scan range")
    res = np.linspace(re_range[0], re_range[1], n_re)
    rads = np.linspace(rad_range[0], rad_range[1], n_rad)
    rr, dd = np.meshgrid(res, rads, indexing="ij")
    values = _kernels.mu_grid(chi(a), rr.ravel(), dd.ravel()).reshape(n_re, n_rad)
    return res, rads, values


def spectral_radius(a):
    spheres = point_spectrum(a)
    return max((np.hypot(c.re, c.rad) for c, _ in spheres), default=0.0)
