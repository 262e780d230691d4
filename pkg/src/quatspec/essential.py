"""Essential S-spectrum at sampled points.

Membership is decided pointwise through the pseudo-resolvent
``R_q(T) = T^2 - 2 Re(q) T + |q|^2 I``, which has real coefficients and so
stays inside the structured class.  Regions are never represented; claims
such as "the unit sphere is essential for S" are checked over sample grids.
"""

from dataclasses import dataclass, field

from .errors import NonCompactPerturbation
from .fredholm import FREDHOLM, LEFT_SEMI, RIGHT_SEMI, fredholm_data
from .operators import Operator, scalar
from .quaternion import SphereClass, as_quaternion, sphere_rep

RESOLVENT = "resolvent"
ESSENTIAL = "essential"
SIGMA_K = "sigma_k"

# smallest admissible near-kernel gap for an oracle-only invertibility certificate
GAP_FLOOR = 1e-4


def pseudo_resolvent_op(op, q):
    """``T^2 - 2 Re(q) T + |q|^2 I`` as an expression tree."""
    q = as_quaternion(q)
    q0 = q.q0
    r2 = abs(q) ** 2
    out = op ** 2
    if q0 != 0.0:
        out = out + scalar(-2.0 * q0) * op
    if r2 != 0.0:
        out = out + scalar(r2)
    return out


@dataclass(frozen=True)
class EssentialVerdict:
    q: tuple
    sphere: SphereClass
    in_sigma_e: bool
    left_only: bool          # left essential but right semi-Fredholm
    right_only: bool         # right essential but left semi-Fredholm
    k: object                # index of R_q(T) when Fredholm and q is in the spectrum
    verdict: str
    method: str
    data: object = field(default=None, repr=False, compare=False)

    def to_dict(self):
        return {
            "q": [float(x) for x in self.q],
            "sphere": {"re": self.sphere.re, "rad": self.sphere.rad},
            "verdict": self.verdict,
            "k": self.k,
            "method": self.method,
        }


def _invertible(data):
    """Certify bounded invertibility of a Fredholm R_q with dims (0, 0)."""
    if data.index != 0 or data.dim_ker != 0 or data.dim_coker != 0:
        return False
    f = data.facts
    if f is not None and f.lower and f.lower_adj:
        return True
    orc = data.oracle
    return orc is not None and orc.stabilized and orc.min_gap >= GAP_FLOOR


def is_fredholm_at(op, q, **kw):
    """Atkinson test at ``q``: essential iff ``R_q(T)`` is not Fredholm."""
    q = as_quaternion(q)
    sphere = sphere_rep(q)
    data = fredholm_data(pseudo_resolvent_op(op, q), **kw)
    if data.status != FREDHOLM:
        return EssentialVerdict(tuple(q), sphere, True,
                                data.status == RIGHT_SEMI, data.status == LEFT_SEMI,
                                None, ESSENTIAL, data.method, data)
    if data.index == 0 and _invertible(data):
        return EssentialVerdict(tuple(q), sphere, False, False, False,
                                None, RESOLVENT, data.method, data)
    return EssentialVerdict(tuple(q), sphere, False, False, False,
                            data.index, SIGMA_K, data.method, data)


def sigma_partition_at(op, q, **kw):
    """``"resolvent"``, ``"essential"`` or ``("sigma_k", k)`` at ``q``."""
    v = is_fredholm_at(op, q, **kw)
    if v.verdict == SIGMA_K:
        return (SIGMA_K, v.k)
    return v.verdict


@dataclass(frozen=True)
class EssentialComparison:
    samples: int
    agreements: int
    disagreements: list

    @property
    def ok(self):
        return not self.disagreements


def compare_essential(op, k_op, samples, **kw):
    """Check that adding the compact ``k_op`` leaves essential membership unchanged."""
    if not isinstance(k_op, Operator):
        k_op = scalar(k_op)
    if not k_op.compact:
        raise NonCompactPerturbation(f"{k_op} is not compact")
    perturbed = op + k_op
    bad = []
    for q in samples:
        a = is_fredholm_at(op, q, **kw)
        b = is_fredholm_at(perturbed, q, **kw)
        if a.in_sigma_e != b.in_sigma_e:
            bad.append({"q": list(a.q), "base": a.verdict, "perturbed": b.verdict})
    return EssentialComparison(len(samples), len(samples) - len(bad), bad)

