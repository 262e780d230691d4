"""Fredholm data of structured operators.

Two independent routes:

* a rule-based calculus over the expression tree (index additivity for
  products, invariance under compact and small-norm perturbations,
  factorization of real polynomials in one operator), which also tracks
  certified lower bounds ``||T phi|| >= c ||phi||``;
* a truncation oracle counting near-zero singular values of rectangular
  sections of ``T`` and ``T^dag`` at several sizes.

:func:`fredholm_data` combines them and raises when they disagree.
"""

from dataclasses import dataclass, field
from itertools import combinations
import math

import numpy as np

from .errors import ConflictError, NotFredholm, NumericalError, UnsupportedShape
from .operators import (
    AdjointShift, Diagonal, FiniteRank, Identity, Power, Product, Shift, Sum,
    scalar, word_to_operator,
)
from .qmatrix import rank, singular_values
from .quaternion import slice_unit

DELTA = 1e-6
SIZES = (64, 128, 256)
GAP_DECAY = 0.5
MARGIN_SLACK = 1e-9
PARAMETRIX_TOL = 1e-8
MAX_SPLIT_TERMS = 5

FREDHOLM = "Fredholm"
LEFT_SEMI = "LeftSemiOnly"
RIGHT_SEMI = "RightSemiOnly"
NEITHER = "Neither"


class _Undecidable:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Undecidable"

    def __bool__(self):
        return False


Undecidable = _Undecidable()


@dataclass(frozen=True)
class Facts:
    """What the rules certify about an operator.

    ``fredholm`` is True/False when decided and None otherwise; ``lower`` and
    ``lower_adj`` are certified bounds below for ``T`` and ``T^dag``.
    """

    fredholm: object
    index: object
    lower: object
    lower_adj: object
    norm: float
    compact: bool = False


def _undecided(norm):
    return Facts(None, None, None, None, norm)


def _beats(small, big):
    return big is not None and small * (1.0 + MARGIN_SLACK) + 1e-12 < big


def facts(op):
    """Rule-based analysis of ``op``; see :class:`Facts`."""
    if isinstance(op, Shift):
        return Facts(True, -1, 1.0, None, 1.0)
    if isinstance(op, AdjointShift):
        return Facts(True, 1, None, 1.0, 1.0)
    if isinstance(op, Identity):
        return Facts(True, 0, 1.0, 1.0, 1.0)
    if isinstance(op, Diagonal):
        mags = op.magnitudes()
        nrm = max(mags)
        if op.compact:
            return Facts(False, None, None, None, nrm, True)
        low = min(mags)
        low = low if low > 0 else None
        return Facts(True, 0, low, low, nrm)
    if isinstance(op, FiniteRank):
        return Facts(False, None, None, None, op.norm_bound(), True)
    if isinstance(op, Product):
        return _facts_product([facts(f) for f in op.factors])
    if isinstance(op, Power):
        return _facts_product([facts(op.base)] * op.exp)
    if isinstance(op, Sum):
        return _facts_sum(list(op.terms))
    raise TypeError(f"not a structured operator: {op!r}")


def _facts_product(fs):
    nrm = math.prod(f.norm for f in fs)
    if any(f.compact for f in fs):
        # a compact operator on an infinite-dimensional space is never Fredholm
        return Facts(False, None, None, None, nrm, True)
    if all(f.fredholm is True for f in fs):
        low = math.prod(f.lower for f in fs) if all(f.lower for f in fs) else None
        low_adj = math.prod(f.lower_adj for f in fs) if all(f.lower_adj for f in fs) else None
        return Facts(True, sum(f.index for f in fs), low, low_adj, nrm)
    bad = [f for f in fs if f.fredholm is not True]
    if len(bad) == 1 and bad[0].fredholm is False:
        # AB Fredholm with A Fredholm forces B Fredholm, and symmetrically
        return Facts(False, None, None, None, nrm)
    return _undecided(nrm)


def _perturbed(base, extra_norm):
    """Facts of ``A + B`` from facts of ``A`` and ``||B|| <= extra_norm``."""
    low = base.lower - extra_norm if _beats(extra_norm, base.lower) else None
    low_adj = base.lower_adj - extra_norm if _beats(extra_norm, base.lower_adj) else None
    return low, low_adj


def _facts_sum(terms, expand=True):
    flat = []
    for t in terms:
        flat.extend(t.terms if isinstance(t, Sum) else (t,))
    tf = [facts(t) for t in flat]
    nrm = sum(f.norm for f in tf)
    main = [(t, f) for t, f in zip(flat, tf) if not f.compact]
    compact_norm = sum(f.norm for f in tf if f.compact)
    if not main:
        return Facts(False, None, None, None, nrm, True)
    core = _facts_main(main, expand)
    if compact_norm == 0.0 or core.fredholm is not True:
        # index and Fredholmness are unchanged by compact perturbations
        return Facts(core.fredholm, core.index, core.lower if compact_norm == 0.0 else None,
                     core.lower_adj if compact_norm == 0.0 else None, nrm)
    low, low_adj = _perturbed(core, compact_norm)
    return Facts(True, core.index, low, low_adj, nrm)


def _facts_main(main, expand):
    if len(main) == 1:
        return main[0][1]
    norms = [f.norm for _, f in main]
    total = sum(norms)
    # small-norm perturbation of a single bounded-below term
    for k, (_, f) in enumerate(main):
        if f.fredholm is not True:
            continue
        rest = total - norms[k]
        low, low_adj = _perturbed(f, rest)
        if low is not None or low_adj is not None:
            return Facts(True, f.index, low, low_adj, total)
    if expand:
        poly = _facts_polynomial([t for t, _ in main])
        if poly is not None:
            return poly
    # small-norm perturbation of a partial sum
    if len(main) <= MAX_SPLIT_TERMS:
        for size in range(2, len(main)):
            for idx in combinations(range(len(main)), size):
                head = _facts_sum([main[i][0] for i in idx], expand=False)
                if head.fredholm is not True:
                    continue
                rest = total - sum(norms[i] for i in idx)
                low, low_adj = _perturbed(head, rest)
                if low is not None or low_adj is not None:
                    return Facts(True, head.index, low, low_adj, total)
    return _undecided(total)


def _facts_polynomial(terms):
    """Factor ``sum c_k W^k`` (real ``c_k``) over the complex slice of ``W``."""
    monos = []
    for t in terms:
        ms = t.monomials()
        if ms is None:
            return None
        monos.extend(ms)
    compact_norm = 0.0
    coeffs = {}
    for c, word in monos:
        if any(a.compact for a in word):
            compact_norm += abs(c) * math.prod(a.norm_bound() for a in word)
            continue
        coeffs[word] = coeffs.get(word, 0.0) + c
    coeffs = {w: c for w, c in coeffs.items() if c != 0.0}
    words = [w for w in coeffs if w]
    if not words:
        const = coeffs.get((), 0.0)
        if const == 0.0:
            return Facts(False, None, None, None, compact_norm, True)
        core = facts(scalar(const))
        return _with_compact(core, compact_norm)
    base = min(words, key=len)
    degree = {}
    for w in coeffs:
        k, rem = divmod(len(w), len(base))
        if rem or w != base * k:
            return None
        degree[k] = coeffs[w]
    d = max(degree)
    if d < 2 and compact_norm == 0.0:
        return None  # already a two-term sum; nothing left to factor
    base_op = word_to_operator(base)
    if d < 2:
        core = _facts_sum([scalar(degree[1]) * base_op] + ([scalar(degree[0])] if 0 in degree else []),
                          expand=False)
        return _with_compact(core, compact_norm)
    unit = slice_unit(base_op.values())
    if unit is None:
        return None
    poly = [degree.get(k, 0.0) for k in range(d, -1, -1)]
    roots = np.roots(poly)
    if len(roots) != d:
        return None
    factors = [scalar(poly[0])]
    for lam in roots:
        q = np.array([lam.real, 0.0, 0.0, 0.0]) + lam.imag * unit
        factors.append(base_op - scalar(tuple(q)))
    core = _facts_product([_facts_sum([f], expand=False) if isinstance(f, Sum) else facts(f)
                           for f in factors])
    return _with_compact(core, compact_norm)


def _with_compact(core, compact_norm):
    if compact_norm == 0.0 or core.fredholm is not True:
        return core
    low, low_adj = _perturbed(core, compact_norm)
    return Facts(True, core.index, low, low_adj, core.norm + compact_norm)


def index_symbolic(op):
    """Index from the rewriting rules, or ``Undecidable``."""
    f = facts(op)
    return f.index if f.fredholm is True else Undecidable


# -- truncation oracle --------------------------------------------------------

@dataclass(frozen=True)
class _Side:
    counts: tuple
    gaps: tuple

    @property
    def constant(self):
        return len(set(self.counts)) == 1

    @property
    def growing(self):
        return all(b > a for a, b in zip(self.counts, self.counts[1:]))

    @property
    def gap_decay(self):
        return self.gaps[-1] < GAP_DECAY * self.gaps[0]

    @property
    def settled(self):
        return self.constant and not self.gap_decay


@dataclass(frozen=True)
class OracleResult:
    dim_ker: int
    dim_coker: int
    stabilized: bool
    sizes: tuple
    ker: _Side = field(repr=False)
    coker: _Side = field(repr=False)

    def __iter__(self):
        return iter((self.dim_ker, self.dim_coker, self.stabilized))

    @property
    def min_gap(self):
        return min(self.ker.gaps + self.coker.gaps)


def _side(op, sizes, delta):
    lower = op.bands[0]
    counts, gaps = [], []
    for n in sizes:
        sv = singular_values(op.block(n + lower, n))[::-1]
        thr = delta * sv[-1]
        c = int(np.sum(sv <= thr))
        counts.append(c)
        gaps.append(float(sv[c]) if c < len(sv) else 0.0)
    return _Side(tuple(counts), tuple(gaps))


def kernel_dims_oracle(op, delta=DELTA, sizes=SIZES):
    """Estimate ``dim ker`` and ``dim coker`` from rectangular sections.

    For each size N the ``(N + p) x N`` section of T (p = lower band width)
    is the exact restriction of T to the first N coordinates.  Near-kernel
    singular values (below ``delta`` times the section norm) are counted;
    the estimate is accepted only if the counts agree at every size and the
    smallest remaining singular value does not decay with N.  The cokernel
    is the kernel of the adjoint expression.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    sizes = tuple(sorted(sizes))
    ker = _side(op, sizes, delta)
    coker = _side(op.adjoint(), sizes, delta)
    stabilized = ker.settled and coker.settled
    return OracleResult(ker.counts[-1], coker.counts[-1], stabilized, sizes, ker, coker)


# -- combination --------------------------------------------------------------

@dataclass(frozen=True)
class FredholmData:
    dim_ker: object      # int or math.inf
    dim_coker: object
    index: object        # int or None
    status: str
    method: str
    facts: Facts = field(default=None, repr=False, compare=False)
    oracle: OracleResult = field(default=None, repr=False, compare=False)

    def to_dict(self):
        return {
            "dim_ker": self.dim_ker,
            "dim_coker": self.dim_coker,
            "index": self.index,
            "status": self.status,
            "method": self.method,
        }


def fredholm_data(op, delta=DELTA, sizes=SIZES):
    f = facts(op)
    orc = kernel_dims_oracle(op, delta, sizes)
    if f.fredholm is True:
        if orc.stabilized:
            if orc.dim_ker - orc.dim_coker != f.index:
                raise ConflictError(
                    f"symbolic index {f.index} but oracle dims ({orc.dim_ker}, {orc.dim_coker}) for {op}")
            return FredholmData(orc.dim_ker, orc.dim_coker, f.index, FREDHOLM, "both-agree", f, orc)
        if f.lower:
            dims = (0, -f.index)
        elif f.lower_adj:
            dims = (f.index, 0)
        else:
            k = max(orc.dim_ker, f.index, 0)
            dims = (k, k - f.index)
        return FredholmData(dims[0], dims[1], f.index, FREDHOLM, "symbolic", f, orc)
    if f.fredholm is False and f.compact:
        # compact members of the class have infinite kernel and cokernel
        return FredholmData(math.inf, math.inf, None, NEITHER, "symbolic", f, orc)
    if orc.stabilized:
        if f.fredholm is False:
            raise ConflictError(f"rules exclude Fredholmness of {op} but the oracle settled")
        return FredholmData(orc.dim_ker, orc.dim_coker, orc.dim_ker - orc.dim_coker, FREDHOLM,
                            "oracle", f, orc)
    method = "symbolic" if f.fredholm is False else "oracle"
    ker, coker = orc.ker, orc.coker
    if ker.settled and coker.growing:
        return FredholmData(orc.dim_ker, math.inf, None, LEFT_SEMI, method, f, orc)
    if coker.settled and ker.growing:
        return FredholmData(math.inf, orc.dim_coker, None, RIGHT_SEMI, method, f, orc)
    if f.fredholm is False or ker.growing or coker.growing or ker.gap_decay or coker.gap_decay:
        return FredholmData(math.inf if ker.growing else orc.dim_ker,
                            orc.dim_coker if coker.settled else math.inf, None, NEITHER, method, f, orc)
    raise NumericalError(f"oracle did not settle for {op}: kernel counts {ker.counts}, "
                         f"cokernel counts {coker.counts}")


def is_weyl(op, **kw):
    d = fredholm_data(op, **kw)
    return d.status == FREDHOLM and d.index == 0


# -- parametrix ---------------------------------------------------------------

def _pseudo_inverse(op):
    if isinstance(op, Shift):
        return AdjointShift()
    if isinstance(op, AdjointShift):
        return Shift()
    if isinstance(op, Identity):
        return op
    if isinstance(op, Diagonal):
        return op.inverse_entries()
    if isinstance(op, Product):
        return Product(tuple(_pseudo_inverse(f) for f in reversed(op.factors)))
    if isinstance(op, Power):
        return Power(_pseudo_inverse(op.base), op.exp)
    raise UnsupportedShape(f"no parametrix rule for {op}")


@dataclass(frozen=True)
class ParametrixCertificate:
    block_size: int
    checked_size: int
    max_outside: float
    rank_left: int      # rank of P T - I
    rank_right: int     # rank of T P - I


def _residual_check(residual):
    b = residual.stabilization
    p, u = residual.bands
    size = b + p + u + 4
    m = residual.block(size, size)
    outside = m.copy()
    outside[:b, :b] = 0.0
    max_out = float(np.max(np.abs(outside), initial=0.0))
    r = rank(m[:b, :b]) if b and np.any(np.abs(m[:b, :b]) > PARAMETRIX_TOL) else 0
    return b, size, max_out, r


def parametrix(op):
    """Approximate inverse P with ``P T - I`` and ``T P - I`` of finite rank.

    The residuals vanish beyond their stabilization index b because their
    Toeplitz tails are zero; the certificate checks every entry of a section
    that covers the block plus one full band width on each side.
    """
    if op.has_sum() or isinstance(op, (Sum, FiniteRank)):
        raise UnsupportedShape("parametrix needs a product of atoms")
    data = fredholm_data(op)
    if data.status != FREDHOLM:
        raise NotFredholm(f"{op} is not Fredholm")
    p_op = _pseudo_inverse(op)
    bl, sl, ml, rl = _residual_check(p_op * op - Identity())
    br, sr, mr, rr = _residual_check(op * p_op - Identity())
    cert = ParametrixCertificate(max(bl, br), max(sl, sr), max(ml, mr), rl, rr)
    if cert.max_outside > PARAMETRIX_TOL:
        raise NumericalError(f"parametrix residual {cert.max_outside:.3g} outside the certified block")
    return p_op, cert
