"""Structured right-linear operators on l2(N, H).

The class is generated by the unilateral shift ``S``, its adjoint ``S'``,
the identity, eventually-constant diagonals and finitely supported
finite-rank patches, closed under sums, products and integer powers.
Every member is banded and becomes Toeplitz (constant along diagonals)
beyond a computable stabilization index, so any finite section can be
assembled exactly.

Scalars act by left multiplication in the standard basis and are stored as
diagonals with an empty prefix.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from . import _kernels
from .errors import TruncationError
from .quaternion import as_quaternion, conj_arr, hamilton, qinv

EXPAND_LIMIT = 256


def _qtuple(q):
    return tuple(float(x) for x in as_quaternion(q))


def _qabs(t):
    return math.sqrt(sum(x * x for x in t))


def _fmt_real(x):
    x = float(x)
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _fmt_q(t):
    if not any(t[1:]):
        return _fmt_real(t[0])
    return "q(" + ",".join(_fmt_real(x) for x in t) + ")"


class Operator:
    """Base class; subclasses are immutable expression-tree nodes."""

    # structural data -----------------------------------------------------
    @property
    def bands(self):
        """(lower, upper) band widths."""
        raise NotImplementedError

    @property
    def stabilization(self):
        """Index m with T_ij = T_{i+1, j+1} whenever min(i, j) >= m."""
        raise NotImplementedError

    def adjoint(self):
        raise NotImplementedError

    def block(self, rows, cols):
        """Exact top-left ``rows x cols`` section as a quaternion matrix."""
        raise NotImplementedError

    def norm_bound(self):
        """A certified upper bound for the operator norm."""
        raise NotImplementedError

    @property
    def compact(self):
        return False

    def values(self):
        """All quaternion entries that appear in the atoms of the tree."""
        return []

    def has_sum(self):
        return False

    def monomials(self):
        """Expansion into ``[(real coefficient, word of atoms)]`` or ``None``.

        Real scalars are pulled into the coefficient and identities drop out;
        ``None`` means the expansion exceeds ``EXPAND_LIMIT`` terms.
        """
        raise NotImplementedError

    # algebra -------------------------------------------------------------
    def __add__(self, other):
        other = as_operator(other)
        return Sum(_flat(self, Sum) + _flat(other, Sum))

    def __radd__(self, other):
        return as_operator(other) + self

    def __neg__(self):
        if isinstance(self, Diagonal):
            neg = lambda t: tuple(-x for x in t)
            return Diagonal(tuple(neg(p) for p in self.prefix), neg(self.limit))
        return scalar(-1.0) * self

    def __sub__(self, other):
        return self + (-as_operator(other))

    def __rsub__(self, other):
        return as_operator(other) - self

    def __mul__(self, other):
        other = as_operator(other)
        return Product(_flat(self, Product) + _flat(other, Product))

    def __rmul__(self, other):
        return as_operator(other) * self

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("powers must be nonnegative integers")
        if k == 0:
            return Identity()
        if k == 1:
            return self
        return Power(self, k)

    def truncate(self, rows, cols):
        return truncate(self, rows, cols)


def _flat(op, cls):
    if isinstance(op, cls):
        return op.terms if cls is Sum else op.factors
    return (op,)


def as_operator(x):
    if isinstance(x, Operator):
        return x
    return scalar(x)


def _mono_product(ms1, ms2):
    if ms1 is None or ms2 is None or len(ms1) * len(ms2) > EXPAND_LIMIT:
        return None
    return [(c1 * c2, w1 + w2) for c1, w1 in ms1 for c2, w2 in ms2]


@dataclass(frozen=True)
class Shift(Operator):
    """Forward shift: e_k -> e_{k+1}."""

    @property
    def bands(self):
        return (1, 0)

    @property
    def stabilization(self):
        return 0

    def adjoint(self):
        return AdjointShift()

    def block(self, rows, cols):
        m = np.zeros((rows, cols, 4))
        k = np.arange(1, min(rows, cols + 1))
        m[k, k - 1, 0] = 1.0
        return m

    def norm_bound(self):
        return 1.0

    def monomials(self):
        return [(1.0, (self,))]

    def __str__(self):
        return "S"


@dataclass(frozen=True)
class AdjointShift(Operator):
    """Backward shift: e_0 -> 0, e_k -> e_{k-1}."""

    @property
    def bands(self):
        return (0, 1)

    @property
    def stabilization(self):
        return 0

    def adjoint(self):
        return Shift()

    def block(self, rows, cols):
        m = np.zeros((rows, cols, 4))
        k = np.arange(0, min(rows, cols - 1))
        m[k, k + 1, 0] = 1.0
        return m

    def norm_bound(self):
        return 1.0

    def monomials(self):
        return [(1.0, (self,))]

    def __str__(self):
        return "S'"


@dataclass(frozen=True)
class Identity(Operator):
    @property
    def bands(self):
        return (0, 0)

    @property
    def stabilization(self):
        return 0

    def adjoint(self):
        return self

    def block(self, rows, cols):
        m = np.zeros((rows, cols, 4))
        k = np.arange(min(rows, cols))
        m[k, k, 0] = 1.0
        return m

    def norm_bound(self):
        return 1.0

    def monomials(self):
        return [(1.0, ())]

    def values(self):
        return [(1.0, 0.0, 0.0, 0.0)]

    def __str__(self):
        return "I"


@dataclass(frozen=True)
class Diagonal(Operator):
    """``diag(prefix[0], ..., prefix[m-1], limit, limit, ...)``."""

    prefix: tuple
    limit: tuple
    name: str = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(_qtuple(p) for p in self.prefix))
        object.__setattr__(self, "limit", _qtuple(self.limit))

    @property
    def is_scalar(self):
        return not self.prefix

    @property
    def is_real_scalar(self):
        return self.is_scalar and not any(self.limit[1:])

    @property
    def bands(self):
        return (0, 0)

    @property
    def stabilization(self):
        return len(self.prefix)

    @property
    def compact(self):
        return not any(self.limit)

    def entries(self, n):
        out = np.empty((n, 4))
        m = min(n, len(self.prefix))
        if m:
            out[:m] = np.asarray(self.prefix[:m])
        out[m:] = np.asarray(self.limit)
        return out

    def magnitudes(self):
        return [_qabs(p) for p in self.prefix] + [_qabs(self.limit)]

    def adjoint(self):
        c = lambda t: (t[0], -t[1], -t[2], -t[3])
        name = None if self.name is None else self.name + "'"
        return Diagonal(tuple(c(p) for p in self.prefix), c(self.limit), name)

    def inverse_entries(self):
        """Entrywise inverse with zero entries left at zero."""
        inv = lambda t: _qtuple(qinv(t)) if any(t) else (0.0, 0.0, 0.0, 0.0)
        return Diagonal(tuple(inv(p) for p in self.prefix), inv(self.limit))

    def block(self, rows, cols):
        m = np.zeros((rows, cols, 4))
        n = min(rows, cols)
        k = np.arange(n)
        m[k, k] = self.entries(n)
        return m

    def norm_bound(self):
        return max(self.magnitudes())

    def values(self):
        return list(self.prefix) + [self.limit]

    def monomials(self):
        if self.is_real_scalar:
            return [(self.limit[0], ())]
        return [(1.0, (self,))]

    def __str__(self):
        if self.is_scalar:
            return _fmt_q(self.limit)
        if self.name is not None:
            return f"D({self.name})"
        return "D[" + ", ".join(_fmt_q(p) for p in self.prefix) + "; " + _fmt_q(self.limit) + "]"


def scalar(q):
    return Diagonal((), _qtuple(q))


@dataclass(frozen=True)
class FiniteVector:
    """Finitely supported vector of l2(N, H)."""

    support: tuple
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(int(i) for i in self.support))
        object.__setattr__(self, "values", tuple(_qtuple(v) for v in self.values))
        if len(self.support) != len(self.values):
            raise ValueError("support and values differ in length")
        if any(i < 0 for i in self.support):
            raise ValueError("support indices must be nonnegative")

    @property
    def length(self):
        return max(self.support) + 1 if self.support else 0

    def dense(self, n):
        out = np.zeros((n, 4))
        for i, v in zip(self.support, self.values):
            if i < n:
                out[i] += v
        return out

    @classmethod
    def from_dense(cls, arr):
        arr = np.asarray(arr, dtype=float)
        idx = [i for i in range(arr.shape[0]) if np.any(arr[i])]
        return cls(tuple(idx), tuple(tuple(arr[i]) for i in idx))


@dataclass(frozen=True)
class FiniteRank(Operator):
    """``phi -> sum_i u_i <v_i|phi>`` for finitely supported ``u_i, v_i``."""

    pairs: tuple
    name: str = field(default=None, compare=False)

    @property
    def size(self):
        return max([max(u.length, v.length) for u, v in self.pairs], default=0)

    @property
    def bands(self):
        lower = upper = 0
        for u, v in self.pairs:
            if u.support and v.support:
                lower = max(lower, max(u.support) - min(v.support))
                upper = max(upper, max(v.support) - min(u.support))
        return (lower, upper)

    @property
    def stabilization(self):
        return self.size

    @property
    def compact(self):
        return True

    def adjoint(self):
        name = None if self.name is None else self.name + "'"
        return FiniteRank(tuple((v, u) for u, v in self.pairs), name)

    def dense(self, rows, cols):
        m = np.zeros((rows, cols, 4))
        for u, v in self.pairs:
            ud = u.dense(rows)
            vd = conj_arr(v.dense(cols))
            m += hamilton(ud[:, None, :], vd[None, :, :])
        return m

    def block(self, rows, cols):
        return self.dense(rows, cols)

    def norm_bound(self):
        n = self.size
        return float(np.sqrt(np.sum(np.square(self.dense(n, n))))) if n else 0.0

    def values(self):
        vals = []
        for u, v in self.pairs:
            vals.extend(u.values)
            vals.extend(v.values)
        return vals

    def monomials(self):
        return [(1.0, (self,))]

    def __str__(self):
        return f"F({self.name})" if self.name is not None else f"F[rank<={len(self.pairs)}]"


@dataclass(frozen=True)
class Sum(Operator):
    terms: tuple

    @property
    def bands(self):
        bs = [t.bands for t in self.terms]
        return (max(b[0] for b in bs), max(b[1] for b in bs))

    @property
    def stabilization(self):
        return max(t.stabilization for t in self.terms)

    @property
    def compact(self):
        return all(t.compact for t in self.terms)

    def adjoint(self):
        return Sum(tuple(t.adjoint() for t in self.terms))

    def block(self, rows, cols):
        m = np.zeros((rows, cols, 4))
        for t in self.terms:
            m += t.block(rows, cols)
        return m

    def norm_bound(self):
        return sum(t.norm_bound() for t in self.terms)

    def values(self):
        return [v for t in self.terms for v in t.values()]

    def has_sum(self):
        return True

    def monomials(self):
        out = []
        for t in self.terms:
            ms = t.monomials()
            if ms is None:
                return None
            out.extend(ms)
            if len(out) > EXPAND_LIMIT:
                return None
        return out

    def __str__(self):
        return " + ".join(str(t) for t in self.terms)


def _paren(op):
    s = str(op)
    return f"({s})" if isinstance(op, Sum) else s


@dataclass(frozen=True)
class Product(Operator):
    factors: tuple

    @property
    def bands(self):
        bs = [f.bands for f in self.factors]
        return (sum(b[0] for b in bs), sum(b[1] for b in bs))

    @property
    def stabilization(self):
        m = self.factors[-1].stabilization
        upper_right = self.factors[-1].bands[1]
        for f in reversed(self.factors[:-1]):
            m = max(m, f.stabilization) + max(f.bands[0], upper_right)
            upper_right += f.bands[1]
        return m

    @property
    def compact(self):
        return any(f.compact for f in self.factors)

    def adjoint(self):
        return Product(tuple(f.adjoint() for f in reversed(self.factors)))

    def block(self, rows, cols):
        return _product_block(self.factors, rows, cols)

    def norm_bound(self):
        return math.prod(f.norm_bound() for f in self.factors)

    def values(self):
        return [v for f in self.factors for v in f.values()]

    def has_sum(self):
        return any(f.has_sum() for f in self.factors)

    def monomials(self):
        ms = [(1.0, ())]
        for f in self.factors:
            ms = _mono_product(ms, f.monomials())
            if ms is None:
                return None
        return ms

    def __str__(self):
        return " * ".join(_paren(f) for f in self.factors)


def _product_block(factors, rows, cols):
    if len(factors) == 1:
        return factors[0].block(rows, cols)
    head, rest = factors[0], factors[1:]
    lower_rest = sum(f.bands[0] for f in rest)
    inner = min(rows + head.bands[1], cols + lower_rest)
    return _kernels.qmatmul(head.block(rows, inner), _product_block(rest, inner, cols))


@dataclass(frozen=True)
class Power(Operator):
    base: Operator
    exp: int

    @property
    def bands(self):
        p, u = self.base.bands
        return (p * self.exp, u * self.exp)

    @property
    def stabilization(self):
        return Product((self.base,) * self.exp).stabilization

    @property
    def compact(self):
        return self.base.compact

    def adjoint(self):
        return Power(self.base.adjoint(), self.exp)

    def block(self, rows, cols):
        return _product_block((self.base,) * self.exp, rows, cols)

    def norm_bound(self):
        return self.base.norm_bound() ** self.exp

    def values(self):
        return self.base.values()

    def has_sum(self):
        return self.base.has_sum()

    def monomials(self):
        return Product((self.base,) * self.exp).monomials()

    def __str__(self):
        b = self.base
        s = str(b)
        if not isinstance(b, (Shift, AdjointShift, Identity)) and not (isinstance(b, Diagonal) and b.name):
            s = f"({s})"
        return f"{s}^{self.exp}"


def truncate(op, rows, cols):
    """Exact section ``[T_ij]`` for ``i < rows``, ``j < cols``.

    Both sizes must cover the stabilization index plus the band widths so
    the section contains the whole non-Toeplitz head of the operator.
    """
    p, u = op.bands
    need = op.stabilization + p + u
    if rows < need or cols < need:
        raise TruncationError(f"section {rows}x{cols} is smaller than the required {need}")
    return op.block(rows, cols)


def word_to_operator(word):
    if not word:
        return Identity()
    if len(word) == 1:
        return word[0]
    return Product(tuple(word))


def lift_matrix(a):
    """``I + F`` acting as the quaternion matrix ``a`` on the first n coordinates."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    delta = a.copy()
    delta[np.arange(n), np.arange(n), 0] -= 1.0
    pairs = []
    for row in range(n):
        if not np.any(delta[row]):
            continue
        u = FiniteVector((row,), ((1.0, 0.0, 0.0, 0.0),))
        v = FiniteVector.from_dense(conj_arr(delta[row]))
        pairs.append((u, v))
    if not pairs:
        return Identity()
    return Identity() + FiniteRank(tuple(pairs))


S = Shift()
S_ADJ = AdjointShift()
IDENTITY = Identity()
