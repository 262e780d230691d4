import numpy as np
import pytest

from quatspec.errors import ExprSyntaxError, TruncationError, UnknownName
from quatspec.operators import IDENTITY, S, S_ADJ, Diagonal, FiniteRank, FiniteVector, lift_matrix
from quatspec.parser import load_env, parse_expr
from quatspec.qmatrix import identity

ENV = {
    "diagonals": {"d": {"prefix": [[0, 1, 0, 0]], "limit": [1, 0, 0, 0]}},
    "patches": {"p1": {"pairs": [{"u": {"support": [0], "values": [[1, 0, 0, 0]]},
                                  "v": {"support": [1], "values": [[0, 0, 1, 0]]}}]}},
}


def real_part(m):
    return m[..., 0]


def test_truncations():
    assert np.array_equal(real_part(S.truncate(3, 3)), np.eye(3, k=-1))
    assert np.array_equal(real_part(S_ADJ.truncate(3, 3)), np.eye(3, k=1))
    d = parse_expr("D(d)", ENV).truncate(3, 3)
    assert np.allclose(d[0, 0], [0, 1, 0, 0]) and np.allclose(d[1, 1], [1, 0, 0, 0])
    with pytest.raises(TruncationError):
        (S ** 3 * S_ADJ ** 3).truncate(2, 2)


def test_bands_and_stabilization():
    assert (S ** 3).bands == (3, 0)
    op = parse_expr("S * (I + F(p1))", ENV)
    assert op.bands == (1, 1)
    assert op.stabilization >= 2


def test_shift_relations():
    n = 6
    assert np.array_equal((S_ADJ * S).block(n, n), identity(n))
    ss = (S * S_ADJ).block(n, n)
    expected = identity(n)
    expected[0, 0, 0] = 0.0
    assert np.array_equal(ss, expected)


def test_product_block_is_exact(rng):
    d = Diagonal(tuple(map(tuple, rng.standard_normal((3, 4)))), tuple(rng.standard_normal(4)))
    op = S * d * S_ADJ * d
    n = 12
    big = S.block(n, n + 2)
    from quatspec.qmatrix import matmul
    ref = matmul(matmul(matmul(big, d.block(n + 2, n + 2)), S_ADJ.block(n + 2, n + 2)),
                 d.block(n + 2, n))
    assert np.allclose(op.block(n, n), ref)


def test_finite_rank_adjoint(rng):
    u = FiniteVector((0, 2), tuple(map(tuple, rng.standard_normal((2, 4)))))
    v = FiniteVector((1,), (tuple(rng.standard_normal(4)),))
    f = FiniteRank(((u, v),))
    m = f.block(4, 4)
    ma = f.adjoint().block(4, 4)
    assert np.allclose(ma, np.swapaxes(m, 0, 1) * [1, -1, -1, -1])
    assert f.compact and not (IDENTITY + f).compact


def test_lift_matrix(rng):
    a = rng.standard_normal((3, 3, 4))
    lifted = lift_matrix(a)
    block = lifted.block(5, 5)
    assert np.allclose(block[:3, :3], a)
    assert np.allclose(block[3:, 3:], identity(2))


def test_parse_errors():
    with pytest.raises(ExprSyntaxError) as exc:
        parse_expr("S + * I")
    assert exc.value.pos == 4
    assert exc.value.caret().splitlines()[-1] == "      ^"
    with pytest.raises(UnknownName):
        parse_expr("D(nope)", ENV)
    with pytest.raises(ExprSyntaxError):
        parse_expr("S^-1")
    with pytest.raises(ExprSyntaxError):
        parse_expr("(S")


def test_env_requires_limit():
    from quatspec.errors import ExprError
    with pytest.raises(ExprError):
        load_env({"diagonals": {"x": {"prefix": [[1, 0, 0, 0]]}}})


def test_parse_values_and_precedence():
    op = parse_expr("2*S - q(0,1,0,0)*S'^2 + -0.5")
    ref = 2 * S - Diagonal((), (0, 1, 0, 0)) * S_ADJ ** 2 + Diagonal((), (-0.5, 0, 0, 0))
    assert np.allclose(op.block(6, 6), ref.block(6, 6))
    assert str(parse_expr("S^3")) == "S^3"
