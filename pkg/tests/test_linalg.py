"""Exact dense linear algebra over the base field."""

import random

from scrollalg.fields import GF, QQ
from scrollalg.linalg import MatrixK


def test_identity_rank_and_kernel():
    M = MatrixK.identity(QQ, 3)
    assert M.rank() == 3
    assert M.kernel_basis() == []


def test_proportional_rows():
    M = MatrixK.of(QQ, [[1, 2], [2, 4]])
    assert M.rank() == 1
    (k,) = M.kernel_basis()
    assert M.apply(k) == [QQ.zero(), QQ.zero()]
    # the kernel is the line through (2, -1)
    assert QQ.mul(k[0], QQ.of(-1)) == QQ.mul(k[1], QQ.of(2))


def test_rank_transpose_symmetry():
    rng = random.Random(11)
    F = GF(7)
    for _ in range(30):
        M = MatrixK(
            F, [[F.random(rng) for _ in range(4)] for _ in range(3)]
        )
        assert M.rank() == M.transpose().rank()
        for k in M.kernel_basis():
            assert all(F.is_zero(v) for v in M.apply(k))
        assert M.rank() + len(M.kernel_basis()) == M.ncols


def test_solve():
    M = MatrixK.of(QQ, [[1, 1], [1, -1]])
    x = M.solve([QQ.of(3), QQ.of(1)])
    assert M.apply(x) == [QQ.of(3), QQ.of(1)]
    # inconsistent system
    N = MatrixK.of(QQ, [[1, 1], [2, 2]])
    assert N.solve([QQ.of(0), QQ.of(1)]) is None


def test_det_and_inverse():
    rng = random.Random(2)
    F = GF(11)
    for _ in range(20):
        M = MatrixK(
            F, [[F.random(rng) for _ in range(3)] for _ in range(3)]
        )
        if F.is_zero(M.det()):
            continue
        assert M * M.inv() == MatrixK.identity(F, 3)


def test_column_space_comparison():
    F = QQ
    A = MatrixK.of(F, [[1, 0], [0, 1], [1, 1]])
    B = MatrixK.of(F, [[1, 1], [1, -1], [2, 0]])
    assert A.same_column_space(B)
    assert A.contains_columns_of(B)
    C = MatrixK.of(F, [[1], [1], [2]])
    assert A.contains_columns_of(C)
    assert not C.contains_columns_of(A)
    D = MatrixK.of(F, [[1], [0], [0]])
    assert not A.contains_columns_of(D)


def test_from_cols_empty():
    M = MatrixK.from_cols(QQ, [], nrows=4)
    assert M.nrows == 4 and M.ncols == 0
    assert M.rank() == 0
