import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from veronese_kit.errors import IndexSetError, RankDeficiencyError, ShapeError
from veronese_kit.fields import Field, QQ
from veronese_kit.linalg import (
    Matrix,
    MaximalMinors,
    as_index_set,
    complement,
    det,
    inverse,
    kernel_basis,
    minor,
    rank,
    rref,
    s_index,
)
from oracles import leibniz_det, naive_fraction_rank

FP = Field.prime()


def rand_matrix(field, rng, rows, cols, height=30):
    return Matrix(field, [[field.random_scalar(rng, height) for _ in range(cols)] for _ in range(rows)])


# -- index sets ---------------------------------------------------------------


def test_index_set_validation():
    assert as_index_set([2, 5, 9]) == (2, 5, 9)
    with pytest.raises(IndexSetError):
        as_index_set([2, 2, 3])
    with pytest.raises(IndexSetError):
        as_index_set([0, 1])
    with pytest.raises(IndexSetError):
        as_index_set([])
    with pytest.raises(IndexSetError):
        as_index_set([1, 7], ground=6)
    with pytest.raises(IndexSetError):
        as_index_set([1, 2], size=3)


def test_complement():
    assert complement((1, 3), 5) == (2, 4, 5)


def test_s_index_hand_values():
    # worked examples: {1,4,5} in any ground set, {4,5,6}, initial segments
    assert s_index((1, 4, 5)) == 4
    assert s_index((4, 5, 6)) == 9
    assert s_index((1, 2, 3)) == 0
    assert s_index((2,)) == 1


@given(st.sets(st.integers(1, 12), min_size=1, max_size=11))
def test_s_index_complement_identity(I):
    # S_I + S_{I^c} = w(n-w) on ground [12]
    I = tuple(sorted(I))
    w = len(I)
    assert s_index(I) + s_index(complement(I, 12)) == w * (12 - w)


# -- determinants -------------------------------------------------------------


def test_det_q_matches_leibniz():
    rng = random.Random(2)
    for _ in range(30):
        n = rng.randint(1, 5)
        rows = [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)] for _ in range(n)]
        assert det(Matrix(QQ, rows)) == leibniz_det(rows)


def test_det_fp_matches_leibniz():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(1, 5)
        rows = [[rng.randint(-50, 50) for _ in range(n)] for _ in range(n)]
        assert det(Matrix(FP, rows)) == leibniz_det(rows) % FP.p


@settings(max_examples=40)
@given(st.integers(2, 4), st.integers(0, 10**6))
def test_det_multiplicative(n, seed):
    rng = random.Random(seed)
    a = rand_matrix(QQ, rng, n, n, 8)
    b = rand_matrix(QQ, rng, n, n, 8)
    assert det(a.matmul(b)) == det(a) * det(b)


def test_det_transpose_invariant():
    rng = random.Random(17)
    m = rand_matrix(FP, rng, 5, 5)
    assert det(m) == det(m.transpose())


def test_det_rejects_nonsquare():
    with pytest.raises(ShapeError):
        det(Matrix(QQ, [[1, 2, 3], [4, 5, 6]]))


def test_minor_is_submatrix_det():
    rng = random.Random(4)
    m = rand_matrix(QQ, rng, 4, 6, 9)
    assert minor(m, (1, 3, 4), (2, 5, 6)) == det(m.submatrix((1, 3, 4), (2, 5, 6)))
    with pytest.raises(ShapeError):
        minor(m, (1, 2), (1, 2, 3))


# -- rank / rref / kernel ------------------------------------------------------


def test_rank_matches_oracle_both_fields():
    rng = random.Random(6)
    for _ in range(25):
        rows, cols = rng.randint(1, 5), rng.randint(1, 6)
        ints = [[rng.randint(-5, 5) for _ in range(cols)] for _ in range(rows)]
        expected = naive_fraction_rank(ints)
        assert rank(Matrix(QQ, ints)) == expected
        assert rank(Matrix(FP, ints)) == expected


def test_rref_reproduces_row_space():
    rng = random.Random(8)
    m = rand_matrix(QQ, rng, 3, 5, 7)
    R, piv, r = rref(m)
    stacked = Matrix(QQ, list(m.entries) + list(R.entries))
    assert rank(stacked) == r == rank(m)
    assert len(piv) == r


def test_kernel_basis_annihilates():
    rng = random.Random(9)
    for field in (QQ, FP):
        for _ in range(10):
            a = rng.randint(1, 4)
            b = a + rng.randint(1, 4)
            m = rand_matrix(field, rng, a, b, 10)
            if rank(m) < a:
                continue
            B = kernel_basis(m)
            assert B.shape == (b - a, b)
            assert rank(B) == b - a
            assert m.matmul(B.transpose()).is_zero()


def test_kernel_basis_echelon_block_form():
    # [I | A] must produce [-A^t | I]
    a_block = [[1, 2], [3, 4], [5, 6]]
    m = Matrix(QQ, [[1, 0, 0, 1, 2], [0, 1, 0, 3, 4], [0, 0, 1, 5, 6]])
    B = kernel_basis(m)
    expected = Matrix(QQ, [[-1, -3, -5, 1, 0], [-2, -4, -6, 0, 1]])
    assert B == expected
    assert [row[:3] for row in B.entries] == [
        tuple(-Fraction(a_block[i][j]) for i in range(3)) for j in range(2)
    ]


def test_kernel_basis_rank_deficient_raises():
    with pytest.raises(RankDeficiencyError):
        kernel_basis(Matrix(QQ, [[1, 2, 3], [2, 4, 6]]))
    with pytest.raises(ShapeError):
        kernel_basis(Matrix(QQ, [[1, 2], [3, 4]]))


def test_inverse():
    rng = random.Random(10)
    for field in (QQ, FP):
        m = rand_matrix(field, rng, 4, 4, 9)
        while det(m) == 0:
            m = rand_matrix(field, rng, 4, 4, 9)
        assert m.matmul(inverse(m)) == Matrix.identity(field, 4)


# -- cached maximal minors -----------------------------------------------------


def test_maximal_minors_match_minor():
    rng = random.Random(12)
    for field in (QQ, FP):
        m = rand_matrix(field, rng, 3, 6, 9)
        mm = MaximalMinors(m)
        assert mm.get((1, 4, 6)) == minor(m, (1, 2, 3), (1, 4, 6))
        assert mm.get((2, 3, 5)) == minor(m, (1, 2, 3), (2, 3, 5))


def test_maximal_minors_vector_cross_field():
    # integer matrix: Q minors reduced mod p equal the F_p minors
    rng = random.Random(13)
    ints = [[rng.randint(-20, 20) for _ in range(7)] for _ in range(3)]
    vq = MaximalMinors(Matrix(QQ, ints)).vector()
    vp = MaximalMinors(Matrix(FP, ints)).vector()
    assert [int(x) % FP.p for x in vq] == list(vp)


def test_maximal_minors_q_with_denominators():
    m = Matrix(QQ, [[Fraction(1, 2), Fraction(1, 3), 1, 2], [0, Fraction(2, 5), 1, 1]])
    mm = MaximalMinors(m)
    for J in ((1, 2), (1, 3), (2, 4), (3, 4)):
        assert mm.get(J) == minor(m, (1, 2), J)
