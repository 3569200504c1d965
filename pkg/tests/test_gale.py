import random

import pytest

from veronese_kit.configurations import make_config, sample_generic, sample_on_rnc
from veronese_kit.errors import (
    DegenerateInputError,
    NotAGalePairError,
    RankDeficiencyError,
    ShapeError,
)
from veronese_kit.fields import Field, QQ
from veronese_kit.gale import (
    affine_gale,
    double_gale_minor_check,
    duality_certificate,
    gale_of_config,
    standard_gale_pair,
)
from veronese_kit.linalg import Matrix, rank

FP = Field.prime()


def test_affine_gale_annihilates():
    for field in (QQ, FP):
        rng = random.Random(5)
        for rows, cols in ((2, 5), (4, 7), (3, 8)):
            A = Matrix(field, [[field.random_scalar(rng, 9) for _ in range(cols)] for _ in range(rows)])
            if rank(A) < rows:
                continue
            B = affine_gale(A)
            assert B.shape == (cols - rows, cols)
            assert A.matmul(B.transpose()).is_zero()
            assert rank(B) == cols - rows


def test_affine_gale_errors():
    with pytest.raises(ShapeError):
        affine_gale(Matrix(QQ, [[1, 0], [0, 1]]))
    with pytest.raises(RankDeficiencyError):
        affine_gale(Matrix(QQ, [[1, 2, 3, 4], [2, 4, 6, 8]]))


def test_standard_pair_block_structure():
    A = Matrix(QQ, [[2, 0, 1, 3], [0, 1, 4, 5]])
    a_std, b = standard_gale_pair(A)
    assert a_std.entries[0][:2] == (1, 0) and a_std.entries[1][:2] == (0, 1)
    # b = [A'^t | -I]
    tail = a_std.select_columns((3, 4))
    assert b.entries[0][:2] == (tail.entries[0][0], tail.entries[1][0])
    assert b.entries[0][2:] == (-1, 0) and b.entries[1][2:] == (0, -1)
    cert = duality_certificate(a_std, b)
    assert cert.ok and cert.lambda_ == 1


def test_standard_pair_names_independent_columns():
    A = Matrix(QQ, [[1, 2, 0, 1], [2, 4, 1, 0]])  # first two columns parallel
    with pytest.raises(RankDeficiencyError, match=r"columns \(1, 3\)"):
        standard_gale_pair(A)


def test_minor_duality_hand_values():
    # A = [I | (2, 3)^t]: minors 1, 3, -2 match the sign law with lambda = 1
    A = Matrix(QQ, [[1, 0, 2], [0, 1, 3]])
    a_std, b = standard_gale_pair(A)
    assert a_std == A
    cert = duality_certificate(A, b)
    assert cert.ok and cert.lambda_ == 1 and cert.checked == 3


def test_affine_gale_lambda_sign():
    # affine_gale returns [-A'^t | I] = -(standard B), so every maximal minor
    # flips by (-1)^(n - d - 1) and lambda follows
    rng = random.Random(8)
    for field in (QQ, FP):
        for rows, cols in ((2, 5), (3, 7), (3, 8)):
            tail = [[field.random_scalar(rng, 9) for _ in range(cols - rows)] for _ in range(rows)]
            eye = [[field.one if i == j else field.zero for j in range(rows)] for i in range(rows)]
            A = Matrix(field, [eye[i] + tail[i] for i in range(rows)])
            cert = duality_certificate(A, affine_gale(A))
            assert cert.ok
            assert cert.lambda_ == field.normalize((-1) ** (cols - rows))


def test_certificate_absorbs_row_scaling():
    A = Matrix(QQ, [[1, 0, 2, 7], [0, 1, 3, 1]])
    B = affine_gale(A)
    cert = duality_certificate(A, B)
    scaled = Matrix(QQ, [[5 * x for x in B.entries[0]], list(B.entries[1])])
    cert2 = duality_certificate(A, scaled)
    assert cert2.ok
    assert cert2.lambda_ == cert.lambda_ / 5


def test_certificate_rejects_non_pairs():
    A = Matrix(QQ, [[1, 0, 2, 7], [0, 1, 3, 1]])
    B = affine_gale(A)
    bad = B.scale_column(1, 4)
    with pytest.raises(NotAGalePairError):
        duality_certificate(A, bad)
    with pytest.raises(ShapeError):
        duality_certificate(A, Matrix(QQ, [[0, 0, 0, 0, 1]]))
    kv = B.entries[0]
    degenerate = Matrix(QQ, [list(kv), [2 * x for x in kv]])
    with pytest.raises(RankDeficiencyError):
        duality_certificate(A, degenerate)


def test_gale_of_config_requirements():
    small = sample_generic(QQ, 3, 5, seed=0)
    with pytest.raises(ShapeError):
        gale_of_config(small)
    cols = [[1, a, 0, 0] for a in range(5)] + [[0, 0, 1, a] for a in range(2)]
    lopsided = make_config(QQ, 3, 7, cols)
    with pytest.raises(DegenerateInputError, match="dropping point 6"):
        gale_of_config(lopsided)


def test_gale_of_curve_lands_on_conic_equations():
    from veronese_kit.conic import w2n_membership

    for field in (QQ, FP):
        for seed in (1, 2):
            p = sample_on_rnc(field, 3, 7, seed=seed, height=9)
            q = gale_of_config(p)
            assert (q.d, q.n) == (2, 7)
            assert w2n_membership(q).all_vanish


def test_double_gale_is_minor_proportional():
    for field in (QQ, FP):
        for d, n, seed in ((2, 6, 3), (3, 7, 4), (2, 7, 5)):
            p = sample_generic(field, d, n, seed=seed, height=9)
            assert double_gale_minor_check(p)
