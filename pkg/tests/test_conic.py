import random
from itertools import combinations

import pytest

from veronese_kit.conic import (
    BRACKET_TO_DET_SIGN,
    lift_matrix,
    phi_bracket,
    phi_det,
    phi_pullback_eval,
    v2n_subset_membership,
    veronese_lift,
    w2n_membership,
)
from veronese_kit.configurations import make_config, sample_generic, sample_nodal_conic, sample_on_rnc
from veronese_kit.errors import IndexSetError, ShapeError
from veronese_kit.fields import Field, QQ
from veronese_kit.linalg import minor

from oracles import cofactor_det

FP = Field.prime()

OFF_CONIC = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 4), (1, 3, 9))


def test_veronese_lift_monomials():
    assert veronese_lift(QQ, (1, 2, 3)) == (1, 4, 9, 2, 3, 6)
    with pytest.raises(ShapeError):
        veronese_lift(QQ, (1, 2))


def test_frozen_regression_value():
    p = make_config(QQ, 2, 6, OFF_CONIC)
    assert phi_det(p) == 12


def test_phi_det_matches_cofactor_oracle():
    rng = random.Random(7)
    for _ in range(20):
        cols = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(6)]
        if any(all(x == 0 for x in c) for c in cols):
            continue
        p = make_config(QQ, 2, 6, cols)
        lift = [list(veronese_lift(QQ, c)) for c in cols]
        rows = [[lift[j][r] for j in range(6)] for r in range(6)]
        assert phi_det(p) == cofactor_det(rows)


def test_phi_bracket_equals_det():
    for field in (QQ, FP):
        rng = random.Random(11)
        for _ in range(30):
            cols = [[field.random_scalar(rng, 9) for _ in range(3)] for _ in range(6)]
            if any(all(x == 0 for x in c) for c in cols):
                continue
            p = make_config(field, 2, 6, cols)
            assert phi_bracket(p) == phi_det(p)
    assert BRACKET_TO_DET_SIGN == -1


def test_phi_vanishes_on_conics():
    for field in (QQ, FP):
        for seed in range(5):
            assert phi_det(sample_on_rnc(field, 2, 6, seed=seed)) == 0


def test_phi_vanishes_on_repeated_point():
    cols = list(OFF_CONIC[:5]) + [OFF_CONIC[0]]
    assert phi_det(make_config(QQ, 2, 6, cols)) == 0


def test_lift_matrix_minor_is_pullback():
    p = sample_generic(FP, 2, 8, seed=3)
    lifted = lift_matrix(p)
    assert lifted.shape == (6, 8)
    for I in ((1, 2, 3, 4, 5, 6), (2, 3, 4, 6, 7, 8)):
        assert minor(lifted, range(1, 7), I) == phi_pullback_eval(p, I)
        assert phi_pullback_eval(p, I) == phi_det(p.subconfig(I))


def test_w2n_on_nodal_conic_vanishes():
    p = sample_nodal_conic(QQ, 7, seed=2, split=(4, 3))
    rep = w2n_membership(p)
    assert rep.all_vanish and rep.nonvanishing == ()
    assert rep.checked == 7


def test_w2n_generic_report_is_lex_ordered_and_consistent():
    p = sample_generic(FP, 2, 8, seed=5)
    rep = w2n_membership(p, collect_values=True)
    assert not rep.all_vanish
    expected = [I for I in combinations(range(1, 9), 6) if phi_pullback_eval(p, I) != 0]
    assert list(rep.nonvanishing) == expected
    assert len(rep.values) == rep.checked
    assert all(rep.values[I] == 0 for I in rep.values if I not in rep.nonvanishing)


def test_w2n_small_n_trivial():
    p = sample_generic(QQ, 2, 5, seed=1)
    rep = w2n_membership(p)
    assert rep.all_vanish and rep.checked == 0


def test_v2n_subset_membership_selected():
    p = sample_generic(FP, 2, 9, seed=8)
    subsets = [(1, 2, 3, 4, 5, 6), (1, 3, 5, 7, 8, 9)]
    rep = v2n_subset_membership(p, subsets)
    assert rep.checked == 2
    with pytest.raises(IndexSetError):
        v2n_subset_membership(p, [(1, 2, 3)])
    with pytest.raises(IndexSetError):
        v2n_subset_membership(p, [(1, 2, 3, 4, 5, 10)])


def test_phi_rejects_wrong_shape():
    p = sample_on_rnc(QQ, 3, 6, seed=0)
    with pytest.raises(ShapeError):
        phi_det(p)
    q = sample_on_rnc(QQ, 2, 7, seed=0)
    with pytest.raises(ShapeError):
        phi_det(q)
