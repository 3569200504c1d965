import random
from fractions import Fraction

import pytest

from veronese_kit.fields import Field, QQ
from veronese_kit.jets import Jet, jet_variables
from oracles import poly_eval, poly_partial


def eval_poly_with_jets(poly, point, field):
    xs = jet_variables(field, point)
    nvars = len(point)
    total = Jet.constant(field, 0, nvars)
    for expo, coef in poly.items():
        term = Jet.constant(field, coef, nvars)
        for x, e in zip(xs, expo):
            term = term * x**e
        total = total + term
    return total


def random_poly(rng, nvars, max_deg=4, terms=6):
    poly = {}
    for _ in range(terms):
        expo = tuple(rng.randint(0, max_deg) for _ in range(nvars))
        poly[expo] = poly.get(expo, 0) + rng.randint(-9, 9)
    return poly


def test_polynomial_partials_match_formal_derivative():
    rng = random.Random(42)
    for _ in range(25):
        nvars = rng.randint(1, 3)
        poly = random_poly(rng, nvars)
        point = [rng.randint(-5, 5) for _ in range(nvars)]
        jet = eval_poly_with_jets(poly, point, QQ)
        assert jet.value == poly_eval(poly, point)
        for v in range(nvars):
            assert jet.partials[v] == poly_eval(poly_partial(poly, v), point)


def test_variable_and_constant():
    x = Jet.variable(QQ, 7, 1, 3)
    assert x.value == 7
    assert x.partials == (0, 1, 0)
    c = Jet.constant(QQ, Fraction(1, 2), 3)
    assert c.partials == (0, 0, 0)


def test_quotient_rule():
    # d(1/x) = -1/x^2 at x = 5
    x = Jet.variable(QQ, 5, 0, 1)
    r = 1 / x
    assert r.value == Fraction(1, 5)
    assert r.partials == (Fraction(-1, 25),)
    # product with quotient: d(x/(x+1)) = 1/(x+1)^2
    s = x / (x + 1)
    assert s.partials == (Fraction(1, 36),)


def test_division_by_zero_value():
    x = Jet.variable(QQ, 0, 0, 1)
    with pytest.raises(ZeroDivisionError):
        _ = 1 / x


def test_fp_lane_matches_q_lane():
    fp = Field.prime()
    rng = random.Random(9)
    poly = random_poly(rng, 2)
    point = [3, 11]
    jq = eval_poly_with_jets(poly, point, QQ)
    jp = eval_poly_with_jets(poly, point, fp)
    assert jp.value == int(jq.value) % fp.p
    assert list(jp.partials) == [int(d) % fp.p for d in jq.partials]


def test_pow_negative_rejected():
    x = Jet.variable(QQ, 2, 0, 1)
    with pytest.raises(ValueError):
        _ = x**-1
