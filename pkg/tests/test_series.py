import dataclasses
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import DEGREES
from pi_prover.errors import DivergentParameters
from pi_prover.numcore import Precision, ball, contains_zero, pi_oracle
from pi_prover.prover import SeriesParams, Surd
from pi_prover.series import (
    KNOWN_SERIES,
    SplitNode,
    decimal_digits_below,
    digits_per_term,
    eval_series,
    exact_partial_sum,
    split_range,
    tail_bound,
    term_body,
    term_ratio,
    truncation_error,
    verify_against_pi,
)


def params(z, a=Surd(Fraction(1)), b=Surd(Fraction(1)), s=6):
    level = {2: 4, 3: 3, 4: 2, 6: 1}[s]
    return SeriesParams(s=s, level=level, d=None, z=Fraction(z), a=a, b=b)


def test_term_ratio_examples():
    assert term_ratio(6, 0) == Fraction(5, 72)
    assert term_ratio(2, 0) == Fraction(1, 8)
    assert term_ratio(6, 10) == term_body(6, 11) / term_body(6, 10)
    for n in range(20):
        assert term_ratio(6, n) == Fraction((2 * n + 1) * (6 * n + 1) * (6 * n + 5), 72 * (n + 1) ** 3)
    with pytest.raises(ValueError):
        term_ratio(6, -1)


@pytest.mark.parametrize("s", [2, 3, 4, 6])
def test_term_body_matches_ratios(s):
    t = Fraction(1)
    for n in range(15):
        assert term_body(s, n) == t
        t *= term_ratio(s, n)


def naive_sum(p: SeriesParams, n_terms: int) -> tuple[Fraction, Fraction]:
    sa = sb = Fraction(0)
    for n in range(n_terms):
        t = term_body(p.s, n) * p.z**n
        sa += t
        sb += n * t
    return p.a.coefficient * sa, p.b.coefficient * sb


def random_params(rng: random.Random) -> SeriesParams:
    z = Fraction(rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(51, 500))
    radicand = rng.choice([1, 2, 3, 5])
    a = Surd(Fraction(rng.randint(1, 99), rng.randint(1, 99)), radicand)
    b = Surd(Fraction(rng.randint(1, 99), rng.randint(1, 99)), rng.choice([radicand, 7]))
    return params(z, a, b, s=rng.choice([2, 3, 4, 6]))


def test_binary_splitting_matches_naive():
    rng = random.Random(99)
    for _ in range(20):
        p = random_params(rng)
        for n in (1, 7, 64):
            ra, rb = exact_partial_sum(p, n)
            na, nb = naive_sum(p, n)
            if p.a.radicand == p.b.radicand:
                assert ra == na + nb and rb == 0
            else:
                assert (ra, rb) == (na, nb)


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 80), st.randoms(use_true_random=False))
def test_split_arrangement_irrelevant(n, rnd):
    def splitter(a, b):
        return rnd.randint(a + 1, b - 1)

    z = Fraction(-1, 53360**3)
    base = split_range(6, z, lambda k: 3 + 5 * k, 0, n)
    other = split_range(6, z, lambda k: 3 + 5 * k, 0, n, splitter)
    assert base.value() == other.value()
    assert base.P * other.Q == other.P * base.Q


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(-10**6, 10**6), st.integers(1, 10**6), st.integers(-10**6, 10**6)), min_size=3, max_size=3))
def test_combine_associative(triples):
    a, b, c = (SplitNode(*t) for t in triples)
    assert a.combine(b).combine(c) == a.combine(b.combine(c))


def test_splitnode_rejects_zero_q():
    with pytest.raises(ValueError):
        SplitNode(1, 0, 1)


def test_eval_single_term():
    a = Surd(Fraction(10177, 580800), 330)
    p = params(Fraction(-1, 440**3), a, Surd(Fraction(43617, 96800), 330))
    assert contains_zero(eval_series(p, 1, Precision(60)) - a.ball(Precision(60)))


def test_divergent():
    with pytest.raises(DivergentParameters):
        eval_series(params(Fraction(3, 2)), 5, Precision(30))
    with pytest.raises(DivergentParameters):
        digits_per_term(params(Fraction(-1)))


def test_known_positive_series_100_digits():
    p = Precision(120)
    inv_pi = 1 / pi_oracle(p)
    for name, n_terms in (("positive-11n+1", 200), ("positive-133n+8", 100)):
        total = eval_series(KNOWN_SERIES[name], n_terms, p)
        assert (total - inv_pi).mag_upper() < Fraction(1, 10**100)


def test_known_series_normalisation():
    s2 = KNOWN_SERIES["positive-11n+1"]
    assert s2.a.square() == Fraction(6, 5) ** 2 / 15
    assert s2.b.coefficient / s2.a.coefficient == 11
    s3 = KNOWN_SERIES["positive-133n+8"]
    assert s3.z == Fraction(4, 85) ** 3
    assert s3.b.coefficient / s3.a.coefficient == Fraction(133, 8)
    assert s3.a.square() * (85**2 * 255) == (8 * 54) ** 2


def test_digits_per_term():
    assert abs(digits_per_term(params(Fraction(-1, 53360**3))) - 14.18) < 0.01
    assert digits_per_term(params(Fraction(1, 10))) == pytest.approx(1.0)


def test_decimal_digits_below():
    assert decimal_digits_below(Fraction(1, 10**5), 100) == 5
    assert decimal_digits_below(Fraction(2, 10**5), 100) == 4
    assert decimal_digits_below(Fraction(0), 7) == 7
    assert decimal_digits_below(Fraction(1, 10**50), 10) == 10
    assert decimal_digits_below(Fraction(3), 10) == 0


def test_tail_bound_dominates():
    p = KNOWN_SERIES["positive-11n+1"]
    prec = Precision(200)
    for n in (5, 20, 60):
        err = truncation_error(p, n, prec)
        assert err.mag_upper() <= tail_bound(p, n)


def test_verify_d17_and_forgery(proofs):
    good = proofs[17].params
    rep = verify_against_pi(good, 1000)
    assert rep.digits_matched >= 1000 and rep.passed
    assert contains_zero(rep.residual)
    forged = dataclasses.replace(good, a=Surd(good.a.coefficient + Fraction(1, 10**20) / 18, good.a.radicand))
    bad = verify_against_pi(forged, 1000)
    # a moves by (sqrt(330)/18) 1e-20 ~ 1.01e-20
    assert bad.digits_matched in (19, 20)
    assert not contains_zero(bad.residual)


def test_verify_d41_terms(proofs):
    rep = verify_against_pi(proofs[41].params, 1000)
    assert rep.digits_matched >= 1000
    assert rep.terms_used <= 78


@pytest.mark.parametrize("d", DEGREES)
def test_verify_all_degrees(proofs, d):
    assert verify_against_pi(proofs[d].params, 1000).passed


def test_verify_precondition():
    with pytest.raises(ValueError):
        verify_against_pi(KNOWN_SERIES["positive-11n+1"], 20)


def test_monotone_digits(proofs):
    p = proofs[17].params
    prev = -1
    for n in range(1, 40, 3):
        got = verify_against_pi(p, 200, n_terms=n).digits_matched
        assert got >= prev
        prev = got
    assert prev == 200


def test_truncation_slope_d41(proofs):
    p = proofs[41].params
    prec = Precision(700)
    logs = [_log10(truncation_error(p, n, prec).mid[0]) for n in range(5, 41)]
    xs = list(range(5, 41))
    slope = _fit_slope(xs, logs)
    assert abs(-slope - 14.18) <= 0.05
    assert abs((logs[5] - logs[15]) - 141.8) <= 1


def _log10(x: Fraction) -> float:
    return math.log10(x.numerator) - math.log10(x.denominator)


def _fit_slope(xs, ys) -> float:
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)


def test_ball_from_surd():
    s = Surd(Fraction(3, 4), 5)
    assert contains_zero(s.ball(Precision(50)) ** 2 - Fraction(45, 16))
    assert contains_zero(ball(0, Precision(50)))
