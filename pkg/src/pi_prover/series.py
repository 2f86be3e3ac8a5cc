"""Binary-splitting evaluation of sum T_n (a + b n) z^n and comparison with 1/pi.

T_n = (1/2)_n (1/s)_n (1 - 1/s)_n / n!^3.  Partial sums are accumulated as
exact rationals; the square roots in a and b are applied once at the end.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import DivergentParameters
from .numcore import ComplexBall, Precision, ball, pi_oracle
from .prover import SeriesParams, Surd

GUARD_DIGITS = 25
SLACK = Fraction(11, 10)

Splitter = Callable[[int, int], int]


@dataclass(frozen=True)
class SplitNode:
    """Binary-splitting triple for the term range [n1, n2).

    P/Q is the product of the term ratios over the range and T/Q the partial
    sum relative to the first term of the range.
    """

    P: int
    Q: int
    T: int

    def __post_init__(self):
        if self.Q == 0:
            raise ValueError("Q must be nonzero")

    def combine(self, right: "SplitNode") -> "SplitNode":
        return SplitNode(self.P * right.P, self.Q * right.Q, self.T * right.Q + self.P * right.T)

    def value(self) -> Fraction:
        return Fraction(self.T, self.Q)


def term_ratio(s: int, n: int) -> Fraction:
    """T_{n+1} / T_n = (n + 1/2)(n + 1/s)(n + 1 - 1/s) / (n + 1)^3."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return Fraction((2 * n + 1) * (s * n + 1) * (s * n + s - 1), 2 * s * s * (n + 1) ** 3)


def term_body(s: int, n: int) -> Fraction:
    """T_n by direct Pochhammer products."""
    out = Fraction(1)
    for k in range(n):
        out *= (Fraction(1, 2) + k) * (Fraction(1, s) + k) * (1 - Fraction(1, s) + k) / (k + 1) ** 3
    return out


def _mid_split(n1: int, n2: int) -> int:
    return (n1 + n2) // 2


def split_range(
    s: int, z: Fraction, weight: Callable[[int], int], n1: int, n2: int, splitter: Optional[Splitter] = None
) -> SplitNode:
    """SplitNode for sum_{n1 <= n < n2} weight(n) * prod_{n1 <= k < n} ratio(k) * z."""
    splitter = splitter or _mid_split
    zn, zd = z.numerator, z.denominator

    def rec(a: int, b: int) -> SplitNode:
        if b - a == 1:
            p = (2 * a + 1) * (s * a + 1) * (s * a + s - 1) * zn
            q = 2 * s * s * (a + 1) ** 3 * zd
            return SplitNode(p, q, weight(a) * q)
        m = splitter(a, b)
        if not a < m < b:
            raise ValueError(f"splitter returned {m} outside ({a}, {b})")
        return rec(a, m).combine(rec(m, b))

    if n2 <= n1:
        raise ValueError("empty range")
    return rec(n1, n2)


def _check_convergent(params: SeriesParams) -> None:
    if abs(params.z) >= 1:
        raise DivergentParameters(f"|z| = {abs(params.z)} >= 1")


def exact_sums(params: SeriesParams, n_terms: int, splitter: Optional[Splitter] = None) -> tuple[Fraction, Fraction]:
    """(sum T_n z^n, sum n T_n z^n) over n < n_terms as exact rationals."""
    _check_convergent(params)
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    a_sum = split_range(params.s, params.z, lambda n: 1, 0, n_terms, splitter).value()
    b_sum = split_range(params.s, params.z, lambda n: n, 0, n_terms, splitter).value() if n_terms > 1 else Fraction(0)
    return a_sum, b_sum


def exact_partial_sum(params: SeriesParams, n_terms: int, splitter: Optional[Splitter] = None) -> tuple[Fraction, ...]:
    """Partial sum as (rational multiplying sqrt(a.radicand), rational multiplying sqrt(b.radicand)).

    When both radicands agree the first entry carries everything and the second is 0.
    """
    a, b = params.a, params.b
    if a.radicand == b.radicand:
        lcm = math.lcm(a.coefficient.denominator, b.coefficient.denominator)
        ia, ib = int(a.coefficient * lcm), int(b.coefficient * lcm)
        _check_convergent(params)
        node = split_range(params.s, params.z, lambda n: ia + ib * n, 0, n_terms, splitter)
        return node.value() / lcm, Fraction(0)
    a_sum, b_sum = exact_sums(params, n_terms, splitter)
    return a.coefficient * a_sum, b.coefficient * b_sum


def eval_series(params: SeriesParams, n_terms: int, p: Precision, splitter: Optional[Splitter] = None) -> ComplexBall:
    """Ball containing the partial sum over n < n_terms (no truncation remainder)."""
    ra, rb = exact_partial_sum(params, n_terms, splitter)
    out = ball(ra, p) * ball(params.a.radicand, p).sqrt()
    if rb:
        out = out + ball(rb, p) * ball(params.b.radicand, p).sqrt()
    return out


def _surd_abs_upper(x: Surd) -> Fraction:
    return abs(x.coefficient) * (math.isqrt(x.radicand - 1) + 1 if x.radicand > 1 else 1)


def tail_bound(params: SeriesParams, n_terms: int) -> Fraction:
    """Upper bound on |sum_{n >= N} T_n (a + b n) z^n| with N = n_terms.

    T_n is positive and non-increasing, so T_n <= T_N for n >= N and the rest
    is a geometric sum in x = |z|.
    """
    _check_convergent(params)
    N = n_terms
    x = abs(params.z)
    tn = term_body(params.s, N)
    a, b = _surd_abs_upper(params.a), _surd_abs_upper(params.b)
    xn = x**N
    geo = xn / (1 - x)
    return tn * (a * geo + b * (N * geo + x * xn / (1 - x) ** 2))


def digits_per_term(params: SeriesParams) -> float:
    """-log10 |z|."""
    z = abs(params.z)
    if not 0 < z < 1:
        raise DivergentParameters(f"|z| = {z} is not in (0, 1)")
    return math.log10(z.denominator) - math.log10(z.numerator)


def terms_for_digits(params: SeriesParams, digits: int) -> int:
    return max(1, math.ceil(SLACK * digits / Fraction(digits_per_term(params))))


def decimal_digits_below(x: Fraction, cap: int) -> int:
    """Largest k <= cap with x <= 10^-k (x >= 0)."""
    if x <= 0:
        return cap
    k = max(0, math.floor(-math.log10(x.numerator) + math.log10(x.denominator)) - 1)
    while k + 1 <= cap and x * 10 ** (k + 1) <= 1:
        k += 1
    while k > 0 and x * 10**k > 1:
        k -= 1
    return min(k, cap)


@dataclass
class VerificationReport:
    digits_requested: int
    digits_matched: int
    residual: ComplexBall
    terms_used: int
    elapsed: float
    tail: Fraction
    formula: str = "machin"

    @property
    def passed(self) -> bool:
        return self.digits_matched >= self.digits_requested


def verify_against_pi(
    params: SeriesParams, digits: int, formula: str = "machin", n_terms: int | None = None
) -> VerificationReport:
    """Certify |sum - 1/pi| and count matching digits.

    The residual ball contains (full series - 1/pi): it covers the partial sum
    minus the reciprocal of the arctangent pi oracle, widened by the tail bound.
    When n_terms is not given it is sized from the digit rate and topped up
    until the tail is below 10^-(digits + 2).
    """
    if digits < 50:
        raise ValueError("digits must be >= 50")
    start = time.perf_counter()
    p = Precision(digits + GUARD_DIGITS)
    target = Fraction(1, 10 ** (digits + 2))
    if n_terms is None:
        n_terms = terms_for_digits(params, digits)
        tail = tail_bound(params, n_terms)
        while tail > target:
            n_terms += max(1, n_terms // 20)
            tail = tail_bound(params, n_terms)
    else:
        tail = tail_bound(params, n_terms)
    total = eval_series(params, n_terms, p)
    residual = (total - 1 / pi_oracle(p, formula)).add_error(tail)
    matched = decimal_digits_below(residual.mag_upper(), digits)
    return VerificationReport(digits, matched, residual, n_terms, time.perf_counter() - start, tail, formula)


def truncation_error(params: SeriesParams, n_terms: int, p: Precision, reference_terms: int | None = None) -> ComplexBall:
    """|S_ref - S_n| where S_ref uses enough terms to be exact at precision p."""
    if reference_terms is None:
        reference_terms = terms_for_digits(params, p.digits) + 10
    ra, rb = exact_partial_sum(params, reference_terms)
    sa, sb = exact_partial_sum(params, n_terms)
    out = ball(ra - sa, p) * ball(params.a.radicand, p).sqrt()
    if rb or sb:
        out = out + ball(rb - sb, p) * ball(params.b.radicand, p).sqrt()
    return out.abs()


# Positive series with s = 6 at level 1, checked numerically only.
KNOWN_SERIES: dict[str, SeriesParams] = {
    "positive-11n+1": SeriesParams(
        s=6, level=1, d=None, z=Fraction(4, 125), a=Surd(Fraction(2, 25), 15), b=Surd(Fraction(22, 25), 15)
    ),
    "positive-133n+8": SeriesParams(
        s=6,
        level=1,
        d=None,
        z=Fraction(64, 614125),
        a=Surd(Fraction(144, 7225), 255),
        b=Surd(Fraction(7182, 21675), 255),
    ),
}
