"""Rigorous complex ball arithmetic and an independent pi oracle.

A :class:`ComplexBall` is a dyadic complex midpoint ``(re + i*im) * 2**exp``
together with a radius bounding the absolute error of the complex value.  The
midpoint lives in Python integers, the radius is an exact dyadic
:class:`~fractions.Fraction` rounded upward to a short mantissa, so every error
bound below is computed without floating point.

Roots and logarithms take their midpoint from mpmath and are then certified by
a residual argument, which makes the enclosures independent of the accuracy of
the guess.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence, Union

from mpmath import libmp

from .errors import DomainStraddle

Number = Union[int, Fraction, "ComplexBall"]

_RAD_BITS = 30
# rational lower bounds for sqrt(3) and pi
_SQRT3_LO = Fraction(17320508, 10**7)
_PI_LO = Fraction(314159, 10**5)


@dataclass(frozen=True)
class Precision:
    """Working precision in decimal digits."""

    digits: int

    def __post_init__(self):
        if not isinstance(self.digits, int) or self.digits < 10:
            raise ValueError(f"precision must be an integer >= 10 digits, got {self.digits!r}")

    @property
    def bits(self) -> int:
        return math.ceil(self.digits * math.log2(10)) + 16

    def plus(self, extra_digits: int) -> "Precision":
        return Precision(self.digits + extra_digits)

    def doubled(self) -> "Precision":
        return Precision(2 * self.digits)


def _pow2(e: int) -> Fraction:
    return Fraction(1 << e) if e >= 0 else Fraction(1, 1 << -e)


def _round_up(x: Fraction) -> Fraction:
    if x <= 0:
        return Fraction(0)
    n, d = x.numerator, x.denominator
    e = n.bit_length() - d.bit_length() - _RAD_BITS
    if e >= 0:
        m = -((-n) // (d << e))
        return Fraction(m << e)
    m = -((-(n << -e)) // d)
    return Fraction(m, 1 << -e)


def _round_down(x: Fraction) -> Fraction:
    if x <= 0:
        return Fraction(0)
    n, d = x.numerator, x.denominator
    e = n.bit_length() - d.bit_length() - _RAD_BITS
    if e >= 0:
        return Fraction((n // (d << e)) << e)
    return Fraction((n << -e) // d, 1 << -e)


def _bits(re: int, im: int) -> int:
    return max(abs(re).bit_length(), abs(im).bit_length())


def _isqrt_up(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def _dyadic_abs_up(re: int, im: int, exp: int) -> Fraction:
    s = re * re + im * im
    if s == 0:
        return Fraction(0)
    return _round_up(_isqrt_up(s) * _pow2(exp))


def _dyadic_abs_lo(re: int, im: int, exp: int) -> Fraction:
    return _round_down(math.isqrt(re * re + im * im) * _pow2(exp))


def _sqrt_up(x: Fraction) -> Fraction:
    """Upper bound for sqrt(x), x >= 0."""
    if x <= 0:
        return Fraction(0)
    k = 2 * _RAD_BITS - (x.numerator.bit_length() - x.denominator.bit_length())
    k += k & 1
    scaled = -((-x.numerator * _pow2(k).numerator) // (x.denominator * _pow2(k).denominator))
    return _round_up(_isqrt_up(scaled) * _pow2(-k // 2))


def _cbrt_up(x: Fraction) -> Fraction:
    if x <= 0:
        return Fraction(0)
    guess = Fraction(math.ceil(float(x) ** (1.0 / 3.0) * (1 + 1e-9) * 2**40), 2**40) if x < 2**900 else None
    if guess is None or guess**3 < x:
        # exponent too large for floats: crude dyadic bound
        e = (x.numerator.bit_length() - x.denominator.bit_length()) // 3 + 1
        guess = _pow2(e)
        while guess**3 < x:
            guess *= 2
    return _round_up(guess)


class ComplexBall:
    """Complex midpoint-radius enclosure.

    Balls are immutable.  ``prec`` is the number of mantissa bits kept for the
    midpoint; binary operations use the larger precision of the operands and
    treat Python ints and Fractions as exact.
    """

    __slots__ = ("_re", "_im", "_exp", "_rad", "prec")

    def __init__(self, *args, **kwargs):
        raise TypeError("use ComplexBall.from_value / ComplexBall.from_parts")

    # -- construction ------------------------------------------------------

    @classmethod
    def _new(cls, re: int, im: int, exp: int, rad: Fraction, prec: int) -> "ComplexBall":
        n = _bits(re, im)
        if n > prec:
            s = n - prec
            re >>= s
            im >>= s
            exp += s
            rad = rad + _pow2(exp + 1)
        if rad and (re or im):
            # drop mantissa bits far below the radius
            floor_e = rad.numerator.bit_length() - rad.denominator.bit_length() - 64
            if exp < floor_e:
                s = floor_e - exp
                re >>= s
                im >>= s
                exp = floor_e
                rad = rad + _pow2(exp + 1)
        if re == 0 and im == 0:
            exp = 0
        obj = object.__new__(cls)
        obj._re, obj._im, obj._exp = re, im, exp
        obj._rad = _round_up(rad) if rad else Fraction(0)
        obj.prec = prec
        return obj

    @classmethod
    def from_parts(cls, re: int, im: int, exp: int, rad: Fraction | int = 0, prec: int = 128) -> "ComplexBall":
        return cls._new(int(re), int(im), int(exp), Fraction(rad), prec)

    @classmethod
    def _from_real_fraction(cls, x: Fraction, prec: int) -> tuple[int, int, Fraction]:
        n, d = x.numerator, x.denominator
        if n == 0:
            return 0, 0, Fraction(0)
        if d & (d - 1) == 0 and n.bit_length() <= prec:
            return n, -(d.bit_length() - 1), Fraction(0)
        k = prec + 2 - (n.bit_length() - d.bit_length())
        m = (n << k) // d if k >= 0 else n // (d << -k)
        return m, -k, _pow2(-k)

    @classmethod
    def from_value(cls, x, prec: int, im=0) -> "ComplexBall":
        """Ball around ``x + i*im`` for exact ints/Fractions (or a dyadic float)."""
        if isinstance(x, ComplexBall):
            return x
        if isinstance(x, complex):
            x, im = x.real, x.imag
        xr = Fraction(x)
        xi = Fraction(im)
        mr, er, rr = cls._from_real_fraction(xr, prec)
        mi, ei, ri = cls._from_real_fraction(xi, prec)
        if mi == 0:
            return cls._new(mr, 0, er, rr + ri, prec)
        if mr == 0:
            return cls._new(0, mi, ei, rr + ri, prec)
        e = min(er, ei)
        return cls._new(mr << (er - e), mi << (ei - e), e, rr + ri, prec)

    @classmethod
    def i(cls, prec: int) -> "ComplexBall":
        return cls._new(0, 1, 0, Fraction(0), prec)

    @classmethod
    def _from_mpf_pair(cls, re_mpf, im_mpf, prec: int) -> "ComplexBall":
        def parts(t):
            sign, man, exp, _ = t
            man = int(man)
            return (-man if sign else man), exp

        mr, er = parts(re_mpf)
        mi, ei = parts(im_mpf)
        if mr == 0:
            er = ei
        if mi == 0:
            ei = er
        e = min(er, ei)
        return cls._new(mr << (er - e), mi << (ei - e), e, Fraction(0), prec)

    def _mpc(self):
        return (libmp.from_man_exp(self._re, self._exp), libmp.from_man_exp(self._im, self._exp))

    # -- inspection --------------------------------------------------------

    @property
    def radius(self) -> Fraction:
        return self._rad

    @property
    def mid(self) -> tuple[Fraction, Fraction]:
        s = _pow2(self._exp)
        return Fraction(self._re) * s, Fraction(self._im) * s

    @property
    def real(self) -> "ComplexBall":
        return ComplexBall._new(self._re, 0, self._exp, self._rad, self.prec)

    @property
    def imag(self) -> "ComplexBall":
        return ComplexBall._new(self._im, 0, self._exp, self._rad, self.prec)

    def is_exact(self) -> bool:
        return self._rad == 0

    def mag_upper(self) -> Fraction:
        """Upper bound of |z| over the ball."""
        return _round_up(_dyadic_abs_up(self._re, self._im, self._exp) + self._rad)

    def mag_lower(self) -> Fraction:
        """Lower bound of |z| over the ball (0 if the ball contains 0)."""
        lo = _dyadic_abs_lo(self._re, self._im, self._exp) - self._rad
        return _round_down(lo) if lo > 0 else Fraction(0)

    def contains(self, x) -> bool:
        """Exact test whether the point ``x`` (int, Fraction, or (re, im) pair) lies in the ball."""
        xr, xi = (Fraction(x[0]), Fraction(x[1])) if isinstance(x, tuple) else (Fraction(x), Fraction(0))
        mr, mi = self.mid
        return (mr - xr) ** 2 + (mi - xi) ** 2 <= self._rad**2

    def overlaps(self, other: "ComplexBall") -> bool:
        ar, ai = self.mid
        br, bi = other.mid
        r = self._rad + other._rad
        return (ar - br) ** 2 + (ai - bi) ** 2 <= r * r

    def contains_ball(self, other: "ComplexBall") -> bool:
        """True if ``other`` lies entirely inside ``self``."""
        if other._rad > self._rad:
            return False
        ar, ai = self.mid
        br, bi = other.mid
        r = self._rad - other._rad
        return (ar - br) ** 2 + (ai - bi) ** 2 <= r * r

    def real_positive(self) -> bool:
        return self._re > 0 and Fraction(self._re) * _pow2(self._exp) > self._rad

    def to_mpc(self):
        import mpmath

        return mpmath.mpc(mpmath.mpf(self._mpc()[0]), mpmath.mpf(self._mpc()[1]))

    def __complex__(self) -> complex:
        return complex(float(libmp.to_float(self._mpc()[0])), float(libmp.to_float(self._mpc()[1])))

    def mid_str(self, digits: int = 20) -> str:
        re_s = libmp.to_str(self._mpc()[0], digits)
        if self._im == 0:
            return re_s
        im_s = libmp.to_str(libmp.mpf_abs(self._mpc()[1]), digits)
        return f"{re_s}{'-' if self._im < 0 else '+'}{im_s}j"

    def radius_exponent(self) -> int | None:
        """Smallest integer e with radius <= 10**e (None for exact balls)."""
        if self._rad == 0:
            return None
        e = math.floor(math.log10(self._rad.numerator) - math.log10(self._rad.denominator))
        while Fraction(10) ** e < self._rad:
            e += 1
        while Fraction(10) ** (e - 1) >= self._rad:
            e -= 1
        return e

    def __repr__(self) -> str:
        e = self.radius_exponent()
        return f"ComplexBall({self.mid_str(20)} +/- {'0' if e is None else f'1e{e}'})"

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "ComplexBall":
        if isinstance(other, ComplexBall):
            return other
        if isinstance(other, (int, Fraction, float, complex)):
            return ComplexBall.from_value(other, self.prec)
        return NotImplemented

    def _add(self, other: "ComplexBall", negate: bool) -> "ComplexBall":
        prec = max(self.prec, other.prec)
        yr, yi = (-other._re, -other._im) if negate else (other._re, other._im)
        rad = self._rad + other._rad
        if not (yr or yi):
            return ComplexBall._new(self._re, self._im, self._exp, rad, prec)
        if not (self._re or self._im):
            return ComplexBall._new(yr, yi, other._exp, rad, prec)
        xr, xi, xe = self._re, self._im, self._exp
        ye = other._exp
        top = max(_bits(xr, xi) + xe, _bits(yr, yi) + ye)
        floor_e = top - prec - 8
        if xe < floor_e:
            s = floor_e - xe
            xr, xi, xe = xr >> s, xi >> s, floor_e
            rad += _pow2(xe + 1)
        if ye < floor_e:
            s = floor_e - ye
            yr, yi, ye = yr >> s, yi >> s, floor_e
            rad += _pow2(ye + 1)
        e = min(xe, ye)
        re = (xr << (xe - e)) + (yr << (ye - e))
        im = (xi << (xe - e)) + (yi << (ye - e))
        return ComplexBall._new(re, im, e, rad, prec)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._add(other, False)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._add(other, True)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other._add(self, True)

    def __neg__(self):
        return ComplexBall._new(-self._re, -self._im, self._exp, self._rad, self.prec)

    def __pos__(self):
        return self

    def conjugate(self) -> "ComplexBall":
        return ComplexBall._new(self._re, -self._im, self._exp, self._rad, self.prec)

    def __mul__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        prec = max(self.prec, y.prec)
        a, b, c, d = self._re, self._im, y._re, y._im
        rad = Fraction(0)
        if self._rad or y._rad:
            rad = (
                _dyadic_abs_up(a, b, self._exp) * y._rad
                + _dyadic_abs_up(c, d, y._exp) * self._rad
                + self._rad * y._rad
            )
        if b == 0 and d == 0:
            return ComplexBall._new(a * c, 0, self._exp + y._exp, rad, prec)
        return ComplexBall._new(a * c - b * d, a * d + b * c, self._exp + y._exp, rad, prec)

    __rmul__ = __mul__

    def inverse(self) -> "ComplexBall":
        lo = _dyadic_abs_lo(self._re, self._im, self._exp)
        if lo <= self._rad:
            raise DomainStraddle("division by a ball that may contain zero")
        c, d, e = self._re, self._im, self._exp
        n = c * c + d * d
        k = self.prec + 4 + _bits(c, d)
        re = (c << k) // n
        im = ((-d) << k) // n
        exp = -e - k
        rad = 2 * _pow2(exp)
        if self._rad:
            rad += self._rad / ((lo - self._rad) * lo)
        return ComplexBall._new(re, im, exp, rad, self.prec)

    def __truediv__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        return self * y.inverse()

    def __rtruediv__(self, other):
        x = self._coerce(other)
        if x is NotImplemented:
            return x
        return x * self.inverse()

    def ldexp(self, k: int) -> "ComplexBall":
        """Exact multiplication by 2**k."""
        return ComplexBall._new(self._re, self._im, self._exp + k, self._rad * _pow2(k), self.prec)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return self.pow_int(n)

    def pow_int(self, n: int) -> "ComplexBall":
        if n < 0:
            return self.pow_int(-n).inverse()
        result = ComplexBall._new(1, 0, 0, Fraction(0), self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def with_prec(self, prec: int) -> "ComplexBall":
        return ComplexBall._new(self._re, self._im, self._exp, self._rad, prec)

    def add_error(self, err: Fraction) -> "ComplexBall":
        return ComplexBall._new(self._re, self._im, self._exp, self._rad + Fraction(err), self.prec)

    def abs(self) -> "ComplexBall":
        """Real ball enclosing |z|."""
        s = self._re * self._re + self._im * self._im
        k = max(0, 2 * self.prec - s.bit_length() + 4)
        k += k & 1
        r = math.isqrt(s << k)
        return ComplexBall._new(r, 0, self._exp - k // 2, self._rad + _pow2(self._exp - k // 2), self.prec)

    # -- elementary functions -----------------------------------------------

    def _exact_negative_real(self) -> bool:
        return self._rad == 0 and self._im == 0 and self._re < 0

    def _residual_up(self, w: "ComplexBall", power: int) -> Fraction:
        """Upper bound of |w**power - z| over all z in self (w exact)."""
        wp = w.pow_int(power)  # exact: w has rad 0 and prec large enough below
        diff = wp._add(ComplexBall._new(self._re, self._im, self._exp, Fraction(0), wp.prec), True)
        return _round_up(_dyadic_abs_up(diff._re, diff._im, diff._exp) + diff._rad + self._rad)

    def sqrt(self) -> "ComplexBall":
        """Principal square root (argument in (-pi/2, pi/2])."""
        prec = self.prec
        if self._exact_negative_real():
            return ComplexBall.i(prec) * (-self).sqrt()
        if self.contains(0):
            # every root is bounded by sqrt(max |z|), whatever the branch
            return ComplexBall._new(0, 0, 0, _sqrt_up(self.mag_upper()), prec)
        guess = libmp.mpc_sqrt(self._mpc(), prec + 8)
        w = ComplexBall._from_mpf_pair(guess[0], guess[1], 4 * prec + 64)
        err = self._residual_up(w, 2)
        wlo = _dyadic_abs_lo(w._re, w._im, w._exp)
        if wlo == 0:
            raise DomainStraddle("square root too close to zero")
        delta = _round_up(err / wlo)
        wr, wi = w.mid
        upper_half = Fraction(self._im) * _pow2(self._exp) > self._rad
        lower_half = -Fraction(self._im) * _pow2(self._exp) > self._rad
        if not (wr > delta or (upper_half and wi > delta) or (lower_half and -wi > delta)):
            raise DomainStraddle("square root argument straddles the branch cut")
        return ComplexBall._new(w._re, w._im, w._exp, delta, prec)

    def cbrt(self) -> "ComplexBall":
        """Principal cube root (argument in (-pi/3, pi/3])."""
        prec = self.prec
        if self._exact_negative_real():
            root = (-self).cbrt()
            omega = (1 + ComplexBall.from_value(-3, prec).sqrt()) / 2
            return root * omega
        if self.contains(0):
            return ComplexBall._new(0, 0, 0, _cbrt_up(self.mag_upper()), prec)
        guess = libmp.mpc_cbrt(self._mpc(), prec + 8)
        w = ComplexBall._from_mpf_pair(guess[0], guess[1], 4 * prec + 64)
        err = self._residual_up(w, 3)
        wlo = _dyadic_abs_lo(w._re, w._im, w._exp)
        if wlo == 0 or err * 64 > wlo**3:
            raise DomainStraddle("cube root residual too large to certify")
        delta = _round_up(err / (2 * wlo * wlo))
        wr, wi = w.mid
        if not (wr > 0 and (_SQRT3_LO * wr - abs(wi)) / 2 > delta):
            raise DomainStraddle("cube root argument straddles the branch cut")
        return ComplexBall._new(w._re, w._im, w._exp, delta, prec)

    def exp(self) -> "ComplexBall":
        prec = self.prec
        m = _dyadic_abs_up(self._re, self._im, self._exp) + self._rad
        r = 0
        if m > 0:
            r = max(0, m.numerator.bit_length() - m.denominator.bit_length() + 12)
        # each squaring doubles the relative error
        wp = prec + r + 20
        x = self.with_prec(wp).ldexp(-r)
        xm = x.mag_upper()
        one = ComplexBall._new(1, 0, 0, Fraction(0), wp)
        total = one
        term = one
        k = 0
        target = _pow2(-wp - r - 4)
        while True:
            k += 1
            term = term * x / k
            total = total + term
            # remainder after degree k: |x|^(k+1)/(k+1)! / (1 - |x|/(k+2))
            bound = xm ** (k + 1) / math.factorial(k + 1) / (1 - xm / (k + 2))
            if bound < target or xm == 0:
                break
        total = total.add_error(bound)
        for _ in range(r):
            total = total * total
        return total.with_prec(prec)

    def log(self) -> "ComplexBall":
        """Principal logarithm (imaginary part in (-pi, pi])."""
        prec = self.prec
        if self._exact_negative_real():
            return (-self).log() + ComplexBall.i(prec) * pi_oracle(Precision(max(10, math.ceil(prec / 3.3))))
        if _dyadic_abs_lo(self._re, self._im, self._exp) <= self._rad:
            raise DomainStraddle("logarithm of a ball containing zero")
        guess = libmp.mpc_log(self._mpc(), prec + 8)
        w = ComplexBall._from_mpf_pair(guess[0], guess[1], prec + 16)
        e = self.with_prec(prec + 16) * (-w).exp() - 1
        eps = e.mag_upper()
        if eps >= Fraction(1, 2):
            raise DomainStraddle("logarithm residual too large to certify")
        _, wi = w.mid
        if abs(wi) + 2 * eps >= _PI_LO:
            raise DomainStraddle("logarithm argument straddles the branch cut")
        return ComplexBall._new(w._re, w._im, w._exp, 2 * eps, prec)


def contains_zero(x: ComplexBall) -> bool:
    """True iff |midpoint| <= radius."""
    return x.contains(0)


def is_certified_below(x: ComplexBall, bound) -> bool:
    """True iff |midpoint| + radius < bound, decided exactly."""
    bound = Fraction(bound)
    slack = bound - x.radius
    if slack <= 0:
        return False
    mr, mi = x.mid
    return mr * mr + mi * mi < slack * slack


def ball(x, p: Precision, im=0) -> ComplexBall:
    """Convenience constructor at a decimal precision."""
    return ComplexBall.from_value(x, p.bits, im)


_BINARY_OPS: dict[str, Callable[[ComplexBall, ComplexBall], ComplexBall]] = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}
_UNARY_OPS: dict[str, Callable[[ComplexBall], ComplexBall]] = {
    "sqrt": ComplexBall.sqrt,
    "cbrt": ComplexBall.cbrt,
    "exp": ComplexBall.exp,
    "log": ComplexBall.log,
}


def eval_elementary(op: str, args: Sequence, p: Precision) -> ComplexBall:
    """Apply an elementary operation to balls (or exact numbers) at precision ``p``.

    ``pow_int`` takes a ball and a Python int exponent.
    """
    if op == "pow_int":
        base, n = args
        return ComplexBall.from_value(base, p.bits).with_prec(p.bits).pow_int(int(n))
    balls = [ComplexBall.from_value(a, p.bits).with_prec(p.bits) for a in args]
    if op in _BINARY_OPS:
        a, b = balls
        return _BINARY_OPS[op](a, b)
    if op in _UNARY_OPS:
        (a,) = balls
        return _UNARY_OPS[op](a)
    raise ValueError(f"unknown operation {op!r}")


# -- pi -----------------------------------------------------------------------

# Machin-type identities: pi = sum(coeff * arctan(1/k))
PI_FORMULAS: dict[str, tuple[tuple[int, int], ...]] = {
    "machin": ((16, 5), (-4, 239)),
    "stormer": ((24, 8), (8, 57), (4, 239)),
    "gauss": ((48, 18), (32, 57), (-20, 239)),
}


def _arctan_split(k: int, a: int, b: int) -> tuple[int, int, int]:
    """(P, Q, T) for terms a..b-1 of Euler's arctan series at x = 1/k."""
    if b - a == 1:
        if a == 0:
            return 1, 1, 1
        p = 2 * a
        q = (2 * a + 1) * (k * k + 1)
        return p, q, p
    m = (a + b) // 2
    p1, q1, t1 = _arctan_split(k, a, m)
    p2, q2, t2 = _arctan_split(k, m, b)
    return p1 * p2, q1 * q2, t1 * q2 + p1 * t2


def arctan_inv(k: int, digits: int) -> tuple[Fraction, Fraction]:
    """Exact partial sum and rigorous tail bound of arctan(1/k).

    Uses arctan(x) = sum 4^n (n!)^2 / (2n+1)! * x^(2n+1) / (1+x^2)^(n+1),
    whose terms are positive with ratio below 1/(k^2+1).
    """
    n_terms = math.ceil((digits + 5) / math.log10(k * k + 1)) + 2
    p, q, t = _arctan_split(k, 0, n_terms)
    lead = Fraction(k, k * k + 1)
    partial = lead * Fraction(t, q)
    last = lead * Fraction(p, q)  # size of the term with index n_terms - 1
    ratio = Fraction(1, k * k + 1)
    tail = last * ratio / (1 - ratio)
    return partial, tail


@lru_cache(maxsize=32)
def _pi_fraction(formula: str, digits: int) -> tuple[Fraction, Fraction]:
    total = Fraction(0)
    err = Fraction(0)
    for coeff, k in PI_FORMULAS[formula]:
        s, tail = arctan_inv(k, digits + 2)
        total += coeff * s
        err += abs(coeff) * tail
    return total, err


def pi_oracle(p: Precision, formula: str = "machin") -> ComplexBall:
    """Real ball containing pi with radius <= 10**-p.digits.

    Computed from an arctangent identity, independently of any
    hypergeometric series.
    """
    if formula not in PI_FORMULAS:
        raise ValueError(f"unknown pi formula {formula!r}")
    value, err = _pi_fraction(formula, p.digits)
    return ComplexBall.from_value(value, p.bits).add_error(err)
