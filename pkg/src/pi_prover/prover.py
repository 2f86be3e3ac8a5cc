"""Derivation of alternating level-1 series for 1/pi from Weber modular equations.

Pipeline for a degree d:

1. take the closed-form solution (u0, v0) of w(u) = w(v), P(u, v) = 0 from
   :func:`solution_catalog` and certify both residuals;
2. differentiate P(u, v(u)) = 0 implicitly and push the derivatives through
   alpha(1 - alpha) = w(u), beta(1 - beta) = w(v);
3. form the multiplier m0 and its derivative quotient and read off z, a, b;
4. recognise z, a, b as exact surds and confirm them at doubled precision.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Optional

from sympy import factorint

from .errors import (
    AmbiguousRecognition,
    BranchMismatch,
    DegenerateParameters,
    DegreeTestFailed,
    NonRealResult,
    RecognitionFailed,
    ResidualNotCertified,
    SingularDenominator,
    SolutionRejected,
    UnsupportedDegree,
)
from .modeq import MOD12, RAW24, WMapForm, alpha_from_w, w_map, w_map_derivatives
from .numcore import ComplexBall, Precision, ball, contains_zero, is_certified_below
from .polyring import BivariatePoly, PolyFile, eval_poly, load_poly_file, partial_derivative, weber_transform

CATALOG_DEGREES = (5, 7, 11, 17, 41)
GUARD_DIGITS = 30
DATA_ENV = "PI_PROVER_DATA"


# -- radical expressions ------------------------------------------------------------


class RadicalExpr:
    """Expression tree over rationals, i, +, -, *, /, sqrt and cbrt."""

    def __add__(self, other):
        return Add(self, lift(other))

    def __radd__(self, other):
        return Add(lift(other), self)

    def __sub__(self, other):
        return Sub(self, lift(other))

    def __rsub__(self, other):
        return Sub(lift(other), self)

    def __mul__(self, other):
        return Mul(self, lift(other))

    def __rmul__(self, other):
        return Mul(lift(other), self)

    def __truediv__(self, other):
        return Div(self, lift(other))

    def __rtruediv__(self, other):
        return Div(lift(other), self)

    def __neg__(self):
        return Sub(Lit(Fraction(0)), self)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 1:
            return NotImplemented
        out = self
        for _ in range(n - 1):
            out = Mul(out, self)
        return out


@dataclass(frozen=True, eq=True)
class Lit(RadicalExpr):
    value: Fraction

    def __str__(self):
        return str(self.value) if self.value.denominator == 1 else f"({self.value})"


@dataclass(frozen=True, eq=True)
class ImagUnit(RadicalExpr):
    def __str__(self):
        return "I"


@dataclass(frozen=True, eq=True)
class Add(RadicalExpr):
    left: RadicalExpr
    right: RadicalExpr

    def __str__(self):
        return f"({self.left} + {self.right})"


@dataclass(frozen=True, eq=True)
class Sub(RadicalExpr):
    left: RadicalExpr
    right: RadicalExpr

    def __str__(self):
        if isinstance(self.left, Lit) and self.left.value == 0:
            return f"(-{self.right})"
        return f"({self.left} - {self.right})"


@dataclass(frozen=True, eq=True)
class Mul(RadicalExpr):
    left: RadicalExpr
    right: RadicalExpr

    def __str__(self):
        return f"{self.left}*{self.right}"


@dataclass(frozen=True, eq=True)
class Div(RadicalExpr):
    left: RadicalExpr
    right: RadicalExpr

    def __str__(self):
        return f"{self.left}/{self.right}"


@dataclass(frozen=True, eq=True)
class Sqrt(RadicalExpr):
    arg: RadicalExpr

    def __str__(self):
        return f"sqrt({self.arg})"


@dataclass(frozen=True, eq=True)
class Cbrt(RadicalExpr):
    arg: RadicalExpr

    def __str__(self):
        return f"cbrt({self.arg})"


I = ImagUnit()


def lift(x) -> RadicalExpr:
    if isinstance(x, RadicalExpr):
        return x
    if isinstance(x, (int, Fraction)):
        return Lit(Fraction(x))
    raise TypeError(f"cannot use {type(x).__name__} in a radical expression")


def R(num: int, den: int = 1) -> Lit:
    return Lit(Fraction(num, den))


def sqrt(x) -> Sqrt:
    return Sqrt(lift(x))


def cbrt(x) -> Cbrt:
    return Cbrt(lift(x))


def eval_radical(e: RadicalExpr, p: Precision) -> ComplexBall:
    """Certified enclosure of a radical expression (principal roots)."""
    bits = p.bits
    memo: dict[RadicalExpr, ComplexBall] = {}

    def ev(node: RadicalExpr) -> ComplexBall:
        if node in memo:
            return memo[node]
        if isinstance(node, Lit):
            out = ComplexBall.from_value(node.value, bits)
        elif isinstance(node, ImagUnit):
            out = ComplexBall.i(bits)
        elif isinstance(node, Add):
            out = ev(node.left) + ev(node.right)
        elif isinstance(node, Sub):
            out = ev(node.left) - ev(node.right)
        elif isinstance(node, Mul):
            out = ev(node.left) * ev(node.right)
        elif isinstance(node, Div):
            out = ev(node.left) / ev(node.right)
        elif isinstance(node, Sqrt):
            out = ev(node.arg).sqrt()
        elif isinstance(node, Cbrt):
            out = ev(node.arg).cbrt()
        else:
            raise TypeError(f"unknown node {node!r}")
        memo[node] = out
        return out

    return ev(e)


# -- solution catalog --------------------------------------------------------------------


@dataclass(frozen=True)
class SolutionPoint:
    d: int
    form: WMapForm
    u0: RadicalExpr
    v0: RadicalExpr
    H: Optional[RadicalExpr] = None


def _cubic_point(H, a0, a1, b0, c0, c1, e0, e1, im_sign):
    """u0 = a0 H^2 + a1 H + b0 and v0 = (c0 H^2 + c1 H + b0) + im_sign (e0 H^2 + e1 H) i."""
    u0 = a0 * H**2 + a1 * H + b0
    v0 = (c0 * H**2 + c1 * H + b0) + (e0 * H**2 + e1 * H) * I * im_sign
    return u0, v0


@lru_cache(maxsize=None)
def solution_catalog(d: int) -> SolutionPoint:
    """Closed-form solution (u0, v0) of the self-complementary system of degree d."""
    s3 = sqrt(3)
    if d == 17:
        H = cbrt(91 + 9 * sqrt(201))
        u0, v0 = _cubic_point(
            H,
            R(91, 1200) - R(3, 400) * sqrt(201), R(1, 3), R(-2, 3),
            R(3, 800) * sqrt(201) - R(91, 2400), R(-1, 6),
            R(-9, 800) * sqrt(67) + R(91, 2400) * s3, -s3 / 6,
            1,
        )
    elif d == 5:
        H = cbrt(1 + 3 * sqrt(57))
        u0, v0 = _cubic_point(
            H,
            R(-1, 192) + sqrt(57) / 64, R(-1, 3), R(2, 3),
            -sqrt(57) / 128 + R(1, 384), R(1, 6),
            s3 / 384 - sqrt(171) / 128, -s3 / 6,
            -1,
        )
    elif d == 11:
        H = cbrt(35 + 3 * sqrt(129))
        u0, v0 = _cubic_point(
            H,
            R(-35, 48) + sqrt(129) / 16, R(-1, 3), R(4, 3),
            R(35, 96) - sqrt(129) / 32, R(1, 6),
            R(-35, 96) * s3 + R(3, 32) * sqrt(43), s3 / 6,
            1,
        )
    elif d == 41:
        H = cbrt(467 + 33 * sqrt(489))
        u0, v0 = _cubic_point(
            H,
            R(-467, 13872) + R(11, 4624) * sqrt(489), R(-1, 3), R(4, 3),
            R(467, 27744) - R(11, 9248) * sqrt(489), R(1, 6),
            R(467, 27744) * s3 - R(33, 9248) * sqrt(163), -s3 / 6,
            1,
        )
    elif d == 7:
        c2 = cbrt(2)
        c4 = cbrt(4)
        u0 = sqrt(c2) * cbrt(c2 - 1)
        v0 = u0 * ((c4 + 1) / 2 - s3 / 6 * (1 + c4 + 2 * c2) * I)
        return SolutionPoint(7, RAW24, u0, v0)
    else:
        raise UnsupportedDegree(f"no catalog solution for degree {d}; supported: {CATALOG_DEGREES}")
    return SolutionPoint(d, MOD12, u0, v0, H)


# -- polynomial data ----------------------------------------------------------------------


def data_dir(override: str | Path | None = None) -> Path:
    if override:
        return Path(override)
    if os.environ.get(DATA_ENV):
        return Path(os.environ[DATA_ENV])
    return Path(str(resources.files("pi_prover") / "data"))


def load_polynomial(d: int, data: str | Path | None = None, poly_file: str | Path | None = None) -> PolyFile:
    path = Path(poly_file) if poly_file else data_dir(data) / f"weber_{d}.txt"
    pf = load_poly_file(path)
    if pf.degree != d:
        raise ValueError(f"{path} holds degree {pf.degree}, expected {d}")
    return pf


def system_polynomial(pf: PolyFile, form: WMapForm) -> BivariatePoly:
    """The polynomial P paired with the given w-map form."""
    if pf.form == form.file_form:
        return pf.poly
    if pf.form == "raw24" and form == MOD12:
        return weber_transform(pf.poly)
    raise ValueError(f"cannot turn a {pf.form} polynomial into the {form.file_form} form")


# -- residual check --------------------------------------------------------------------------


@dataclass
class SolutionCheck:
    w_residual: ComplexBall
    p_residual: ComplexBall
    threshold: Fraction
    degenerate: bool = False


def _radius_ok(x: ComplexBall, threshold: Fraction) -> bool:
    return x.radius < threshold


def check_solution(sp: SolutionPoint, P: BivariatePoly, p: Precision) -> SolutionCheck:
    """Certify w(u0) - w(v0) and P(u0, v0) both contain 0 with radii below 10^(-p+30)."""
    u0 = eval_radical(sp.u0, p)
    v0 = eval_radical(sp.v0, p)
    w_res = w_map(u0, sp.form, p) - w_map(v0, sp.form, p)
    p_res = eval_poly(P, u0, v0, p)
    threshold = Fraction(1, 10 ** max(p.digits - GUARD_DIGITS, 1))
    check = SolutionCheck(w_res, p_res, threshold, degenerate=P.is_zero())
    for name, res in (("w(u0) - w(v0)", w_res), ("P(u0, v0)", p_res)):
        if not contains_zero(res):
            raise SolutionRejected(f"{name} is certified nonzero: {res!r}")
        if not _radius_ok(res, threshold):
            raise ResidualNotCertified(f"{name} radius exceeds 10^-{p.digits - GUARD_DIGITS}; raise precision")
    return check


# -- derivative chain --------------------------------------------------------------------------


@dataclass
class DerivativeChain:
    d: int
    u0: ComplexBall
    v0: ComplexBall
    vp: ComplexBall
    vpp: ComplexBall
    alpha0: ComplexBall
    alphap: ComplexBall
    alphapp: ComplexBall
    beta0: ComplexBall
    betap: ComplexBall
    betapp: ComplexBall
    m0: ComplexBall

    def balls(self) -> dict[str, ComplexBall]:
        return {k: v for k, v in vars(self).items() if isinstance(v, ComplexBall)}


def _nonzero(x: ComplexBall, name: str) -> ComplexBall:
    if contains_zero(x):
        raise SingularDenominator(f"{name} may vanish at the solution point; raise precision")
    return x


def implicit_derivatives(P: BivariatePoly, u0: ComplexBall, v0: ComplexBall, p: Precision):
    """v'(u0), v''(u0) along P(u, v(u)) = 0."""
    Pu = partial_derivative(P, "u")
    Pv = partial_derivative(P, "v")
    pu, pv, puu, puv, pvv = (
        eval_poly(poly, u0, v0, p)
        for poly in (Pu, Pv, partial_derivative(Pu, "u"), partial_derivative(Pu, "v"), partial_derivative(Pv, "v"))
    )
    _nonzero(pv, "dP/dv")
    vp = -pu / pv
    vpp = -(puu + 2 * puv * vp + pvv * vp * vp) / pv
    return vp, vpp


def derivative_chain(sp: SolutionPoint, P: BivariatePoly, p: Precision) -> DerivativeChain:
    """Implicit differentiation with u as the independent variable.

    alpha(1 - alpha) = w(u) and beta(1 - beta) = w(v(u)), on the branch
    beta0 = 1 - alpha0 with Re(1 - 2 alpha0) > 0.
    """
    d = sp.d
    u0 = eval_radical(sp.u0, p)
    v0 = eval_radical(sp.v0, p)
    vp, vpp = implicit_derivatives(P, u0, v0, p)
    wu, wu1, wu2 = w_map_derivatives(u0, sp.form, p)
    _, wv1, wv2 = w_map_derivatives(v0, sp.form, p)

    alpha0 = alpha_from_w(wu, "minus", p)
    one_m2a = _nonzero(1 - 2 * alpha0, "1 - 2 alpha0")
    if not one_m2a.real_positive():
        alpha0 = alpha_from_w(wu, "plus", p)
        one_m2a = 1 - 2 * alpha0
    beta0 = 1 - alpha0
    one_m2b = -one_m2a  # 1 - 2 beta0

    alphap = wu1 / one_m2a
    alphapp = (wu2 + 2 * alphap * alphap) / one_m2a
    betap = wv1 * vp / one_m2b
    betapp = (wv2 * vp * vp + wv1 * vpp + 2 * betap * betap) / one_m2b

    m0 = (alphap / (d * _nonzero(betap, "beta'0"))).sqrt()
    if m0.real.mid[0] < 0:
        m0 = -m0
    return DerivativeChain(d, u0, v0, vp, vpp, alpha0, alphap, alphapp, beta0, betap, betapp, m0)


def degree_test(chain: DerivativeChain) -> ComplexBall:
    """|m0|^2 d - 1, which must contain 0 for a solution of degree d."""
    m = chain.m0
    diff = (m * m.conjugate()) * chain.d - 1
    if not contains_zero(diff):
        raise DegreeTestFailed(f"|m0|^2 != 1/{chain.d}: |m0|^2 d - 1 = {diff!r}")
    return diff


# -- series parameters ------------------------------------------------------------------------


@dataclass(frozen=True)
class Surd:
    """coefficient * sqrt(radicand), radicand square-free."""

    coefficient: Fraction
    radicand: int = 1

    def __post_init__(self):
        if self.radicand < 1:
            raise ValueError("radicand must be a positive integer")
        square, free = _square_part(self.radicand)
        object.__setattr__(self, "coefficient", Fraction(self.coefficient) * square)
        object.__setattr__(self, "radicand", free)

    def square(self) -> Fraction:
        return self.coefficient**2 * self.radicand

    def ball(self, p: Precision) -> ComplexBall:
        return ball(self.coefficient, p) * ball(self.radicand, p).sqrt()

    def __str__(self):
        if self.radicand == 1:
            return str(self.coefficient)
        return f"{self.coefficient} * sqrt({self.radicand})"

    def to_dict(self) -> dict:
        return {"coefficient": str(self.coefficient), "radicand": self.radicand}

    @classmethod
    def from_dict(cls, data: dict) -> "Surd":
        return cls(Fraction(data["coefficient"]), int(data.get("radicand", 1)))

    @classmethod
    def parse(cls, text: str) -> "Surd":
        """Parse 'r' or 'r * sqrt(M)'."""
        text = text.strip()
        if "sqrt" in text:
            coeff, _, rest = text.partition("*")
            radicand = rest.strip().removeprefix("sqrt(").removesuffix(")")
            return cls(Fraction(coeff.strip()), int(radicand))
        return cls(Fraction(text))


def _square_part(n: int) -> tuple[int, int]:
    """n = square^2 * free with free square-free."""
    square, free = 1, 1
    for prime, e in factorint(n).items():
        square *= prime ** (e // 2)
        if e % 2:
            free *= prime
    return square, free


def squarefree_kernel(x: Fraction) -> int:
    """Square-free M with |x| = r^2 M for rational r."""
    x = abs(Fraction(x))
    return _square_part(x.numerator * x.denominator)[1] if x else 1


@dataclass(frozen=True)
class SeriesParams:
    """sum (1/2)_n (1/s)_n (1-1/s)_n / n!^3 (a + b n) z^n = 1/pi."""

    s: int
    level: int
    d: Optional[int]
    z: Fraction
    a: Surd
    b: Surd

    def __post_init__(self):
        if self.s not in (2, 3, 4, 6):
            raise ValueError(f"s must be one of 2, 3, 4, 6, got {self.s}")
        expected = {2: 4, 3: 3, 4: 2, 6: 1}[self.s]
        if self.level != expected:
            raise ValueError(f"level for s={self.s} is {expected}, got {self.level}")
        if self.z == 0:
            raise ValueError("z must be nonzero")

    @property
    def alternating(self) -> bool:
        return self.z < 0

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "level": self.level,
            "degree": self.d,
            "z": str(self.z),
            "a": self.a.to_dict(),
            "b": self.b.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SeriesParams":
        s = int(data.get("s", 6))
        return cls(
            s=s,
            level=int(data.get("level", {2: 4, 3: 3, 4: 2, 6: 1}[s])),
            d=data.get("degree"),
            z=Fraction(data["z"]),
            a=Surd.from_dict(data["a"]) if isinstance(data["a"], dict) else Surd.parse(data["a"]),
            b=Surd.from_dict(data["b"]) if isinstance(data["b"], dict) else Surd.parse(data["b"]),
        )


@dataclass
class SeriesBalls:
    z: ComplexBall
    a: ComplexBall
    b: ComplexBall
    m_ratio: ComplexBall  # m'0 / alpha'0
    degenerate: bool = False


def series_balls(chain: DerivativeChain, branch: str, p: Precision, level: int = 1) -> SeriesBalls:
    """Raw enclosures of z, a, b from the chain for the 'alternating' or 'positive' branch."""
    d = chain.d
    a0, b0, m0 = chain.alpha0, chain.beta0, chain.m0
    z = 4 * a0 * b0
    m_ratio = (m0 + 1 / (d * m0)) / 2 * (a0 - b0) / (a0 * b0) + m0 / (2 * chain.alphap) * (
        chain.alphapp / chain.alphap - chain.betapp / chain.betap
    )
    root_level = ball(level, p).sqrt()
    a = -2 * a0 * b0 * m_ratio * d / root_level
    if branch == "alternating":
        factor = Fraction(4 * d, level) - 1
    elif branch == "positive":
        factor = Fraction(4 * d, level)
    else:
        raise ValueError(f"branch must be 'alternating' or 'positive', got {branch!r}")
    b = (1 - 2 * a0) * ball(factor, p).sqrt()
    return SeriesBalls(z, a, b, m_ratio, degenerate=contains_zero(b))


def _certified_real(x: ComplexBall, name: str, tol: Fraction) -> None:
    im = x.imag
    if not contains_zero(im):
        raise NonRealResult(f"{name} has certified nonzero imaginary part {im!r}")
    if not is_certified_below(im, tol):
        raise RecognitionFailed(f"imaginary part of {name} not small enough to certify realness")


def _convergents(x: Fraction):
    h0, h1 = 0, 1
    k0, k1 = 1, 0
    while True:
        a = math.floor(x)
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        yield Fraction(h1, k1)
        frac = x - a
        if frac == 0:
            return
        x = 1 / frac


def recognize_surd(
    x: ComplexBall,
    radicand: int,
    denom_bound: int | None,
    p: Precision,
    confirm: ComplexBall | None = None,
) -> Surd:
    """Exact r*sqrt(radicand) enclosed by x, via continued-fraction convergents.

    A convergent r is accepted when |x - r sqrt(radicand)| certifies below
    10^(-p/2); with ``confirm`` (the same quantity at doubled precision) it
    must also certify below 10^(-p) there.
    """
    if denom_bound is None:
        denom_bound = 10 ** max(p.digits // 4, 4)
    tol = Fraction(1, 10 ** (p.digits // 2))
    if x.radius > Fraction(1, 10 ** max(p.digits - 10, 1)):
        raise RecognitionFailed(f"ball too wide for recognition at {p.digits} digits")
    if not is_certified_below(x.imag, tol):
        raise RecognitionFailed("value does not certify as real")
    root = ball(radicand, p).sqrt()
    target = (x.real / root).mid[0]
    fits = []
    for r in _convergents(target):
        if r.denominator > denom_bound:
            break
        if is_certified_below(x - ball(r, p) * root, tol):
            fits.append(r)
    if not fits:
        raise RecognitionFailed(f"no rational r with denominator <= {denom_bound} fits x = r*sqrt({radicand})")
    if len(fits) > 1:
        raise AmbiguousRecognition(f"several convergents fit: {fits}; raise precision")
    surd = Surd(fits[0], radicand)
    if confirm is not None:
        q = Precision(max(confirm.prec * 3 // 10, p.digits))
        if not is_certified_below(confirm - surd.ball(q), Fraction(1, 10**p.digits)):
            raise RecognitionFailed(f"{surd} does not survive re-evaluation at doubled precision")
    return surd


def radicand_candidates(b_squared: Fraction, limit: int = 1000) -> list[int]:
    """Square-free radicands to try: the kernel of b^2 first, then all square-free M <= limit."""
    first = squarefree_kernel(b_squared)
    rest = [m for m in range(1, limit + 1) if m != first and _square_part(m)[0] == 1]
    return [first] + rest


def _recognize_params(
    d: int, balls: SeriesBalls, p: Precision, confirm: SeriesBalls | None, branch: str, level: int
) -> SeriesParams:
    tol = Fraction(1, 10 ** (p.digits // 2))
    for name in ("z", "a", "b"):
        _certified_real(getattr(balls, name), name, tol)
    z = recognize_surd(balls.z, 1, None, p, confirm.z if confirm else None).coefficient
    if (z < 0) != (branch == "alternating"):
        raise BranchMismatch(f"z = {z} has the wrong sign for the {branch} branch")
    factor = Fraction(4 * d, level) - (1 if branch == "alternating" else 0)
    b_squared = (1 - z) * factor
    b = recognize_surd(balls.b, squarefree_kernel(b_squared), None, p, confirm.b if confirm else None)
    last_error: Exception | None = None
    for m in radicand_candidates(b_squared):
        try:
            a = recognize_surd(balls.a, m, None, p, confirm.a if confirm else None)
            break
        except RecognitionFailed as exc:
            last_error = exc
    else:
        raise RecognitionFailed(f"could not recognise a for degree {d}: {last_error}")
    return SeriesParams(s=6 if level == 1 else {4: 2, 3: 3, 2: 4}[level], level=level, d=d, z=z, a=a, b=b)


def series_params_alternating(
    d: int, chain: DerivativeChain, p: Precision, confirm_chain: DerivativeChain | None = None
) -> tuple[SeriesParams, SeriesBalls]:
    """z = 4 a0 b0, b = (1 - 2 a0) sqrt(4d - 1), a = -2 a0 b0 (m'/a') d at level 1."""
    balls = series_balls(chain, "alternating", p)
    if balls.degenerate:
        raise DegenerateParameters("b vanishes")
    confirm = series_balls(confirm_chain, "alternating", p.doubled()) if confirm_chain else None
    return _recognize_params(d, balls, p, confirm, "alternating", 1), balls


def series_params_positive(
    d: int, chain: DerivativeChain, p: Precision, confirm_chain: DerivativeChain | None = None
) -> tuple[SeriesParams, SeriesBalls]:
    """Positive branch: b = (1 - 2 a0) sqrt(4d); needs alpha0, beta0 real in (0, 1)."""
    for name, x in (("alpha0", chain.alpha0), ("beta0", chain.beta0)):
        re = x.real
        inside = re.mid[0] - re.radius > 0 and re.mid[0] + re.radius < 1
        if not inside or not contains_zero(x.imag):
            raise BranchMismatch(f"{name} = {x!r} is not certified in (0, 1)")
    balls = series_balls(chain, "positive", p)
    if balls.degenerate:
        raise DegenerateParameters("b vanishes (alpha0 = 1/2)")
    confirm = series_balls(confirm_chain, "positive", p.doubled()) if confirm_chain else None
    return _recognize_params(d, balls, p, confirm, "positive", 1), balls


# -- the whole pipeline ----------------------------------------------------------------------


@dataclass
class ProofResult:
    d: int
    digits: int
    solution: SolutionPoint
    poly_file: PolyFile
    check: SolutionCheck
    chain: DerivativeChain
    degree_residual: ComplexBall
    balls: SeriesBalls
    params: SeriesParams
    timings: dict[str, float] = field(default_factory=dict)


def prove(
    d: int,
    p: Precision = Precision(200),
    data: str | Path | None = None,
    poly_file: str | Path | None = None,
    confirm: bool = True,
) -> ProofResult:
    """Run the derivation for degree d and return every intermediate result."""
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    sp = solution_catalog(d)
    pf = load_polynomial(d, data, poly_file)
    P = system_polynomial(pf, sp.form)
    work = p.plus(GUARD_DIGITS)
    check = check_solution(sp, P, work)
    timings["check"] = time.perf_counter() - t0
    chain = derivative_chain(sp, P, work)
    degree_residual = degree_test(chain)
    timings["chain"] = time.perf_counter() - t0
    confirm_chain = derivative_chain(sp, P, p.doubled().plus(GUARD_DIGITS)) if confirm else None
    params, balls = series_params_alternating(d, chain, p, confirm_chain)
    timings["total"] = time.perf_counter() - t0
    return ProofResult(d, p.digits, sp, pf, check, chain, degree_residual, balls, params, timings)
