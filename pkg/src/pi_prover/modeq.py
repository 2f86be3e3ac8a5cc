"""Level-1 modular equations: w-maps, the J-invariant and Weber's f.

The q-series here are used to check ingested polynomials and derived
constants independently of the algebraic pipeline.  Every truncated series or
product carries an explicit tail bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import DomainStraddle, NomeTooLarge, PoleStraddle
from .numcore import ComplexBall, Precision, ball, contains_zero, is_certified_below, pi_oracle
from .polyring import BivariatePoly, eval_poly

NOME_LIMIT = Fraction(1, 10)
J_ORDER = 40


@dataclass(frozen=True)
class WMapForm:
    """Exponent e of the map x -> 432 x^e / (x^e - 16)^3."""

    exponent: int

    def __post_init__(self):
        if self.exponent not in (12, 24):
            raise ValueError(f"w-map exponent must be 12 or 24, got {self.exponent}")

    @classmethod
    def from_file_form(cls, form: str) -> "WMapForm":
        return cls({"raw24": 24, "mod12": 12}[form])

    @property
    def file_form(self) -> str:
        return "raw24" if self.exponent == 24 else "mod12"


RAW24 = WMapForm(24)
MOD12 = WMapForm(12)


@dataclass(frozen=True)
class QPoint:
    value: ComplexBall
    description: str = ""

    def __post_init__(self):
        if not is_certified_below(self.value, 1):
            raise NomeTooLarge(f"nome {self.value!r} is not certified inside the unit disc")


def heegner_nome(d: int, p: Precision) -> QPoint:
    """q = -exp(-pi sqrt(4d - 1)), the nome of the alternating series of degree d."""
    x = pi_oracle(p) * ball(4 * d - 1, p).sqrt()
    return QPoint(-((-x).exp()), f"-exp(-pi*sqrt({4 * d - 1}))")


# -- w-map --------------------------------------------------------------------


def w_map(x: ComplexBall, form: WMapForm, p: Precision) -> ComplexBall:
    """432 x^e / (x^e - 16)^3."""
    y = x.with_prec(max(p.bits, x.prec)).pow_int(form.exponent)
    den = y - 16
    if contains_zero(den):
        raise PoleStraddle("x^e - 16 may vanish")
    return 432 * y / den.pow_int(3)


def w_map_derivatives(x: ComplexBall, form: WMapForm, p: Precision) -> tuple[ComplexBall, ComplexBall, ComplexBall]:
    """(w, dw/dx, d2w/dx2) at x."""
    e = form.exponent
    x = x.with_prec(max(p.bits, x.prec))
    xe2 = x.pow_int(e - 2)
    y1 = e * xe2 * x
    y = y1 * x / e
    y2 = e * (e - 1) * xe2
    den = y - 16
    if contains_zero(den):
        raise PoleStraddle("x^e - 16 may vanish")
    inv = den.inverse()
    inv3 = inv.pow_int(3)
    w = 432 * y * inv3
    wy = -864 * (y + 8) * inv3 * inv
    wyy = 2592 * (y + 16) * inv3 * inv * inv
    return w, wy * y1, wyy * y1 * y1 + wy * y2


def alpha_from_w(w: ComplexBall, branch: str, p: Precision) -> ComplexBall:
    """Root of alpha (1 - alpha) = w: (1 - s)/2 for 'minus', (1 + s)/2 for 'plus', s = sqrt(1 - 4w)."""
    if branch not in ("minus", "plus"):
        raise ValueError(f"branch must be 'minus' or 'plus', got {branch!r}")
    w = w.with_prec(max(p.bits, w.prec))
    s = (1 - 4 * w).sqrt()
    if branch == "plus":
        return (1 + s) / 2
    # 2w / (1 + s) avoids cancellation when w is tiny
    den = 1 + s
    return 2 * w / den if not contains_zero(den) else (1 - s) / 2


# -- J-invariant ---------------------------------------------------------------------


def _series_mul(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=8)
def j_coefficients(order: int = J_ORDER) -> tuple[int, ...]:
    """Coefficients c_-1, c_0, ..., c_order of J = E4^3 / eta^24."""
    n = order + 2
    e4 = [1] + [240 * sum(k**3 for k in range(1, m + 1) if m % k == 0) for m in range(1, n)]
    num = _series_mul(_series_mul(e4, e4, n), e4, n)
    # prod (1 - q^k)^24
    eta = [1] + [0] * (n - 1)
    for k in range(1, n):
        for _ in range(24):
            for idx in range(n - 1, k - 1, -1):
                eta[idx] -= eta[idx - k]
    # num / eta; eta[0] = 1 keeps everything integral
    out = [0] * n
    for m in range(n):
        out[m] = num[m] - sum(out[k] * eta[m - k] for k in range(m))
    return tuple(out)


def j_coefficient_bound_log2(n: int) -> float:
    """log2 of exp(4 pi sqrt(n)), an upper bound for c_n (n >= 1).

    Follows from the effective Brisebarre-Philibert estimate
    c_n <= exp(4 pi sqrt n) / (sqrt 2 n^(3/4)).
    """
    return 4 * math.pi * math.sqrt(n) / math.log(2)


def _log2_fraction(x: Fraction) -> float:
    return math.log2(x.numerator) - math.log2(x.denominator)


def j_invariant(q: QPoint, p: Precision, order: int = J_ORDER) -> ComplexBall:
    """Enclosure of J(q) = 1/q + 744 + 196884 q + ... for certified |q| <= 1/10."""
    qb = q.value.with_prec(max(p.bits, q.value.prec))
    qmax = qb.mag_upper()
    if qmax > NOME_LIMIT:
        raise NomeTooLarge(f"|q| <= 1/10 not certified (upper bound {float(qmax):.3g})")
    coeffs = j_coefficients(order)
    total = ComplexBall.from_value(coeffs[-1], p.bits)
    for c in reversed(coeffs[1:-1]):
        total = total * qb + c
    total = total + qb.inverse()
    if qmax == 0:
        return total
    # tail sum_{n > order} c_n |q|^n, geometric with ratio exp(2 pi / sqrt(order + 1)) |q|
    m = order + 1
    ratio = math.exp(2 * math.pi / math.sqrt(m)) * float(qmax)
    if ratio >= 0.9:
        raise NomeTooLarge("tail bound does not converge for this order")
    log2_tail = j_coefficient_bound_log2(m) + m * _log2_fraction(qmax) - math.log2(1 - ratio)
    return total.add_error(Fraction(2) ** (math.ceil(log2_tail) + 2))


# -- level-l x functions ------------------------------------------------------------


def _check_nome(q: QPoint, p: Precision) -> tuple[ComplexBall, Fraction]:
    qb = q.value.with_prec(max(p.bits, q.value.prec))
    qmax = qb.mag_upper()
    if qmax > NOME_LIMIT:
        raise NomeTooLarge(f"|q| <= 1/10 not certified (upper bound {float(qmax):.3g})")
    return qb, qmax


def _terms_needed(qmax: Fraction, bits: int, stride: int = 1) -> int:
    if qmax == 0:
        return 1
    return math.ceil((bits + 8) / (-_log2_fraction(qmax) * stride)) + 2


def _tail_ball(s: Fraction, power: int, bits: int) -> ComplexBall:
    """Ball containing prod_{n>N} (1 + a_n)^power when sum |a_n| <= s <= 1/(4 power)."""
    # |(1 + a)^k - 1| <= exp(k s) - 1 <= 2 k s for k s <= 1/2
    return ComplexBall.from_value(1, bits).add_error(2 * power * s)


def x_level(q: QPoint, level: int, p: Precision) -> ComplexBall:
    """x_4, x_2 or x_3 from their infinite products (q as given)."""
    qb, qmax = _check_nome(q, p)
    bits = p.bits
    one = ComplexBall.from_value(1, bits)
    if level == 4:
        n_terms = _terms_needed(qmax, bits, 2)
        prod = one
        q2 = qb * qb
        qodd = qb  # q^(2n-1)
        qeven = q2  # q^(2n)
        for _ in range(n_terms):
            prod = prod * (1 + qeven) / (1 + qodd)
            qodd = qodd * q2
            qeven = qeven * q2
        s = 2 * qmax ** (2 * n_terms + 1) / ((1 - qmax) * (1 - qmax * qmax))
        prod = (prod * _tail_ball(s, 1, bits)).pow_int(8)
        return 16 * qb * prod
    if level in (2, 3):
        n_terms = _terms_needed(qmax, bits)
        prod = one
        qn = qb
        for _ in range(n_terms):
            prod = prod * (1 + qn if level == 2 else 1 + qn + qn * qn)
            qn = qn * qb
        factor = 1 if level == 2 else 2
        s = factor * qmax ** (n_terms + 1) / (1 - qmax)
        prod = prod * _tail_ball(s, 1, bits)
        if level == 2:
            return 64 * qb / (64 * qb + prod.pow_int(-24))
        return 27 * qb / (27 * qb + prod.pow_int(-12))
    raise ValueError(f"level must be 2, 3 or 4, got {level}")


def j_from_x(x: ComplexBall, level: int, p: Precision) -> ComplexBall:
    """J expressed through x_level."""
    x = x.with_prec(max(p.bits, x.prec))
    if level == 1:
        num, den = ComplexBall.from_value(1728, p.bits), 4 * x * (1 - x)
    elif level == 2:
        num, den = 64 * (1 + 3 * x).pow_int(3), x * (1 - x).pow_int(2)
    elif level == 3:
        num, den = 27 * (1 + 8 * x).pow_int(3), x * (1 - x).pow_int(3)
    elif level == 4:
        num, den = 16 * (1 + 14 * x + x * x).pow_int(3), x * (1 - x).pow_int(4)
    else:
        raise ValueError(f"level must be 1..4, got {level}")
    if contains_zero(den):
        raise PoleStraddle("denominator of the J expression may vanish")
    return num / den


# -- Weber f --------------------------------------------------------------------------


def weber_f(t, p: Precision) -> ComplexBall:
    """f(i t) = q^(-1/48) prod (1 + q^(n - 1/2)), q = exp(-2 pi t), for rational t >= 1/2."""
    t = Fraction(t)
    if t < Fraction(1, 2):
        raise ValueError(f"weber_f needs t >= 1/2, got {t}")
    bits = p.bits
    pi = pi_oracle(p.plus(5))
    s = (-(pi * t)).exp()  # q^(1/2)
    smax = s.mag_upper()
    n_terms = _terms_needed(smax, bits, 2)
    prod = ComplexBall.from_value(1, bits)
    s2 = s * s
    sn = s
    for _ in range(n_terms):
        prod = prod * (1 + sn)
        sn = sn * s2
    tail = smax ** (2 * n_terms + 1) / (1 - smax * smax)
    prod = prod * _tail_ball(tail, 1, bits)
    return (pi * t / 24).exp() * prod


# -- validation of ingested polynomials --------------------------------------------


@dataclass
class ValidationReport:
    degree: int
    t: Fraction
    form: str
    digits: int
    passed: bool
    degenerate: bool = False
    residual_direct: ComplexBall | None = None
    residual_swapped: ComplexBall | None = None
    direct_certified_zero: bool = False
    swapped_certified_zero: bool = False
    direct_certified_nonzero: bool = False
    swapped_certified_nonzero: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def certified_nonzero(self) -> bool:
        return self.direct_certified_nonzero and self.swapped_certified_nonzero


def validate_modular_polynomial(
    phi: BivariatePoly, d: int, t, p: Precision, form: str = "raw24"
) -> ValidationReport:
    """Check phi(f(i t), f(i d t)) = 0 (and the swapped pair) with certified residuals.

    For ``mod12`` polynomials the arguments are squared first.  Passing needs
    one ordering with residual certified below 10^(-p/2).
    """
    t = Fraction(t)
    if phi.is_zero():
        return ValidationReport(d, t, form, p.digits, True, degenerate=True, notes=["DegeneratePolynomial"])
    # enough guard digits to absorb cancellation among the monomials
    # log|f(i t)| ~ pi t / 24
    u_est = math.pi * float(t) / 24
    v_est = u_est * d
    power = 2 if form == "mod12" else 1
    log10_mag = 0.0
    for (i, j), c in phi.terms.items():
        mag = math.log10(abs(c)) + power * (max(i, j) * v_est + min(i, j) * u_est) / math.log(10)
        log10_mag = max(log10_mag, mag)
    work = p.plus(math.ceil(log10_mag) + 10 + len(str(len(phi))))
    u = weber_f(t, work)
    v = weber_f(t * d, work)
    if form == "mod12":
        u, v = u * u, v * v
    elif form != "raw24":
        raise ValueError(f"unknown form {form!r}")
    r1 = eval_poly(phi, u, v, work)
    r2 = eval_poly(phi, v, u, work)
    threshold = Fraction(1, 10 ** ((p.digits + 1) // 2))
    ok1 = is_certified_below(r1, threshold)
    ok2 = is_certified_below(r2, threshold)
    report = ValidationReport(
        degree=d,
        t=t,
        form=form,
        digits=p.digits,
        passed=ok1 or ok2,
        residual_direct=r1.with_prec(p.bits),
        residual_swapped=r2.with_prec(p.bits),
        direct_certified_zero=ok1,
        swapped_certified_zero=ok2,
        direct_certified_nonzero=not contains_zero(r1),
        swapped_certified_nonzero=not contains_zero(r2),
    )
    if not report.passed and not report.certified_nonzero:
        report.notes.append("inconclusive: residual balls too wide")
    return report


# -- generating Weber polynomials from q-expansions ---------------------------------------


def _weber_product_series(n: int, step: int = 1) -> list[int]:
    """prod_{k>=1} (1 + t^(step (2k - 1))) to n coefficients in t = q^(1/2)."""
    out = [1] + [0] * (n - 1)
    k = 1
    while step * (2 * k - 1) < n:
        e = step * (2 * k - 1)
        for idx in range(n - 1, e - 1, -1):
            out[idx] += out[idx - e]
        k += 1
    return out


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    rows = [r[:] for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    basis = []
    for fc in (c for c in range(ncols) if c not in pivots):
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][fc]
        basis.append(vec)
    return basis


def weber_polynomial_qseries(d: int, extra_rows: int = 60) -> BivariatePoly:
    """Phi_d with Phi_d(f(tau), f(d tau)) = 0, from the q-expansion of f.

    f = q^(-1/48) * (series in q^(1/2)), so only monomials u^i v^j with
    i + d j = d + 1 (mod 24) can take part in a relation of bidegree d + 1.
    """
    if d < 5 or any(d % k == 0 for k in (2, 3)):
        raise ValueError("degree must be coprime to 6 and at least 5")
    deg = d + 1
    cls = deg % 24
    monos = [(i, j) for i in range(deg + 1) for j in range(deg + 1) if (i + d * j - cls) % 24 == 0]
    shift = {m: (m[0] + d * m[1] - cls) // 24 for m in monos}
    kmax = max(shift.values())
    nrows = kmax + len(monos) + extra_rows
    n = nrows + 1
    base_u = _weber_product_series(n)
    base_v = _weber_product_series(n, d)
    pu = [[1] + [0] * (n - 1)]
    pv = [[1] + [0] * (n - 1)]
    for _ in range(deg):
        pu.append(_series_mul(pu[-1], base_u, n))
        pv.append(_series_mul(pv[-1], base_v, n))
    cols = []
    for m in monos:
        s = _series_mul(pu[m[0]], pv[m[1]], n)
        k = shift[m]
        cols.append([s[r - kmax + k] if 0 <= r - kmax + k < n else 0 for r in range(nrows)])
    matrix = [[Fraction(col[r]) for col in cols] for r in range(nrows)]
    kernel = _nullspace(matrix, len(monos))
    if len(kernel) != 1:
        raise ArithmeticError(f"expected a one-dimensional relation space, got {len(kernel)}")
    vec = kernel[0]
    den = math.lcm(*(x.denominator for x in vec))
    ints = [int(x * den) for x in vec]
    g = math.gcd(*ints)
    poly = BivariatePoly({m: x // g for m, x in zip(monos, ints)})
    if poly.coefficient(deg, 0) < 0:
        poly = -poly
    return poly
