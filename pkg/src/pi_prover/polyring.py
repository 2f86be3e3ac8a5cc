"""Sparse bivariate integer polynomials in (u, v).

Coefficients are Python ints, never floats: the squaring transform has to be
exact or every derived constant is silently wrong.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import DuplicateMonomial, ExponentOverflow, MixedParity, ParseError
from .numcore import ComplexBall, Precision

MAX_EXPONENT = 64
FORMS = ("raw24", "mod12")

_HEADER = re.compile(r"^#\s*weber\s+degree=(\d+)\s+form=(raw24|mod12)\s*$")


class BivariatePoly:
    """Immutable sparse polynomial sum(c[i, j] * u**i * v**j)."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | Iterable = (), max_exponent: int = MAX_EXPONENT):
        acc: dict[tuple[int, int], int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (i, j), c in items:
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in u^{i} v^{j}")
            if i > max_exponent or j > max_exponent:
                raise ExponentOverflow(f"exponent ({i}, {j}) exceeds {max_exponent}")
            acc[(i, j)] = acc.get((i, j), 0) + int(c)
        self._terms = MappingProxyType({k: c for k, c in acc.items() if c})
        self._hash = None

    @classmethod
    def u(cls) -> "BivariatePoly":
        return cls({(1, 0): 1})

    @classmethod
    def v(cls) -> "BivariatePoly":
        return cls({(0, 1): 1})

    @property
    def terms(self) -> Mapping[tuple[int, int], int]:
        return self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, i: int, j: int) -> int:
        return self._terms.get((i, j), 0)

    def degree(self, var: str) -> int:
        idx = _var_index(var)
        return max((m[idx] for m in self._terms), default=-1)

    def total_degree(self) -> int:
        return max((i + j for i, j in self._terms), default=-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"BivariatePoly({to_text(self).strip() or '0'!r})"

    def __add__(self, other: "BivariatePoly") -> "BivariatePoly":
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return BivariatePoly(out)

    def __neg__(self) -> "BivariatePoly":
        return BivariatePoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "BivariatePoly") -> "BivariatePoly":
        return self + (-other)

    def __mul__(self, other) -> "BivariatePoly":
        if isinstance(other, int):
            return BivariatePoly({m: c * other for m, c in self._terms.items()})
        out: dict[tuple[int, int], int] = {}
        for (a, b), x in self._terms.items():
            for (c, d), y in other._terms.items():
                key = (a + c, b + d)
                out[key] = out.get(key, 0) + x * y
        return BivariatePoly(out)

    __rmul__ = __mul__

    def swap(self) -> "BivariatePoly":
        return BivariatePoly({(j, i): c for (i, j), c in self._terms.items()})

    def map_exponents(self, fn) -> "BivariatePoly":
        return BivariatePoly({fn(i, j): c for (i, j), c in self._terms.items()})

    def eval_exact(self, u, v) -> Fraction:
        """Exact value at rational (or integer) u, v."""
        u, v = Fraction(u), Fraction(v)
        return sum((c * u**i * v**j for (i, j), c in self._terms.items()), Fraction(0))


def _var_index(var: str) -> int:
    if var not in ("u", "v"):
        raise ValueError(f"variable must be 'u' or 'v', got {var!r}")
    return 0 if var == "u" else 1


@dataclass(frozen=True)
class PolySplit:
    """phi = q_part - u*v*r_part with q_part even-even."""

    q_part: BivariatePoly
    r_part: BivariatePoly

    def reconstruct(self) -> BivariatePoly:
        return self.q_part - BivariatePoly({(1, 1): 1}) * self.r_part


# -- text format ---------------------------------------------------------------


def parse_poly(text: str, allow_duplicates: bool = True, max_exponent: int = MAX_EXPONENT) -> BivariatePoly:
    """Parse ``"<coeff> <i> <j>"`` lines; ``#`` starts a comment.

    Repeated monomials are summed unless ``allow_duplicates`` is false, in
    which case :class:`DuplicateMonomial` is raised.
    """
    terms: list[tuple[tuple[int, int], int]] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 3:
            raise ParseError(f"expected '<coeff> <i> <j>', got {raw!r}", lineno)
        try:
            c, i, j = (int(f) for f in fields)
        except ValueError:
            raise ParseError(f"non-integer field in {raw!r}", lineno) from None
        if i < 0 or j < 0:
            raise ParseError(f"negative exponent in {raw!r}", lineno)
        if i > max_exponent or j > max_exponent:
            raise ExponentOverflow(f"exponent ({i}, {j}) exceeds {max_exponent}", lineno)
        if (i, j) in seen and not allow_duplicates:
            raise DuplicateMonomial(f"monomial u^{i} v^{j} already given on line {seen[(i, j)]}", lineno)
        seen.setdefault((i, j), lineno)
        terms.append(((i, j), c))
    return BivariatePoly(terms, max_exponent=max_exponent)


def canonical_order(poly: BivariatePoly) -> list[tuple[tuple[int, int], int]]:
    """Terms sorted graded-lexicographically by (i + j, i), highest first."""
    return sorted(poly.terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0][0]), reverse=True)


def to_text(poly: BivariatePoly) -> str:
    return "".join(f"{c} {i} {j}\n" for (i, j), c in canonical_order(poly))


@dataclass(frozen=True)
class PolyFile:
    degree: int
    form: str
    poly: BivariatePoly
    sha256: str
    path: Path | None = None


def parse_poly_file(text: str, path: Path | None = None) -> PolyFile:
    header = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.strip():
            header = _HEADER.match(line.strip())
            if not header:
                raise ParseError("missing '# weber degree=<d> form=<raw24|mod12>' header", lineno)
            break
    if header is None:
        raise ParseError("empty polynomial file")
    poly = parse_poly(text, allow_duplicates=False)
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    return PolyFile(int(header.group(1)), header.group(2), poly, digest, path)


def load_poly_file(path: str | Path) -> PolyFile:
    path = Path(path)
    return parse_poly_file(path.read_text(encoding="utf-8"), path)


def format_poly_file(poly: BivariatePoly, degree: int, form: str, comments: Iterable[str] = ()) -> str:
    if form not in FORMS:
        raise ValueError(f"unknown form {form!r}")
    lines = [f"# weber degree={degree} form={form}"]
    lines += [f"# {c}" if c else "#" for c in comments]
    return "\n".join(lines) + "\n" + to_text(poly)


# -- calculus and evaluation ------------------------------------------------------


def partial_derivative(poly: BivariatePoly, var: str) -> BivariatePoly:
    idx = _var_index(var)
    out = {}
    for (i, j), c in poly.terms.items():
        e = (i, j)[idx]
        if e:
            out[(i - 1, j) if idx == 0 else (i, j - 1)] = c * e
    return BivariatePoly(out)


def _horner(coeffs: list[tuple[int, object]], x: ComplexBall, powers: dict[int, ComplexBall]) -> ComplexBall:
    """Sparse Horner: coeffs is [(exponent, value)] sorted by decreasing exponent."""

    def xpow(k: int) -> ComplexBall:
        if k not in powers:
            powers[k] = x.pow_int(k)
        return powers[k]

    (e0, acc), rest = coeffs[0], coeffs[1:]
    acc = acc if isinstance(acc, ComplexBall) else ComplexBall.from_value(acc, x.prec)
    prev = e0
    for e, c in rest:
        acc = acc * xpow(prev - e) + c
        prev = e
    if prev:
        acc = acc * xpow(prev)
    return acc


def eval_poly(poly: BivariatePoly, u: ComplexBall, v: ComplexBall, p: Precision) -> ComplexBall:
    """Enclosure of poly(u, v): Horner in v for each power of u, then Horner in u."""
    bits = p.bits
    u = u.with_prec(max(bits, u.prec))
    v = v.with_prec(max(bits, v.prec))
    if poly.is_zero():
        return ComplexBall.from_value(0, bits)
    rows: dict[int, list[tuple[int, int]]] = {}
    for (i, j), c in poly.terms.items():
        rows.setdefault(i, []).append((j, c))
    vpowers: dict[int, ComplexBall] = {}
    upowers: dict[int, ComplexBall] = {}
    outer = []
    for i in sorted(rows, reverse=True):
        inner = sorted(rows[i], reverse=True)
        outer.append((i, _horner(inner, v, vpowers)))
    return _horner(outer, u, upowers)


# -- the Weber transform -------------------------------------------------------------


def parity_split(phi: BivariatePoly) -> PolySplit:
    """Split phi = Q - u*v*R with Q the even-even part.

    Requires i = j (mod 2) for every monomial u^i v^j.
    """
    q, r = {}, {}
    for (i, j), c in phi.terms.items():
        if (i - j) % 2:
            raise MixedParity(i, j)
        if i % 2 == 0:
            q[(i, j)] = c
        else:
            r[(i - 1, j - 1)] = -c
    return PolySplit(BivariatePoly(q), BivariatePoly(r))


def _halve(poly: BivariatePoly) -> BivariatePoly:
    return poly.map_exponents(lambda i, j: (i // 2, j // 2))


def weber_transform(phi: BivariatePoly) -> BivariatePoly:
    """P(u, v) = Q(sqrt u, sqrt v)^2 - u v R(sqrt u, sqrt v)^2.

    P(s^2, t^2) = phi(s, t) * (Q(s, t) + s t R(s, t)), so every root (s, t) of
    phi gives a root (s^2, t^2) of P.
    """
    split = parity_split(phi)
    qh = _halve(split.q_part)
    rh = _halve(split.r_part)
    return qh * qh - BivariatePoly({(1, 1): 1}) * rh * rh
