import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pi_prover.errors import DuplicateMonomial, ExponentOverflow, MixedParity, ParseError
from pi_prover.numcore import Precision, ball, contains_zero
from pi_prover.polyring import (
    BivariatePoly,
    canonical_order,
    eval_poly,
    format_poly_file,
    load_poly_file,
    parity_split,
    parse_poly,
    parse_poly_file,
    partial_derivative,
    to_text,
    weber_transform,
)
from pi_prover.prover import data_dir

DATA = Path(data_dir())
u, v = BivariatePoly.u(), BivariatePoly.v()

# Q and R of the degree-17 relation written as Q = u v R, with phi = Q - u v R
Q17_TERMS = {
    (18, 0): 1, (0, 18): 1,
    (16, 10): 17, (10, 16): 17,
    (12, 6): 119, (6, 12): 119,
    (8, 2): 272, (2, 8): 272,
}
R17_TERMS = {
    (16, 16): -1,
    (14, 2): -34, (2, 14): -34,
    (12, 12): 34,
    (8, 8): 340,
    (4, 4): 544,
    (0, 0): -256,
}


def phi17_minus_form() -> BivariatePoly:
    return BivariatePoly(Q17_TERMS) - u * v * BivariatePoly(R17_TERMS)


def test_parse_example():
    poly = parse_poly("1 18 0\n1 0 18\n17 16 10")
    assert len(poly) == 3
    assert poly.coefficient(16, 10) == 17


def test_parse_empty_and_cancel():
    assert parse_poly("").is_zero()
    assert parse_poly("3 2 2\n-3 2 2").is_zero()


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as exc:
        parse_poly("1 0 0\n1 2\n")
    assert exc.value.line == 2
    with pytest.raises(ParseError):
        parse_poly("x 1 1")
    with pytest.raises(ParseError):
        parse_poly("1 -1 0")
    with pytest.raises(ExponentOverflow):
        parse_poly("1 65 0")
    with pytest.raises(DuplicateMonomial) as exc:
        parse_poly("1 2 2\n# c\n5 2 2", allow_duplicates=False)
    assert exc.value.line == 3


def test_comments_and_blank_lines():
    poly = parse_poly("# header\n\n 2 1 0  # trailing\n\n-1 0 1\n")
    assert poly == 2 * u - v


def test_file_header_and_strict_duplicates():
    with pytest.raises(ParseError):
        parse_poly_file("1 0 0\n")
    with pytest.raises(DuplicateMonomial):
        parse_poly_file("# weber degree=5 form=raw24\n1 1 1\n1 1 1\n")
    pf = parse_poly_file("# weber degree=5 form=mod12\n1 1 1\n")
    assert (pf.degree, pf.form) == (5, "mod12")
    assert len(pf.sha256) == 64


@settings(max_examples=200, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 30), st.integers(0, 30)), st.integers(-10**30, 10**30), max_size=40))
def test_serialization_roundtrip(terms):
    poly = BivariatePoly(terms)
    text = to_text(poly)
    again = parse_poly(text)
    assert again == poly
    assert to_text(again) == text
    shuffled = text.splitlines()
    random.Random(len(text)).shuffle(shuffled)
    assert to_text(parse_poly("\n".join(shuffled))) == text


def test_canonical_order_graded():
    poly = parse_poly("1 0 0\n1 0 2\n1 2 0\n1 1 1")
    assert [m for m, _ in canonical_order(poly)] == [(2, 0), (1, 1), (0, 2), (0, 0)]


def test_partial_derivatives():
    assert partial_derivative(BivariatePoly({(3, 1): 1}), "u") == BivariatePoly({(2, 1): 3})
    assert partial_derivative(BivariatePoly({(18, 0): 1, (0, 18): 1}), "v") == BivariatePoly({(0, 17): 18})
    with pytest.raises(ValueError):
        partial_derivative(u, "w")


def random_poly(rng: random.Random, max_deg=12, n=10, parity=False) -> BivariatePoly:
    terms = {}
    for _ in range(n):
        i = rng.randint(0, max_deg)
        j = rng.randint(0, max_deg)
        if parity and (i - j) % 2:
            j = j + 1
        terms[(i, j)] = rng.randint(-1000, 1000)
    return BivariatePoly(terms)


def test_mixed_partials_commute():
    rng = random.Random(7)
    for _ in range(100):
        poly = random_poly(rng)
        uv = partial_derivative(partial_derivative(poly, "u"), "v")
        vu = partial_derivative(partial_derivative(poly, "v"), "u")
        assert uv == vu


def test_eval_poly_trivial():
    p = Precision(30)
    three = ball(3, p)
    assert contains_zero(eval_poly(u - v, three, three, p))


def test_eval_poly_random_against_exact():
    rng = random.Random(11)
    p = Precision(40)
    for _ in range(100):
        poly = random_poly(rng)
        x = Fraction(rng.randint(-999, 999), rng.randint(1, 97))
        y = Fraction(rng.randint(-999, 999), rng.randint(1, 97))
        assert eval_poly(poly, ball(x, p), ball(y, p), p).contains(poly.eval_exact(x, y))


def test_parity_split_phi17_minus_form():
    split = parity_split(phi17_minus_form())
    assert split.q_part == BivariatePoly(Q17_TERMS)
    assert len(split.q_part) == 8
    assert split.r_part == BivariatePoly(R17_TERMS)
    assert split.r_part.coefficient(16, 16) == -1
    assert split.r_part.coefficient(0, 0) == -256


def test_parity_split_small_cases():
    split = parity_split(BivariatePoly({(2, 2): 1}))
    assert split.q_part == BivariatePoly({(2, 2): 1})
    assert split.r_part.is_zero()
    with pytest.raises(MixedParity):
        parity_split(BivariatePoly({(2, 3): 1}))


def test_shipped_phi17_is_sign_image_of_minus_form():
    shipped = load_poly_file(DATA / "weber_17.txt").poly
    minus_form = phi17_minus_form()
    flipped = BivariatePoly({(i, j): c * (-1) ** i for (i, j), c in minus_form.terms.items()})
    assert shipped == flipped
    assert parity_split(shipped).r_part == -BivariatePoly(R17_TERMS)
    assert weber_transform(shipped) == weber_transform(minus_form)


def test_reconstruction():
    rng = random.Random(3)
    polys = [load_poly_file(DATA / f"weber_{d}.txt").poly for d in (5, 7, 11, 17, 41)]
    polys += [random_poly(rng, parity=True) for _ in range(100)]
    for phi in polys:
        assert parity_split(phi).reconstruct() == phi


def test_transform_small():
    assert weber_transform(BivariatePoly({(2, 0): 1, (1, 1): -1})) == BivariatePoly({(2, 0): 1, (1, 1): -1})


def test_transform_identity_exact():
    phi = phi17_minus_form()
    split = parity_split(phi)
    P = weber_transform(phi)
    assert P.degree("u") == 18 and P.degree("v") == 18
    rng = random.Random(17)
    for _ in range(50):
        s = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
        t = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
        lhs = P.eval_exact(s * s, t * t)
        rhs = phi.eval_exact(s, t) * (split.q_part.eval_exact(s, t) + s * t * split.r_part.eval_exact(s, t))
        assert lhs == rhs


def test_transform_preserves_symmetry():
    rng = random.Random(5)
    for _ in range(30):
        half = random_poly(rng, parity=True)
        sym = half + half.swap()
        P = weber_transform(sym)
        assert P == P.swap()


def test_format_poly_file_roundtrip(tmp_path):
    poly = phi17_minus_form()
    text = format_poly_file(poly, 17, "raw24", ["provenance line"])
    path = tmp_path / "w.txt"
    path.write_text(text)
    pf = load_poly_file(path)
    assert pf.poly == poly and pf.degree == 17
