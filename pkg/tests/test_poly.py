"""Noncommutative polynomials: arithmetic, involutions, reconstruction maps."""

from __future__ import annotations

from fractions import Fraction

import pytest

from dskrv import poly, words
from dskrv.poly import Poly


def P(*pairs):
    return Poly.from_pairs(pairs)


def test_zero_terms_are_dropped():
    f = Poly({words.code_from_str("xy"): 0})
    assert f == Poly.zero()
    assert not f
    assert (P(("xy", 1)) - P(("xy", 1))) == Poly.zero()


def test_immutability():
    f = P(("xy", 1))
    with pytest.raises(AttributeError):
        f.terms = {}


def test_addition_and_scaling():
    f = P(("xy", 1), ("yx", -1))
    g = P(("xy", Fraction(1, 2)))
    assert f + g == P(("xy", Fraction(3, 2)), ("yx", -1))
    assert f.scale(Fraction(1, 3)) == P(("xy", Fraction(1, 3)), ("yx", Fraction(-1, 3)))
    assert 2 * f == f + f
    assert -f == f.scale(-1)


def test_multiplication_is_concatenation():
    f = P(("x", 1), ("y", 2))
    g = P(("xy", 1))
    assert f * g == P(("xxy", 1), ("yxy", 2))
    assert Poly.one() * f == f == f * Poly.one()
    # bilinearity against an explicit expansion
    h = P(("x", 1), ("y", -1))
    lhs = (f + h) * g
    assert lhs == f * g + h * g


def test_coeff_and_pairing():
    f = P(("xy", 3), ("yx", Fraction(-1, 2)))
    assert f.coeff("xy") == 3
    assert f.coeff("xx") == 0
    with pytest.raises(ValueError):
        f.coeff("")
    g = P(("xy", 2), ("xx", 7))
    assert f.pairing(g) == 6


def test_homogeneous_parts_and_depths():
    f = P(("x", 1), ("xy", 2), ("yy", 3))
    assert not f.is_homogeneous()
    assert f.homogeneous_part(2) == P(("xy", 2), ("yy", 3))
    assert f.degrees() == [1, 2]
    assert f.depth_part(1) == P(("y", 0), ("xy", 2)) + P(("x", 1)) - P(("x", 1))
    assert f.depth_part(2) == P(("yy", 3))
    assert sorted(f.depths()) == [0, 1, 2]


def test_string_rendering():
    f = P(("xxy", 1), ("xyx", -2), ("yxx", Fraction(1, 3)))
    assert str(f) == "xxy - 2*xyx + 1/3*yxx"
    assert str(Poly.zero()) == "0"


def test_reversal_involution():
    f = P(("xxy", 1), ("xyx", -2))
    assert poly.anti(f) == P(("yxx", 1), ("xyx", -2))
    assert poly.anti(poly.anti(f)) == f


def test_push_operator():
    # push rotates the exponent tuple of every word
    f = P(("xxyxy", 5))
    assert poly.push(f) == P(("yxxyx", 5))


def test_swap_xy_and_negate_y():
    f = P(("xxy", 1), ("xyx", -2))
    assert poly.swap_xy(f) == P(("yyx", 1), ("yxy", -2))
    assert poly.negate_y(f) == P(("xxy", -1), ("xyx", 2))
    g = P(("xyy", 1))  # two y letters: sign +1
    assert poly.negate_y(g) == g


def test_pi_y_keeps_words_ending_in_y():
    f = P(("xxy", 1), ("xyx", -2), ("yxy", 3))
    assert poly.pi_y(f) == P(("xxy", 1), ("yxy", 3))


def test_partial_x_deletes_one_x_in_all_ways():
    assert poly.partial_x(P(("xxy", 1))) == P(("xy", 2))
    assert poly.partial_x(P(("xyx", 1))) == P(("xy", 1), ("yx", 1))
    assert poly.partial_x(Poly.word("x")) == Poly.one()
    assert poly.partial_x(Poly.word("y")) == Poly.zero()
    # Leibniz rule on a product of single words
    f, g = Poly.word("xy"), Poly.word("yx")
    assert poly.partial_x(f * g) == poly.partial_x(f) * g + f * poly.partial_x(g)


def test_subst_linear():
    x, y = Poly.word("x"), Poly.word("y")
    f = P(("xy", 1))
    # x -> -x-y, y -> y on the word xy
    image = poly.subst_linear(f, -x - y, y)
    assert image == P(("xy", -1), ("yy", -1))
    # substituting the identity is a no-op
    g = P(("xxy", 2), ("yxy", -1))
    assert poly.subst_linear(g, x, y) == g


def test_right_and_left_decomposition():
    f = P(("xxy", 1), ("xyx", -2), ("yxx", 1))
    fx, fy = poly.decompose_right(f)
    assert fx == P(("xy", -2), ("yx", 1))
    assert fy == P(("xx", 1))
    assert fx * Poly.word("x") + fy * Poly.word("y") == f
    gx, gy = poly.decompose_left(f)
    assert Poly.word("x") * gx + Poly.word("y") * gy == f


def test_reconstruction_maps_invert_the_y_components(f3):
    # frozen: the weight-3 generator is recovered from either one-sided
    # y-component by the corresponding section
    assert poly.s_map(poly.decompose_right(f3)[1]) == f3
    assert poly.s_prime_map(poly.decompose_left(f3)[1]) == f3


def test_palindromy_predicates():
    # degree 3: palindromic means f = +anti(f), antipalindromic f = -anti(f)
    f = P(("xxy", 1), ("yxx", 1))
    assert poly.is_palindromic(f)
    assert not poly.is_antipalindromic(f)
    g = P(("xxy", 1), ("yxx", -1))
    assert poly.is_antipalindromic(g)
    # degree 2 flips the signs: xy + yx is antipalindromic there
    h = P(("xy", 1), ("yx", 1))
    assert poly.is_antipalindromic(h)
    assert poly.is_palindromic(P(("xy", 1), ("yx", -1)))
    assert poly.is_palindromic(Poly.zero()) and poly.is_antipalindromic(Poly.zero())


def test_push_invariance_and_push_constant():
    orbit = P(("xxyxy", 1), ("yxxyx", 1), ("xyyxx", 1))
    assert poly.is_push_invariant(orbit)
    # orbit sums differ between this orbit (3) and untouched words (0)
    assert poly.push_constant(orbit) is None
    # xx contributes 1 on its singleton orbit; the orbit {xy, yx} is
    # listed twice for xy so its sum is also 1
    assert poly.push_constant(P(("xx", 1), ("xy", 1))) == 1
    # a nonzero coefficient on the pure-y word disqualifies f outright
    assert poly.push_constant(P(("xx", 1), ("xy", 1), ("yy", 2))) is None


def test_json_roundtrip():
    f = P(("xxy", Fraction(1, 3)), ("xyx", -2))
    obj = poly.poly_to_json(f)
    assert obj["degree"] == 3
    assert {"word": "xxy", "coeff": "1/3"} in obj["terms"]
    assert poly.poly_from_json(obj) == f
