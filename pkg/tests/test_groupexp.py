"""Truncated group exponentials: circle product, group-likeness, automorphisms."""

from __future__ import annotations

from fractions import Fraction

import pytest

from dskrv import derivations, dshuffle, groupexp, lie, words
from dskrv.groupexp import TruncSeries
from dskrv.lie import NotLieError
from dskrv.poly import Poly

X = Poly.word("x")
Y = Poly.word("y")


def test_trunc_series_basics():
    s = TruncSeries(Poly.one() + Poly.word("xy"), 4)
    assert s.constant_term == 1
    assert s.coeff("xy") == 1
    assert s.coeff("xx") == 0
    with pytest.raises(ValueError):
        s.coeff("xyxyx")  # beyond the truncation order
    assert TruncSeries.one(4).constant_term == 1
    assert not TruncSeries.zero(4).poly


def test_trunc_series_arithmetic_truncates():
    a = TruncSeries(Poly.one() + Poly.word("xyx"), 3)
    b = TruncSeries(Poly.one() + Poly.word("y"), 3)
    prod = a * b
    assert prod.trunc == 3
    assert prod.coeff("y") == 1
    # xyx * y has degree 4 and must be cut
    assert words.code_from_str("xyxy") not in prod.poly.terms
    c = a + b - b
    assert c.poly == a.poly


def test_circle_product_requires_lie_left_factor(f3):
    g = Poly.word("xy")
    with pytest.raises(NotLieError):
        groupexp.circle(g, f3)
    # f (x) g = f g + d_f(g) on Lie f
    h = groupexp.circle(f3, g)
    assert h == f3 * g + dshuffle.d_f(f3, g)


def test_exp_rejects_constant_terms():
    with pytest.raises(ValueError):
        groupexp.exp_circle(Poly.one() + Poly.word("xxy"), 6)


def test_exp_of_generator_frozen(f3):
    phi = groupexp.exp_circle(f3, 9)
    assert phi.trunc == 9
    assert phi.constant_term == 1
    # no degree 1 or 2 terms, frozen term count
    assert all(words.degree(w) not in (1, 2) for w in phi.poly.terms if w != words.EMPTY)
    assert len(phi.poly.terms) == 429
    assert phi.coeff("xxy") == f3.coeff("xxy")


def test_truncation_consistency(f3):
    # recomputing at a lower order equals truncating the higher one
    phi9 = groupexp.exp_circle(f3, 9)
    phi7 = groupexp.exp_circle(f3, 7)
    cut = Poly({w: c for w, c in phi9.poly.terms.items() if words.degree(w) <= 7})
    assert cut == phi7.poly


def test_log_inverts_exp(f3):
    phi = groupexp.exp_circle(f3, 9)
    back = groupexp.log_circle(phi, require_lie_parts=True)
    assert back == f3


def test_log_reports_non_lie_increments():
    phi = TruncSeries(Poly.one() + Poly.word("xy"), 4)
    with pytest.raises(NotLieError):
        groupexp.log_circle(phi, require_lie_parts=True)


def test_exp_log_on_inhomogeneous_lie():
    f = lie.random_lie(3, 4) + lie.random_lie(4, 4)
    phi = groupexp.exp_circle(f, 8)
    assert groupexp.log_circle(phi, require_lie_parts=True) == f


def test_shuffle_grouplike_frozen_pair_count(f3):
    phi = groupexp.exp_circle(f3, 9)
    rep = groupexp.grouplike_shuffle_check(phi)
    assert rep["verdict"], rep
    assert rep["pairs"] == 3601


def test_exp_of_any_lie_element_is_shuffle_grouplike():
    phi = groupexp.exp_circle(lie.random_lie(5, 7), 8)
    rep = groupexp.grouplike_shuffle_check(phi)
    assert rep["verdict"]
    assert rep["pairs"] == 1553


def test_stuffle_grouplike_frozen(f3):
    phi = groupexp.exp_circle(f3, 9)
    rep = groupexp.grouplike_stuffle_check(phi)
    assert rep["verdict"], rep
    assert rep["pairs"] == 904


def test_stuffle_grouplike_discriminates():
    # shuffle group-likeness holds for the exponential of any Lie
    # element; the stuffle side is what detects membership
    phi = groupexp.exp_circle(lie.random_lie(5, 7), 8)
    rep = groupexp.grouplike_stuffle_check(phi)
    assert not rep["verdict"]
    assert rep["witness"] == ("y", "xxxy")


def test_star_series_correction_term(f3):
    phi = groupexp.exp_circle(f3, 9)
    star = groupexp.star_series(phi)
    assert star.constant_term == 1
    # the pure-y coefficient at degree 3 carries the 1/3 correction
    assert star.coeff("yyy") == phi.coeff("yyy") + Fraction(1, 3) * phi.coeff("xxy")


def test_exp_derivation_automorphism(f3):
    d = derivations.ds_to_krv(f3)
    rep = groupexp.automorphism_check(d, trunc=8)
    assert rep["special"]
    assert rep["fixes_x_plus_y"]
    assert rep["bracket_sample"]
    assert rep["trunc"] == 8


def test_exp_derivation_fixed_point_is_exact(f3):
    d = derivations.ds_to_krv(f3)
    img = groupexp.exp_derivation(d, X + Y, 10)
    assert img == X + Y


def test_group_injection_check(f3):
    rep = groupexp.group_injection_check(f3, trunc=7)
    assert rep["verdict"], rep
    assert rep["shuffle_grouplike"] and rep["stuffle_grouplike"]
    assert rep["log_roundtrip"]
    assert rep["automorphism"]["fixes_x_plus_y"]


def test_group_injection_check_rejects_non_members():
    with pytest.raises(ValueError):
        groupexp.group_injection_check(lie.random_lie(4, 2), trunc=6)


def test_series_json(f3):
    phi = groupexp.exp_circle(f3, 6)
    obj = phi.to_json()
    assert obj["trunc"] == 6
    assert obj["series"]["terms"]
