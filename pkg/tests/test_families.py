import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import string_fn
from varfun import Alphabet, VariadicFn
from varfun.errors import DomainViolation, NotBAssociative, NotSingleLetterOutputs
from varfun.families import (
    MEAN,
    PRODUCT,
    SUM,
    PreMeanSpec,
    b_assoc_lift,
    hchain_condition,
    hchain_fn,
    premean_check_bpa,
    premean_eval,
    remove_letter_fn,
    remove_letter_H,
    remove_letter_outer,
)
from varfun.props import check_associative, check_m_generated_range

ABC = Alphabet("abc")
THRESHOLD_CHAIN = ["113", "111", "111"]  # h_n(k) = 1 if k <= n+1, else k


# letter removal -----------------------------------------------------------------


def test_remove_letter_examples():
    F = remove_letter_fn("a", ABC, 5)
    assert F("aba") == "b" and F("bbb") == "bbb" and F("aa") == ""


def test_move_letter_examples():
    word = "mathematics"
    H = remove_letter_H("a", Alphabet("aceimhst"), 11)
    assert H(word) == "mthemticsaa" and len(H(word)) == 11
    assert remove_letter_H("a", ABC, 3)("aba") == "baa"
    assert remove_letter_H("a", ABC, 2)("bb") == "bb"


@given(st.text(alphabet="abc", max_size=9))
def test_letter_removal_invariants(x):
    F = remove_letter_fn("a", ABC, 9)
    H = remove_letter_H("a", ABC, 9)
    assert "a" not in F(x) and len(F(x)) == len(x) - x.count("a")
    hx = H(x)
    assert len(hx) == len(x) and sorted(hx) == sorted(x)
    k = x.count("a")
    assert hx[len(x) - k:] == "a" * k
    assert hx[: len(x) - k] == x.replace("a", "")


def test_outer_maps_recover_F_up_to_six_letters():
    F = remove_letter_fn("a", ABC, 6)
    H = remove_letter_H("a", ABC, 6)
    f = remove_letter_outer("a")
    assert all(F(x) == f(H(x)) for x in ABC.universe(6))


def test_H_is_associative():
    assert check_associative(remove_letter_H("a", ABC, 5)).passed


# chains -----------------------------------------------------------------------------


def test_hchain_examples():
    ident = hchain_fn(["abc"] * 3, ABC)
    assert all(ident(x) == x for x in ABC.universe(3))
    X = Alphabet("123")
    F = hchain_fn(THRESHOLD_CHAIN, X)
    assert F("23") == "11" and F("3") == "3" and F("333") == "311"
    assert check_associative(hchain_fn(["aac"] * 3, ABC)).passed


def test_hchain_condition_examples():
    assert hchain_condition(["abc"] * 3, ABC).passed
    assert hchain_condition(THRESHOLD_CHAIN, Alphabet("123")).passed
    r = hchain_condition(["bac"] * 3, ABC)
    assert not r.passed and (r.witness["n"], r.witness["m"]) == (1, 1)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.text(alphabet="abc", min_size=3, max_size=3), min_size=3, max_size=3))
def test_hchain_associativity_matches_condition(chain):
    assert check_associative(hchain_fn(chain, ABC)).passed == hchain_condition(chain, ABC).passed


# lifts ---------------------------------------------------------------------------------


def test_lift_of_first_letter():
    first = string_fn("ab", 3, lambda x: x[:1], eps=False)
    fac = b_assoc_lift(first)
    assert all(fac.H(x) == x[:1] * len(x) for x in first.alphabet.universe(3))
    assert check_associative(fac.H).passed
    assert check_m_generated_range(fac.H, 1).passed
    assert fac.outer[2] == {"aa": "a", "bb": "b"}


def test_lift_of_mean(mean012):
    fac = b_assoc_lift(mean012)
    assert fac.H("02") == "11"
    assert check_associative(fac.H).passed


def test_lift_rejections(mean012):
    table = dict(mean012.table)
    table["102"] = "2"
    broken = VariadicFn(mean012.alphabet, mean012.codomain, 3, table=table, partial=True)
    with pytest.raises(NotBAssociative):
        b_assoc_lift(broken)
    with pytest.raises(NotSingleLetterOutputs):
        b_assoc_lift(string_fn("ab", 2, lambda x: x, eps=False))


# pre-means -------------------------------------------------------------------------------


def test_premean_values():
    assert premean_eval(SUM, [1, 2, 3]) == 6
    assert isinstance(premean_eval(SUM, [1, 2, 3]), Fraction)
    assert math.isclose(premean_eval(PRODUCT, [2, 3, 4]), 24, rel_tol=1e-9)
    assert premean_eval(MEAN, [Fraction(7, 3)] * 4) == Fraction(7, 3)
    with pytest.raises(DomainViolation) as exc:
        premean_eval(PRODUCT, [2, -1])
    assert exc.value.index == 1


@given(st.lists(st.fractions(min_value=-50, max_value=50), min_size=1, max_size=6),
       st.randoms(use_true_random=False))
def test_mean_is_symmetric(xs, rnd):
    ys = list(xs)
    rnd.shuffle(ys)
    assert premean_eval(MEAN, xs) == premean_eval(MEAN, ys)


def test_premean_b_preassociativity_samples():
    assert premean_check_bpa(SUM, 2000, seed=1).passed
    assert premean_check_bpa(MEAN, 2000, seed=1).passed
    assert premean_check_bpa(PRODUCT, 2000, seed=1, tol=1e-9).passed


def test_premean_spec_validation():
    with pytest.raises(ValueError):
        PreMeanSpec("identity", "affine", outer_coeffs=(0, 1))
    with pytest.raises(ValueError):
        PreMeanSpec("affine", "scaled", inner_coeffs=(0, 1))
    with pytest.raises(ValueError):
        PreMeanSpec("log", "exp_scaled")
    spec = PreMeanSpec("affine", "affine", inner_coeffs=(2, 1), outer_coeffs=(3, -1))
    assert spec.exact
    assert premean_eval(spec, [1, 3]) == 3 * Fraction(3 + 7, 2) - 1
