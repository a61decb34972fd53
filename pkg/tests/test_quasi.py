import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import naive
from conftest import string_fn, symbols_fn
from varfun import Alphabet, Codomain, VariadicFn
from varfun.errors import BudgetExceeded, FormatError, NotMQuasiRangeIdempotent
from varfun.families import remove_letter_fn, remove_letter_section
from varfun.quasi import (
    QuasiInverse,
    canonical_quasi_inverse,
    constrained_quasi_inverse,
    count_quasi_inverses,
    enumerate_quasi_inverses,
    is_quasi_inverse,
    load_quasi_inverse,
    verify_quasi_inverse,
)
from varfun.words import in_generated_set

const2 = symbols_fn("ab", 2, lambda x: "p")


def test_canonical_examples(sum01):
    ident = string_fn("ab", 1, lambda x: x, eps=False)
    assert canonical_quasi_inverse(ident, 1).section == {"a": "a", "b": "b"}
    assert canonical_quasi_inverse(const2, 2).section == {"p": "aa"}
    assert canonical_quasi_inverse(sum01, 2)("1") == "01"


def test_constrained_examples(sum01, mean012):
    assert constrained_quasi_inverse(mean012, 2, 1)("1") == "11"
    with pytest.raises(NotMQuasiRangeIdempotent) as exc:
        constrained_quasi_inverse(sum01, 2, 1)
    assert exc.value.arity == 2
    # m >= n falls back to the least preimage
    assert constrained_quasi_inverse(sum01, 2, 2) == canonical_quasi_inverse(sum01, 2)


def test_enumeration_examples(sum01):
    injective = string_fn("ab", 2, lambda x: x)
    assert len(enumerate_quasi_inverses(injective, 2)) == 1
    assert len(enumerate_quasi_inverses(const2, 2)) == 4
    sections = enumerate_quasi_inverses(sum01, 2)
    assert [g("1") for g in sections] == ["01", "10"]
    assert count_quasi_inverses(sum01, 3) == 9
    with pytest.raises(BudgetExceeded):
        enumerate_quasi_inverses(sum01, 3, budget=8)


def test_letter_removal_section_is_a_quasi_inverse():
    F = remove_letter_fn("a", Alphabet("ab"), 3)
    g = remove_letter_section("a")
    section = {v: g(3, v) for v in set(F.part(3).values())}
    assert verify_quasi_inverse(F, 3, section).passed


def test_non_preimage_section_fails(sum01):
    g = canonical_quasi_inverse(sum01, 2)
    bad = dict(g.section)
    bad["1"] = "11"
    r = verify_quasi_inverse(sum01, 2, bad)
    assert not r.passed and r.witness is not None


def test_missing_value_fails(sum01):
    r = verify_quasi_inverse(sum01, 2, {"0": "00", "2": "11"})
    assert not r.passed and r.witness["value"] == "1"


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from("pqr"), min_size=14, max_size=14))
def test_every_section_obeys_the_laws(vals):
    A = Alphabet("ab")
    f = VariadicFn(A, Codomain.of_symbols("pqr"), 3, table=dict(zip(A.universe(3, start=1), vals)))
    for n in range(1, 4):
        part = f.part(n)
        for g in enumerate_quasi_inverses(f, n):
            assert verify_quasi_inverse(f, n, g).passed
            assert naive.quasi_inverse_laws(part, g.section)
            # the roles can be swapped: F restricted to ran(g) is a quasi-inverse of g
            back = {w: part[w] for w in g.section.values()}
            assert is_quasi_inverse(g.section, back)
            assert is_quasi_inverse(part, g.section)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from("012"), min_size=12, max_size=12), st.integers(1, 3))
def test_constrained_sections_land_in_the_generated_set(vals, m):
    A = Alphabet("012")
    f = VariadicFn(A, Codomain.of_symbols("012"), 2, table=dict(zip(A.universe(2, start=1), vals)))
    for n in (1, 2):
        try:
            g = constrained_quasi_inverse(f, n, m)
        except NotMQuasiRangeIdempotent:
            continue
        assert all(in_generated_set(w, m) for w in g.section.values())
        assert verify_quasi_inverse(f, n, g).passed


def test_dump_and_load(sum01):
    g = canonical_quasi_inverse(sum01, 3)
    text = g.dump(sum01.codomain)
    assert text.splitlines()[0] == "quasi-inverse v1, arity: 3"
    assert load_quasi_inverse(text, sum01.alphabet, sum01.codomain) == g
    with pytest.raises(FormatError):
        load_quasi_inverse(text.replace("001", "01"), sum01.alphabet, sum01.codomain)


def test_is_quasi_inverse_generic():
    f = {1: "x", 2: "x", 3: "y"}
    assert is_quasi_inverse(f, {"x": 2, "y": 3})
    assert not is_quasi_inverse(f, {"x": 3, "y": 3})
    assert isinstance(QuasiInverse(1, {}), QuasiInverse)
