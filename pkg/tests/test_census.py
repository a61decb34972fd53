from itertools import product

import pytest

import naive
from varfun import census
from varfun.census import THEOREMS, CensusConfig, run_census, verify_theorems
from varfun.errors import BudgetExceeded, NotBPreassociative, TheoremViolation


def small(**kw):
    args = dict(alphabet_size=2, codomain="symbols:2", maxlen=2)
    args.update(kw)
    return CensusConfig(**args)


def test_universe_sizes():
    assert run_census(small(maxlen=3)).functions == 16384
    assert run_census(small(codomain="lp-words")).functions == 1024
    with pytest.raises(BudgetExceeded):
        run_census(small(alphabet_size=3, maxlen=4))


def test_config_validation():
    for bad in (dict(codomain="symbols:0"), dict(codomain="bytes"), dict(maxlen=0),
                dict(theorems=("no-such-mode",)), dict(sample=0), dict(alphabet_size=27)):
        with pytest.raises(ValueError):
            small(**bad)


def symbol_tables(letters, L, k):
    inputs = naive.universe(letters, L, start=1)
    for vals in product([str(i) for i in range(k)], repeat=len(inputs)):
        yield dict(zip(inputs, vals))


@pytest.mark.parametrize("k", [2, 3])
def test_class_counts_match_brute_force(k):
    b = p = 0
    for table in symbol_tables("ab", 2, k):
        b += naive.preassociative(table, "ab", 2, equal_lengths=True) is None
        p += naive.preassociative(table, "ab", 2) is None
    counts = run_census(small(codomain=f"symbols:{k}")).counts
    assert (counts["b-preassociative"], counts["preassociative"]) == (b, p)
    assert counts["associative"] is None


def test_string_class_counts_match_brute_force():
    letters = "ab"
    inputs = naive.universe(letters, 2, start=1)
    assoc = both = 0
    same_length = [["".join(t) for t in product(letters, repeat=len(x))] for x in inputs]
    for vals in product(*same_length):
        table = dict(zip(inputs, vals))
        table[""] = ""
        ok = naive.associative(table, letters, 2) is None
        assoc += ok
        both += ok and all(len(v) == len(x) for x, v in table.items())
    counts = run_census(small(codomain="lp-words")).counts
    assert counts["associative"] == assoc and counts["associative-length-preserving"] == both


def test_known_counts_at_length_three():
    counts = run_census(small(maxlen=3)).counts
    assert counts["b-preassociative"] == 112 and counts["preassociative"] == 22


@pytest.mark.parametrize("codomain", ["symbols:2", "symbols:3", "lp-words",
                                      pytest.param("words", marks=pytest.mark.slow)])
def test_all_theorems_hold_on_small_universes(codomain):
    report = verify_theorems(small(codomain=codomain))
    assert report.counterexample is None
    assert set(report.theorems) == set(THEOREMS)
    assert report.theorems["nesting"] == report.functions


def test_factorization_mode_counts_every_function():
    report = run_census(small(maxlen=3, theorems=("factorization",)))
    assert report.theorems == {"nesting": 16384, "factorization": 16384}


def test_jobs_do_not_change_the_report():
    cfg = small(codomain="lp-words", theorems=THEOREMS)
    one = run_census(cfg).render()
    two = run_census(CensusConfig(**{**cfg.__dict__, "jobs": 2})).render()
    assert one == two


def test_sampling_is_seeded():
    cfg = small(codomain="lp-words", maxlen=3, sample=300, seed=7, theorems=("lp-associativity",))
    a, b = run_census(cfg), run_census(cfg)
    assert a.render() == b.render() and a.functions == 300
    assert "seed: 7" in a.render().splitlines()


def test_text_and_tsv_layouts():
    report = run_census(small(theorems=("quasi-inverse",)))
    text = report.render().splitlines()
    assert text[0] == "CENSUS alphabet=ab codomain=symbols:2 maxlen=2"
    assert text[1:3] == ["mode: exhaustive", "functions: 64"]
    assert "class associative: n/a" in text
    assert "theorem quasi-inverse: PASS (64 functions)" in text
    assert not any(line.startswith("runtime") for line in text)
    timed = report.render(timing=True).splitlines()
    assert [line for line in timed if line not in text] == [timed[-1]]
    assert timed[-1].startswith("runtime: ")
    tsv = report.render("tsv").splitlines()
    assert tsv[0] == "section\tname\tvalue"
    assert "theorem\tquasi-inverse\tPASS" in tsv and "checked\tquasi-inverse\t64" in tsv
    assert all(len(row.split("\t")) == 3 for row in tsv)


def test_first_counterexample_halts_the_run(monkeypatch):
    def reject(f, *args, **kw):
        raise NotBPreassociative(census.check_b_preassociative(f))

    monkeypatch.setattr(census, "factorize", reject)
    with pytest.raises(TheoremViolation) as exc:
        verify_theorems(small(theorems=("factorization",)))
    report = exc.value.report
    # function #0 is constant, hence B-preassociative
    assert report.counterexample.index == 0 and report.functions == 1
    assert report.counterexample.theorem == "factorization"
    assert "FAIL" in report.render()
    assert "counterexample: function #0 violates factorization" in report.render()
