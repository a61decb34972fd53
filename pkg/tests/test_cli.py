import io
import subprocess
import sys

import pytest

from conftest import DATA, read_table
from varfun.census import CensusConfig, run_census
from varfun.cli import main
from varfun.factor import factorize
from varfun.funcrep import dump_table
from varfun.kernels import componentwise_kernel_report
from varfun.props import check_b_preassociative, check_preassociative
from varfun.quasi import canonical_quasi_inverse


def run(*argv):
    out = io.StringIO()
    status = main(list(argv), out=out)
    return status, out.getvalue()


def table(name):
    return str(DATA / name)


def test_check_pass_and_fail():
    status, text = run("check", table("sum_01_L3.vf"), "--property", "b-preassociative")
    assert status == 0 and text.startswith("PROPERTY b-preassociative: PASS")
    status, text = run("check", table("fail_ab_L2.vf"), "--property", "preassociative")
    assert status == 1 and "witness: x=eps y=a y'=b z=b" in text


def test_factorize_writes_files(tmp_path):
    h, f = tmp_path / "h.vf", tmp_path / "f.vf"
    status, text = run("factorize", table("fail_ab_L2.vf"), "--out", str(h), "--out-outer", str(f))
    assert status == 1 and "witness:" in text and not h.exists()
    status, text = run("factorize", table("sum_01_L3.vf"), "--out", str(h), "--out-outer", str(f))
    fac = factorize(read_table("sum_01_L3.vf"))
    assert status == 0 and h.read_text() == dump_table(fac.H)
    assert f.read_text() == fac.dump_outer()
    status, text = run("factorize", table("sum_01_L3.vf"), "--m", "1")
    assert status == 1 and text.startswith("FACTORIZATION: FAIL")


def test_remove_letter_example():
    status, text = run("family", "remove-letter", "--letter", "a", "--word", "mathematics",
                       "--show-H")
    assert status == 0 and text == "mthemticsaa\n"
    status, text = run("family", "remove-letter", "--letter", "a", "--word", "banana")
    assert text == "bnn\n"


def test_usage_errors_exit_two(capsys):
    assert run("check", table("sum_01_L3.vf"))[0] == 2
    assert run("check", "missing.vf", "--property", "associative")[0] == 2
    assert run("check", table("sum_01_L3.vf"), "--property", "m-generated-range")[0] == 2
    assert run("check", table("sum_01_L3.vf"), "--property", "associative")[0] == 2
    assert run("family", "remove-letter", "--letter", "a", "--alphabet", "abcdefghij",
               "--maxlen", "7")[0] == 2
    assert run("premean", "--kind", "product", "--eval", "2", "-1")[0] == 2
    assert run("census", "--alphabet-size", "2", "--codomain", "nope", "--maxlen", "2")[0] == 2
    err = capsys.readouterr().err
    assert all(line.startswith("varfun: error: ") for line in err.splitlines())


def test_library_and_cli_agree(tmp_path):
    sum01 = read_table("sum_01_L3.vf")
    _, text = run("check", table("sum_01_L3.vf"), "--property", "b-preassociative")
    assert text == check_b_preassociative(sum01).render() + "\n"
    _, text = run("check", table("fail_ab_L2.vf"), "--property", "preassociative")
    assert text == check_preassociative(read_table("fail_ab_L2.vf")).render() + "\n"
    _, text = run("quasi-inverse", table("sum_01_L3.vf"), "--arity", "2")
    assert text == canonical_quasi_inverse(sum01, 2).dump(sum01.codomain)
    _, text = run("kernel", table("sum_01_L3.vf"))
    assert text == componentwise_kernel_report(sum01)[1].render() + "\n"
    _, text = run("census", "--alphabet-size", "2", "--codomain", "lp-words", "--maxlen", "2")
    assert text == run_census(CensusConfig(2, "lp-words", 2)).render()


def test_quasi_inverse_enumeration():
    status, text = run("quasi-inverse", table("sum_01_L3.vf"), "--arity", "2", "--enumerate")
    assert status == 0 and text.count("quasi-inverse v1, arity: 2") == 2
    status, _ = run("quasi-inverse", table("sum_01_L3.vf"), "--arity", "3", "--enumerate",
                    "--budget", "8")
    assert status == 2


def test_kernel_exit_codes():
    assert run("kernel", table("sum_01_L3.vf"))[0] == 1
    status, text = run("kernel", table("swap_ab_L2.vf"))
    assert status == 0 and "nested-relations: PASS" in text


def test_census_formats_and_jobs():
    base = ("census", "--alphabet-size", "2", "--codomain", "symbols:2", "--maxlen", "2",
            "--verify-theorems")
    status, text = run(*base)
    assert status == 0 and "theorem factorization: PASS (64 functions)" in text
    assert run(*base, "--jobs", "2") == (status, text)
    status, tsv = run(*base, "--format", "tsv", "--theorem", "quasi-inverse")
    assert tsv.splitlines()[0] == "section\tname\tvalue"
    assert "checked\tquasi-inverse\t64" in tsv.splitlines()
    assert run("census", "--alphabet-size", "3", "--codomain", "symbols:2", "--maxlen", "4")[0] == 2


def test_timing_only_adds_runtime_lines():
    cases = [("check", table("sum_01_L3.vf"), "--property", "b-preassociative"),
             ("census", "--alphabet-size", "2", "--codomain", "symbols:2", "--maxlen", "2"),
             ("premean", "--kind", "sum", "--check", "--trials", "50")]
    for argv in cases:
        plain = run(*argv)[1].splitlines()
        timed = run(*argv, "--timing")[1].splitlines()
        extra = [line for line in timed if line.startswith("runtime: ")]
        assert len(extra) == 1
        assert [line for line in timed if line not in extra] == plain


def test_premean_and_hchain():
    assert run("premean", "--kind", "sum", "--eval", "1", "2", "3") == (0, "6\n")
    assert run("premean", "--kind", "mean", "--eval", "1", "2") == (0, "3/2\n")
    status, text = run("premean", "--kind", "product", "--eval", "2", "3", "4")
    assert status == 0 and abs(float(text) - 24) <= 24e-9
    status, text = run("premean", "--kind", "product", "--check", "--trials", "200")
    assert status == 0 and "PASS" in text
    assert run("family", "hchain", "--alphabet", "123", "--chain", "113,111,111")[0] == 0
    assert run("family", "hchain", "--alphabet", "abc", "--chain", "bac,bac,bac")[0] == 1
    status, text = run("family", "hchain", "--alphabet", "ab", "--chain", "ab,aa", "--table")
    assert status == 0 and text.startswith("varfun-table")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "varfun", "family", "remove-letter",
                           "--letter", "a", "--word", "mathematics", "--show-H"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "mthemticsaa\n"
    proc = subprocess.run([sys.executable, "-m", "varfun"], capture_output=True, text=True)
    assert proc.returncode == 2


@pytest.mark.parametrize("argv", [["--help"], ["census", "--help"]])
def test_help_exits_cleanly(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv, out=io.StringIO())
    assert exc.value.code == 0
