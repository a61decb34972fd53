from pathlib import Path

import pytest

from varfun import Alphabet, Codomain, VariadicFn, load_table

DATA = Path(__file__).parent / "data"


def read_table(name):
    return load_table((DATA / name).read_text())


def symbols_fn(letters, L, rule):
    """Tabulate rule over words of length 1..L into a symbols codomain."""
    A = Alphabet(letters)
    table = {x: str(rule(x)) for x in A.universe(L, start=1)}
    names = sorted(set(table.values()))
    return VariadicFn(A, Codomain.of_symbols(names), L, table=table)


def string_fn(letters, L, rule, eps=True, **kw):
    A = Alphabet(letters)
    table = {x: rule(x) for x in A.universe(L, start=0 if eps else 1)}
    return VariadicFn(A, Codomain.of_words(A), L, table=table, **kw)


@pytest.fixture
def sum01():
    return read_table("sum_01_L3.vf")


@pytest.fixture
def fail_ab():
    return read_table("fail_ab_L2.vf")


@pytest.fixture
def mean012():
    return read_table("mean_012_L3.vf")


# one PASS/FAIL line per acceptance criterion, shown after the run
ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
