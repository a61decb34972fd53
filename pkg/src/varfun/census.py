"""Exhaustive (or seeded sampled) sweeps over every function on a tiny universe.

A universe is fixed by the alphabet size, the codomain and the bound L.
Inputs are the words of length 1..L in canonical order; functions are
enumerated lexicographically by their value vector over those inputs.
Each function is classified into the nested associativity classes and,
when theorem modes are enabled, every applicable biconditional is
re-checked on it.  The first counterexample in enumeration order halts
the run.
"""
from __future__ import annotations

import time
from array import array
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice, product

import numpy as np

from .errors import (
    BudgetExceeded,
    NotBPreassociative,
    NotMQuasiRangeIdempotent,
    TheoremViolation,
    VarfunError,
)
from .factor import (
    assimilate_prefix,
    build_factorization,
    factorize,
    factorize_m,
    reconstruct_from_prefix,
    verify_factorization,
)
from . import _fast
from .funcrep import Codomain, VariadicFn, dump_table, layout, word_positions
from .kernels import check_nested_relations, componentwise_kernel_report
from .props import (
    check_associative,
    check_b_associative_eps,
    check_b_preassociative,
    check_idempotent_parts,
    check_length_preserving,
    check_m_generated_range,
    check_m_quasi_range_idempotent,
    check_preassociative,
)
from .quasi import canonical_quasi_inverse, iter_quasi_inverses, verify_quasi_inverse
from .words import Alphabet, format_word, in_generated_set

LETTERS = "abcdefghijklmnopqrstuvwxyz"

CLASSES = (
    "b-preassociative",
    "preassociative",
    "associative",
    "associative-length-preserving",
    "b-associative-letters",
    "componentwise-kernel",
)

# theorem modes in report order
THEOREMS = (
    "nesting",            # associative => preassociative => B-preassociative
    "factorization",      # factorize succeeds <=> B-preassociative, output verifies
    "quasi-inverse",      # least-preimage sections obey the section laws
    "all-sections",       # every section sequence (capped) behaves like the canonical one
    "lp-associativity",   # length-preserving: associative <=> B-preassociative and idempotent
    "generated-range",    # m-generated => length-preserving, and m => m+1
    "range-idempotence",  # associative with m-generated F_k => F_(k+p) is (m+p)-QRI
    "prefix-bridge",      # 1-QRI factorization, prefix assimilation and its inverse
    "kernel-nesting",     # componentwise kernel: B-preassociative <=> nested relations
)


@dataclass(frozen=True)
class CensusConfig:
    alphabet_size: int
    codomain: str  # "symbols:k", "words" or "lp-words"
    maxlen: int
    theorems: tuple[str, ...] = ()
    budget: int = 10**6
    sample: int | None = None
    seed: int = 0
    section_cap: int = 256
    jobs: int = 1

    def __post_init__(self):
        if not 1 <= self.alphabet_size <= len(LETTERS):
            raise ValueError("alphabet size must be between 1 and 26")
        if self.maxlen < 1:
            raise ValueError("maxlen must be positive")
        kind = self.codomain
        if kind not in ("words", "lp-words"):
            head, _, size = kind.partition(":")
            if head != "symbols" or not size.isdigit() or not 1 <= int(size) <= 10:
                raise ValueError(f"bad census codomain {kind!r}")
        unknown = set(self.theorems) - set(THEOREMS)
        if unknown:
            raise ValueError(f"unknown theorem modes: {', '.join(sorted(unknown))}")
        if self.sample is not None and self.sample < 1:
            raise ValueError("sample size must be positive")

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(LETTERS[: self.alphabet_size])

    @property
    def string_valued(self) -> bool:
        return self.codomain in ("words", "lp-words")

    def describe(self) -> str:
        return (f"alphabet={self.alphabet.letters} codomain={self.codomain} "
                f"maxlen={self.maxlen}")


@dataclass
class Counterexample:
    index: int
    theorem: str
    table: str
    witness: str


@dataclass
class CensusReport:
    config: CensusConfig
    mode: str
    functions: int
    counts: dict[str, int | None]
    theorems: dict[str, int]
    counterexample: Counterexample | None = None
    runtime: float = field(default=0.0, compare=False)

    def render(self, fmt: str = "text", timing: bool = False) -> str:
        rows = [("universe", "alphabet", self.config.alphabet.letters),
                ("universe", "codomain", self.config.codomain),
                ("universe", "maxlen", str(self.config.maxlen)),
                ("universe", "mode", self.mode),
                ("universe", "functions", str(self.functions))]
        if self.config.sample is not None:
            rows.append(("universe", "seed", str(self.config.seed)))
        for name in CLASSES:
            value = self.counts.get(name)
            rows.append(("class", name, "n/a" if value is None else str(value)))
        for name, checked in self.theorems.items():
            failed = self.counterexample is not None and self.counterexample.theorem == name
            rows.append(("theorem", name, f"{'FAIL' if failed else 'PASS'} {checked}"))
        if timing:
            rows.append(("runtime", "seconds", f"{self.runtime:.3f}"))
        if fmt == "tsv":
            lines = ["section\tname\tvalue"]
            for section, name, value in rows:
                if section == "theorem":
                    verdict, checked = value.split()
                    lines += [f"theorem\t{name}\t{verdict}", f"checked\t{name}\t{checked}"]
                else:
                    lines.append(f"{section}\t{name}\t{value}")
            if self.counterexample is not None:
                c = self.counterexample
                lines.append(f"counterexample\tindex\t{c.index}")
                lines.append(f"counterexample\ttheorem\t{c.theorem}")
            return "\n".join(lines) + "\n"
        if fmt != "text":
            raise ValueError(f"unknown report format {fmt!r}")
        lines = [f"CENSUS {self.config.describe()}",
                 f"mode: {self.mode}",
                 f"functions: {self.functions}"]
        if self.config.sample is not None:
            lines.append(f"seed: {self.config.seed}")
        for section, name, value in rows[5 + (self.config.sample is not None):]:
            if section == "class":
                lines.append(f"class {name}: {value}")
            elif section == "theorem":
                verdict, checked = value.split()
                lines.append(f"theorem {name}: {verdict} ({checked} functions)")
            else:
                lines.append(f"runtime: {value} s")
        if self.counterexample is not None:
            c = self.counterexample
            lines += [f"counterexample: function #{c.index} violates {c.theorem}",
                      c.witness, c.table.rstrip("\n")]
        return "\n".join(lines) + "\n"


# the universe -------------------------------------------------------------------


class _Universe:
    def __init__(self, cfg: CensusConfig):
        self.cfg = cfg
        alphabet = cfg.alphabet
        self.alphabet = alphabet
        self.inputs = alphabet.universe(cfg.maxlen, start=1)
        if cfg.codomain == "words":
            self.codomain = Codomain.of_words(alphabet)
            values = alphabet.universe(cfg.maxlen)
            self.choices = [values] * len(self.inputs)
        elif cfg.codomain == "lp-words":
            self.codomain = Codomain.of_words(alphabet)
            self.choices = [alphabet.words(len(x)) for x in self.inputs]
        else:
            k = int(cfg.codomain.split(":")[1])
            names = tuple(str(i) for i in range(k))
            self.codomain = Codomain.of_symbols(names)
            self.choices = [names] * len(self.inputs)
        self.sizes = [len(c) for c in self.choices]
        total = 1
        for s in self.sizes:
            total *= s
        self.total = total

    def function(self, digits) -> VariadicFn:
        table = {x: c[d] for x, c, d in zip(self.inputs, self.choices, digits)}
        return VariadicFn(self.alphabet, self.codomain, self.cfg.maxlen, table=table,
                          length_preserving=self.cfg.codomain == "lp-words", validate=False)

    def digits(self, index: int) -> list[int]:
        out = []
        for s in reversed(self.sizes):
            index, d = divmod(index, s)
            out.append(d)
        return out[::-1]

    def sampled_digits(self, index: int) -> list[int]:
        rng = np.random.default_rng([self.cfg.seed, index])
        return [int(d) for d in rng.integers(0, np.asarray(self.sizes))]


# per-function checks ------------------------------------------------------------


class _Violation(Exception):
    def __init__(self, theorem, witness):
        super().__init__(theorem)
        self.theorem = theorem
        self.witness = witness


def _expect(cond: bool, theorem: str, witness: str):
    if not cond:
        raise _Violation(theorem, witness)


def _witness_text(report) -> str:
    if report is None:
        return "witness: none"
    if report.witness is not None:
        return f"{report.property}: {report.witness.render()}"
    return f"{report.property}: {report.verdict}"


def _section_sweep(f: VariadicFn, cap: int):
    """Yield (section sequence, H associative) for up to ``cap`` sequences.

    H is built directly as an array of word indices; H is length-preserving
    by construction, so only associativity is left to the search kernel.
    """
    L = f.maxlen
    pos = word_positions(f.alphabet, L)
    lay = layout(f.alphabet.size, L)
    per_arity = []
    for n in range(1, L + 1):
        part = f.part(n)
        options = []
        for g in iter_quasi_inverses(f, n):
            options.append((g, [pos[g.section[v]] for v in part.values()]))
        per_arity.append(options)
    for combo in islice(product(*per_arity), cap):
        h = array("q", [0])
        for _, block in combo:
            h.extend(block)
        count, hit, n_out, _ = _fast.substitution_violation(
            h, h, lay.lens, lay.codes, lay.offsets, lay.powers, L)
        yield [g for g, _ in combo], hit is None and n_out == 0


def _examine(f: VariadicFn, cfg: CensusConfig, modes: frozenset, tally: dict, checked: dict):
    L = f.maxlen
    b_report = check_b_preassociative(f)
    b = b_report.passed
    p_report = check_preassociative(f)
    p = p_report.passed
    tally["b-preassociative"] += b
    tally["preassociative"] += p
    assoc = lp = None
    if cfg.string_valued:
        a_report = check_associative(f)
        assoc = a_report.passed
        lp = check_length_preserving(f).passed
        tally["associative"] += assoc
        tally["associative-length-preserving"] += assoc and lp
        if all(len(v) <= 1 for v in f.table.values()):
            tally["b-associative-letters"] += check_b_associative_eps(f).passed
    relations, kernel_report = componentwise_kernel_report(f)
    tally["componentwise-kernel"] += relations is not None

    # inclusions always hold; a failure here is a counterexample in its own right
    checked["nesting"] += 1
    _expect(not p or b, "nesting", "preassociative but not B-preassociative: "
            + _witness_text(b_report))
    if assoc is not None:
        _expect(not assoc or p, "nesting", "associative but not preassociative: "
                + _witness_text(p_report))

    if "factorization" in modes:
        checked["factorization"] += 1
        try:
            fac = factorize(f)
        except NotBPreassociative as exc:
            _expect(not b, "factorization", "factorize rejected a B-preassociative function: "
                    + _witness_text(exc.report))
            sections = {n: canonical_quasi_inverse(f, n) for n in range(1, L + 1)}
            bad = verify_factorization(f, build_factorization(f, sections))
            _expect(not bad, "factorization",
                    "the least-preimage factorization of a non-B-preassociative function verified")
        else:
            _expect(b, "factorization", "factorize accepted a function failing B-preassociativity: "
                    + _witness_text(b_report))
            report = verify_factorization(f, fac)
            _expect(report.passed, "factorization", _witness_text(report))

    if "quasi-inverse" in modes:
        checked["quasi-inverse"] += 1
        for n in range(1, L + 1):
            report = verify_quasi_inverse(f, n, canonical_quasi_inverse(f, n))
            _expect(report.passed, "quasi-inverse", _witness_text(report))

    if "all-sections" in modes:
        checked["all-sections"] += 1
        for choice, good in _section_sweep(f, cfg.section_cap):
            _expect(good == b, "all-sections",
                    "section choice " + " ".join(format_word(w) for g in choice
                                                 for w in g.section.values())
                    + (" gives a non-associative H" if b else " gives an associative H"))

    if "lp-associativity" in modes and cfg.string_valued and lp:
        checked["lp-associativity"] += 1
        idem = check_idempotent_parts(f).passed
        _expect(assoc == (b and idem), "lp-associativity",
                f"associative={assoc} b-preassociative={b} idempotent={idem}")

    if "generated-range" in modes and cfg.string_valued:
        checked["generated-range"] += 1
        previous = False
        for m in range(1, L + 1):
            gen = check_m_generated_range(f, m).passed
            _expect(not gen or lp, "generated-range",
                    f"{m}-generated range without length preservation")
            _expect(not previous or gen, "generated-range",
                    f"{m - 1}-generated range but not {m}-generated")
            previous = gen

    if "range-idempotence" in modes and cfg.string_valued and assoc:
        checked["range-idempotence"] += 1
        for k in range(1, L + 1):
            outputs = f.part(k).values()
            for m in range(1, L + 1):
                if not all(len(v) == k and in_generated_set(v, m) for v in outputs):
                    continue
                for p in range(1, L - k + 1):
                    r = check_m_quasi_range_idempotent(f, k + p, m + p)
                    _expect(r.passed, "range-idempotence",
                            f"F_{k} is {m}-generated but F_{k + p} is not {m + p}-QRI: "
                            + _witness_text(r))

    if "prefix-bridge" in modes and b:
        qri = all(check_m_quasi_range_idempotent(f, n, 1).passed for n in range(1, L + 1))
        if not qri:
            try:
                factorize_m(f, 1)
            except NotMQuasiRangeIdempotent:
                pass
            else:
                _expect(False, "prefix-bridge", "factorize_m accepted a function that is not 1-QRI")
        else:
            checked["prefix-bridge"] += 1
            fac = factorize_m(f, 1)
            H = fac.H
            _expect(check_m_generated_range(H, 1).passed, "prefix-bridge",
                    "H lacks a 1-generated range")
            H1 = assimilate_prefix(H, 1)
            r = check_b_associative_eps(H1)
            _expect(r.passed, "prefix-bridge", _witness_text(r))
            _expect(reconstruct_from_prefix(H1, 1) == H, "prefix-bridge",
                    "reconstruction from the 1-prefix differs from H")
            for x, hx in H.items():
                _expect(hx == H1(x) * len(x), "prefix-bridge", f"H({x}) != H_[1]({x})^{len(x)}")

    if "kernel-nesting" in modes and relations is not None:
        checked["kernel-nesting"] += 1
        nested = check_nested_relations(relations)
        _expect(b == nested.passed, "kernel-nesting",
                f"b-preassociative={b} nested={nested.passed}: " + relations.render())


def _tally_template(cfg: CensusConfig) -> dict:
    tally = dict.fromkeys(CLASSES, 0)
    if not cfg.string_valued:
        for name in ("associative", "associative-length-preserving", "b-associative-letters"):
            tally[name] = None
    return tally


def _merge(into: dict, other: dict):
    for k, v in other.items():
        if into[k] is not None:
            into[k] += v


def _modes(cfg: CensusConfig) -> frozenset:
    return frozenset(cfg.theorems)


def _run_chunk(cfg: CensusConfig, start: int, stop: int):
    """Process functions start..stop-1; stop early at the first counterexample."""
    universe = _Universe(cfg)
    modes = _modes(cfg)
    checked = dict.fromkeys(("nesting",) + tuple(t for t in THEOREMS if t in modes), 0)
    live = dict.fromkeys(CLASSES, 0)
    sampled = cfg.sample is not None
    for i in range(start, stop):
        digits = universe.sampled_digits(i) if sampled else universe.digits(i)
        f = universe.function(digits)
        try:
            _examine(f, cfg, modes, live, checked)
        except _Violation as exc:
            return i + 1 - start, live, checked, Counterexample(i, exc.theorem, dump_table(f),
                                                                exc.witness)
        except VarfunError as exc:
            return i + 1 - start, live, checked, Counterexample(
                i, "internal-consistency", dump_table(f), f"{type(exc).__name__}: {exc}")
    return stop - start, live, checked, None


def run_census(cfg: CensusConfig) -> CensusReport:
    """Enumerate (or sample) the universe and tally the classes."""
    t0 = time.perf_counter()
    universe = _Universe(cfg)
    if cfg.sample is None:
        if universe.total > cfg.budget:
            raise BudgetExceeded(universe.total, cfg.budget)
        count, mode = universe.total, "exhaustive"
    else:
        count, mode = cfg.sample, "sampled"

    jobs = max(1, cfg.jobs)
    chunks = jobs * 4 if jobs > 1 else 1
    bounds = [count * j // chunks for j in range(chunks + 1)]
    spans = [(bounds[j], bounds[j + 1]) for j in range(chunks) if bounds[j] < bounds[j + 1]]
    if jobs == 1:
        results = [_run_chunk(cfg, a, b) for a, b in spans]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_chunk, [cfg] * len(spans),
                                    [a for a, _ in spans], [b for _, b in spans]))

    tally = _tally_template(cfg)
    checked = dict.fromkeys(("nesting",) + tuple(t for t in THEOREMS if t in cfg.theorems), 0)
    seen = 0
    counterexample = None
    # merge in enumeration order, stopping at the least counterexample
    for done, part_tally, part_checked, cex in results:
        seen += done
        _merge(tally, part_tally)
        _merge(checked, part_checked)
        if cex is not None:
            counterexample = cex
            break
    report = CensusReport(cfg, mode, seen, tally, checked, counterexample,
                          time.perf_counter() - t0)
    if counterexample is None:
        _check_inclusions(report)
    return report


def _check_inclusions(report: CensusReport):
    c = report.counts
    chain = ["b-preassociative", "preassociative"]
    if c["associative"] is not None:
        chain += ["associative", "associative-length-preserving"]
    for wide, narrow in zip(chain, chain[1:]):
        if c[narrow] > c[wide]:
            raise TheoremViolation("nesting", "", f"count({narrow}) > count({wide})")


def verify_theorems(cfg: CensusConfig) -> CensusReport:
    """Run the census with theorem modes (all of them unless configured).

    Raises TheoremViolation carrying the offending table and witness; the
    partial report is attached as ``exc.report``.
    """
    if not cfg.theorems:
        cfg = CensusConfig(**{**cfg.__dict__, "theorems": THEOREMS})
    report = run_census(cfg)
    if report.counterexample is not None:
        c = report.counterexample
        exc = TheoremViolation(c.theorem, c.table, c.witness)
        exc.report = report
        raise exc
    return report


__all__ = ["CensusConfig", "CensusReport", "Counterexample", "THEOREMS", "CLASSES",
           "run_census", "verify_theorems"]
