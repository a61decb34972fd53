"""Command-line frontend.

Exit codes: 0 pass or success, 1 property failure or theorem
counterexample (witness printed), 2 usage, format or domain error.
"""
from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from .census import THEOREMS, CensusConfig, run_census, verify_theorems
from .errors import (
    NotBPreassociative,
    NotMQuasiRangeIdempotent,
    PropertyViolation,
    TheoremViolation,
    VarfunError,
)
from .factor import factorize, factorize_m
from .families import (
    PREMEANS,
    hchain_condition,
    hchain_fn,
    premean_check_bpa,
    premean_eval,
    remove_letter_fn,
    remove_letter_H,
)
from .funcrep import dump_table, load_table
from .kernels import check_nested_relations, componentwise_kernel_report
from .props import PROPERTIES
from .quasi import canonical_quasi_inverse, enumerate_quasi_inverses
from .words import Alphabet, format_word, parse_word

TABLE_GUARD = 10**6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _global_options() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand's absent flag from overwriting the top-level value
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed (default 0)")
    p.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                   help="print runtimes")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_options()
    parser = _Parser(prog="varfun", parents=[common],
                     description="Associativity-family properties of variadic functions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="check one property of a table")
    p.add_argument("file")
    p.add_argument("--property", required=True, choices=sorted(PROPERTIES))
    p.add_argument("--m", type=int, help="m for the generated-range properties")
    p.add_argument("--arity", type=int, help="arity for m-quasi-range-idempotent")
    p.add_argument("--maxlen", type=int, help="check words up to this length only")

    p = sub.add_parser("factorize", parents=[common], help="factor a B-preassociative table")
    p.add_argument("file")
    p.add_argument("--m", type=int, help="ask for an m-generated range")
    p.add_argument("--out", help="write H here")
    p.add_argument("--out-outer", help="write the outer maps f_n here")

    p = sub.add_parser("quasi-inverse", parents=[common], help="sections of an n-ary part")
    p.add_argument("file")
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--enumerate", action="store_true", help="list every section")
    p.add_argument("--budget", type=int, default=256)

    p = sub.add_parser("kernel", parents=[common], help="detect a componentwise kernel")
    p.add_argument("file")

    p = sub.add_parser("census", parents=[common], help="sweep a tiny universe")
    p.add_argument("--alphabet-size", type=int, required=True)
    p.add_argument("--codomain", required=True, help="symbols:k, words or lp-words")
    p.add_argument("--maxlen", type=int, required=True)
    p.add_argument("--verify-theorems", action="store_true")
    p.add_argument("--theorem", action="append", choices=THEOREMS,
                   help="restrict verification to these theorems (repeatable)")
    p.add_argument("--sample", type=int)
    p.add_argument("--budget", type=int, default=10**6)
    p.add_argument("--section-cap", type=int, default=256)
    p.add_argument("--format", choices=("text", "tsv"), default="text")

    p = sub.add_parser("family", parents=[common], help="built-in function families")
    fam = p.add_subparsers(dest="family", required=True, parser_class=_Parser)
    q = fam.add_parser("remove-letter", parents=[common])
    q.add_argument("--letter", required=True)
    q.add_argument("--alphabet", help="defaults to the letters of --word")
    q.add_argument("--word", help="evaluate at this word")
    q.add_argument("--show-H", action="store_true", help="use the length-preserving H")
    q.add_argument("--maxlen", type=int, help="emit the table up to this length")
    q = fam.add_parser("hchain", parents=[common])
    q.add_argument("--alphabet", required=True)
    q.add_argument("--chain", required=True,
                   help="comma-separated unary operations, each as images in alphabet order")
    q.add_argument("--table", action="store_true", help="emit the string function table")
    q = fam.add_parser("premean", parents=[common])
    q.add_argument("--kind", required=True, choices=sorted(PREMEANS))
    q.add_argument("values", nargs="+")

    p = sub.add_parser("premean", parents=[common], help="sampled check of pre-means")
    p.add_argument("--kind", required=True, choices=sorted(PREMEANS))
    p.add_argument("--check", action="store_true")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--eval", nargs="+", metavar="X")
    return parser


# subcommands -------------------------------------------------------------------


def _read_table(path: str):
    with open(path, encoding="utf-8") as fh:
        return load_table(fh.read())


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _report_exit(out, report) -> int:
    out.write(report.render() + "\n")
    return 0 if report.passed else 1


def cmd_check(args, out) -> int:
    f = _read_table(args.file)
    name = args.property
    checker = PROPERTIES[name]
    if name == "m-quasi-range-idempotent":
        if args.arity is None or args.m is None:
            raise UsageError("m-quasi-range-idempotent needs --arity and --m")
        return _report_exit(out, checker(f, args.arity, args.m))
    if name == "m-generated-range":
        if args.m is None:
            raise UsageError("m-generated-range needs --m")
        return _report_exit(out, checker(f, args.m, args.maxlen))
    return _report_exit(out, checker(f, args.maxlen))


def cmd_factorize(args, out) -> int:
    f = _read_table(args.file)
    try:
        fac = factorize(f) if args.m is None else factorize_m(f, args.m)
    except NotBPreassociative as exc:
        out.write(exc.report.render() + "\n")
        return 1
    except NotMQuasiRangeIdempotent as exc:
        out.write(f"FACTORIZATION: FAIL\n{exc}\n")
        return 1
    out.write(fac.report.render() + "\n")
    if args.out:
        _write(args.out, dump_table(fac.H))
    else:
        out.write(dump_table(fac.H))
    if args.out_outer:
        _write(args.out_outer, fac.dump_outer())
    else:
        out.write(fac.dump_outer())
    return 0


def cmd_quasi_inverse(args, out) -> int:
    f = _read_table(args.file)
    n = args.arity
    if not 1 <= n <= f.maxlen:
        raise UsageError(f"arity must be between 1 and {f.maxlen}")
    sections = (enumerate_quasi_inverses(f, n, args.budget) if args.enumerate
                else [canonical_quasi_inverse(f, n)])
    for g in sections:
        out.write(g.dump(f.codomain))
    return 0


def cmd_kernel(args, out) -> int:
    f = _read_table(args.file)
    relations, report = componentwise_kernel_report(f)
    out.write(report.render() + "\n")
    if relations is None:
        return 1
    return _report_exit(out, check_nested_relations(relations))


def cmd_census(args, out) -> int:
    theorems = ()
    if args.verify_theorems:
        theorems = tuple(t for t in THEOREMS if t in set(args.theorem)) if args.theorem \
            else THEOREMS
    elif args.theorem:
        raise UsageError("--theorem needs --verify-theorems")
    try:
        cfg = CensusConfig(args.alphabet_size, args.codomain, args.maxlen, theorems=theorems,
                           budget=args.budget, sample=args.sample, seed=args.seed,
                           section_cap=args.section_cap, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        report = verify_theorems(cfg) if theorems else run_census(cfg)
    except TheoremViolation as exc:
        report = getattr(exc, "report", None)
        if report is None:
            out.write(f"{exc}\n")
        else:
            out.write(report.render(args.format, args.timing))
        return 1
    out.write(report.render(args.format, args.timing))
    return 0


def _emit_or_eval(out, f, word):
    if word is not None:
        out.write(format_word(f(word)) + "\n")
    else:
        out.write(dump_table(f.tabulate()))


def _guard(alphabet: Alphabet, maxlen: int):
    if alphabet.size ** maxlen > TABLE_GUARD:
        raise UsageError(f"|X|^L = {alphabet.size}^{maxlen} exceeds the table guard "
                         f"of {TABLE_GUARD} entries")


def cmd_family(args, out) -> int:
    if args.family == "remove-letter":
        word = parse_word(args.word) if args.word is not None else None
        letters = args.alphabet
        if letters is None:
            if word is None:
                raise UsageError("give --alphabet or --word")
            letters = "".join(dict.fromkeys(word + args.letter))
        alphabet = Alphabet(letters)
        if word is not None:
            alphabet.check(word)
            bound = max(len(word), 1)
        else:
            if args.maxlen is None:
                raise UsageError("give --word or --maxlen")
            bound = args.maxlen
            _guard(alphabet, bound)
        make = remove_letter_H if args.show_H else remove_letter_fn
        _emit_or_eval(out, make(args.letter, alphabet, bound), word)
        return 0
    if args.family == "hchain":
        alphabet = Alphabet(args.alphabet)
        chain = args.chain.split(",")
        if args.table:
            _guard(alphabet, len(chain))
            out.write(dump_table(hchain_fn(chain, alphabet)))
            return 0
        return _report_exit(out, hchain_condition(chain, alphabet))
    spec = PREMEANS[args.kind]
    out.write(_format_number(premean_eval(spec, _numbers(args.values))) + "\n")
    return 0


def _numbers(tokens):
    try:
        return [Fraction(t) for t in tokens]
    except ValueError:
        raise UsageError(f"not a number in {tokens!r}") from None


def _format_number(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return repr(v)


def cmd_premean(args, out) -> int:
    spec = PREMEANS[args.kind]
    if not args.check and not args.eval:
        raise UsageError("give --check or --eval")
    status = 0
    if args.eval:
        out.write(_format_number(premean_eval(spec, _numbers(args.eval))) + "\n")
    if args.check:
        report = premean_check_bpa(spec, args.trials, args.seed, args.tol)
        status = _report_exit(out, report)
    return status


COMMANDS = {
    "check": cmd_check,
    "factorize": cmd_factorize,
    "quasi-inverse": cmd_quasi_inverse,
    "kernel": cmd_kernel,
    "census": cmd_census,
    "family": cmd_family,
    "premean": cmd_premean,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        for name, default in (("jobs", 1), ("seed", 0), ("timing", False)):
            if not hasattr(args, name):
                setattr(args, name, default)
        t0 = time.perf_counter()
        status = COMMANDS[args.command](args, out)
        if args.timing and args.command != "census":
            out.write(f"runtime: {time.perf_counter() - t0:.3f} s\n")
        return status
    except UsageError as exc:
        sys.stderr.write(f"varfun: error: {exc}\n")
        return 2
    except PropertyViolation as exc:
        out.write(exc.report.render() + "\n")
        return 1
    except (VarfunError, OSError, ValueError) as exc:
        sys.stderr.write(f"varfun: error: {type(exc).__name__}: {exc}\n".replace("\n", " ")
                         .rstrip() + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
