"""Time the compiled search kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Inputs are worst cases for the searches: tables that pass, so every
instance is visited.  Both backends must agree on the results.
"""
import argparse
import time

from varfun import _pyfast
from varfun.funcrep import Codomain, VariadicFn
from varfun.words import Alphabet

try:
    from varfun import _cfast
except ImportError:
    _cfast = None


def passing_tables():
    """(label, function) pairs whose checks run to completion."""
    out = []
    for letters, L in (("01", 9), ("012", 6), ("0123", 5)):
        A = Alphabet(letters)
        # the sum of digits is B-preassociative and preassociative
        table = {x: str(sum(map(int, x))) for x in A.universe(L, start=1)}
        names = sorted(set(table.values()), key=int)
        out.append((f"sum |X|={len(A)} L={L}",
                    VariadicFn(A, Codomain.of_symbols(names), L, table=table)))
    for letters, L in (("abc", 7), ("abcd", 6)):
        A = Alphabet(letters)
        # deleting a letter is associative
        table = {x: x.replace("a", "") for x in A.universe(L)}
        out.append((f"remove-a |X|={len(A)} L={L}",
                    VariadicFn(A, Codomain.of_words(A), L, table=table)))
    return out


def best_of(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = [("python", _pyfast)] + ([("cython", _cfast)] if _cfast else [])
    if _cfast is None:
        print("compiled kernels unavailable; timing the fallback only")
    print(f"{'case':<26}{'kernel':<14}" + "".join(f"{name:>10}" for name, _ in backends)
          + ("   speedup" if len(backends) == 2 else ""))
    for label, f in passing_tables():
        enc = f.encoded()
        lay = enc.layout
        L = f.maxlen
        jobs = [("b-preassoc", lambda m: m.pair_violation(
                    enc.vals, lay.lens, lay.codes, lay.offsets, lay.powers, lay.const, L, 1)),
                ("preassoc", lambda m: m.pair_violation(
                    enc.vals, lay.lens, lay.codes, lay.offsets, lay.powers, lay.const, L, 0))]
        if f.codomain.is_words:
            inner = enc.inner_images()
            jobs.append(("associative", lambda m: m.substitution_violation(
                enc.vals, inner, lay.lens, lay.codes, lay.offsets, lay.powers, L)))
        for kernel, job in jobs:
            times, results = [], []
            for _, module in backends:
                t, r = best_of(lambda: job(module), args.repeat)
                times.append(t)
                results.append(r)
            if any(r != results[0] for r in results):
                raise SystemExit(f"backends disagree on {label} {kernel}: {results}")
            line = f"{label:<26}{kernel:<14}" + "".join(f"{t:>9.4f}s" for t in times)
            if len(times) == 2:
                line += f"{times[0] / times[1]:>9.1f}x"
            print(line)


if __name__ == "__main__":
    main()
