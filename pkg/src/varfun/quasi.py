"""Quasi-inverses (sections) of the n-ary parts of a function.

A quasi-inverse of F_n is stored with domain exactly ran(F_n): a map
sending each attained value to one of its preimages.  All domains are
finite, so sections are built by explicit least-preimage choice.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from itertools import product
from math import prod

from .errors import BudgetExceeded, FormatError, NotMQuasiRangeIdempotent
from .funcrep import Codomain, VariadicFn, kernel_partition
from .props import FAIL, PASS, PropertyReport, check_m_quasi_range_idempotent, make_witness
from .words import Alphabet, format_word, in_generated_set, parse_word

QUASI_HEADER = "quasi-inverse v1"


@dataclass(frozen=True)
class QuasiInverse:
    arity: int
    section: dict  # value -> word of length arity

    def __call__(self, value):
        return self.section[value]

    def __contains__(self, value):
        return value in self.section

    def image(self) -> set[str]:
        return set(self.section.values())

    def dump(self, codomain: Codomain) -> str:
        lines = [f"{QUASI_HEADER}, arity: {self.arity}"]
        for v, w in self.section.items():
            lines.append(f"{codomain.format_value(v)} -> {format_word(w)}")
        return "\n".join(lines) + "\n"


def load_quasi_inverse(text: str, alphabet: Alphabet, codomain: Codomain) -> QuasiInverse:
    return load_quasi_inverses(text, alphabet, codomain)[0]


def load_quasi_inverses(text: str, alphabet: Alphabet, codomain: Codomain) -> list[QuasiInverse]:
    """Parse one or more consecutive quasi-inverse blocks."""
    out: list[QuasiInverse] = []
    arity = None
    section: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith(QUASI_HEADER):
            if arity is not None:
                out.append(QuasiInverse(arity, section))
            try:
                key, value = line[len(QUASI_HEADER):].lstrip(", ").split(":")
                if key.strip() != "arity":
                    raise ValueError
                arity = int(value)
            except ValueError:
                raise FormatError(lineno, "malformed quasi-inverse header") from None
            section = {}
            continue
        if arity is None or "->" not in line:
            raise FormatError(lineno, "expected a quasi-inverse header or mapping")
        lhs, rhs = (s.strip() for s in line.split("->", 1))
        v = codomain.parse_value(lhs, lineno)
        w = parse_word(rhs, alphabet)
        if len(w) != arity:
            raise FormatError(lineno, f"section value {rhs!r} does not have length {arity}")
        if v in section:
            raise FormatError(lineno, f"duplicate value {lhs!r}")
        section[v] = w
    if arity is None:
        raise FormatError(1, "no quasi-inverse found")
    out.append(QuasiInverse(arity, section))
    return out


def _sorted_section(f: VariadicFn, section: dict) -> dict:
    key = f.codomain.sort_key
    return {v: section[v] for v in sorted(section, key=key)}


def canonical_quasi_inverse(f: VariadicFn, n: int) -> QuasiInverse:
    """Section choosing the lexicographically least preimage of each value."""
    section: dict = {}
    for x, v in f.part(n).items():
        section.setdefault(v, x)
    return QuasiInverse(n, _sorted_section(f, section))


def constrained_quasi_inverse(f: VariadicFn, n: int, m: int) -> QuasiInverse:
    """Section whose values all lie in X_m^n (least such preimage)."""
    report = check_m_quasi_range_idempotent(f, n, m)
    if not report:
        raise NotMQuasiRangeIdempotent(n, m, report.witness["value"])
    section: dict = {}
    for x, v in f.part(n).items():
        if v not in section and in_generated_set(x, m):
            section[v] = x
    return QuasiInverse(n, _sorted_section(f, section))


def count_quasi_inverses(f: VariadicFn, n: int) -> int:
    return prod(len(c) for c in kernel_partition(f, n))


def iter_quasi_inverses(f: VariadicFn, n: int):
    """Lazily yield every section of F_n, ordered by the preimages chosen."""
    classes = kernel_partition(f, n)
    key = f.codomain.sort_key
    part = f.part(n)
    classes.sort(key=lambda c: key(part[c[0]]))
    values = [part[c[0]] for c in classes]
    for choice in product(*classes):
        yield QuasiInverse(n, dict(zip(values, choice)))


def enumerate_quasi_inverses(f: VariadicFn, n: int, budget: int = 256) -> list[QuasiInverse]:
    total = count_quasi_inverses(f, n)
    if total > budget:
        raise BudgetExceeded(total, budget)
    return list(iter_quasi_inverses(f, n))


def verify_quasi_inverse(f: VariadicFn, n: int, g) -> PropertyReport:
    """Check F∘g∘F = F, (g∘F)∘(g∘F) = g∘F and injectivity of F on ran(g∘F)."""
    name = f"quasi-inverse[n={n}]"
    universe = f"words of length {n} over {f.alphabet.letters}"
    part = f.part(n)

    def fail(count, witness, detail=""):
        return PropertyReport(name, FAIL, count, witness, universe, detail=detail)

    section = g.section if isinstance(g, QuasiInverse) else g
    count = 0
    for x, v in part.items():
        if v not in section:
            return fail(count, make_witness(f, words=[("x", x)], values=[("value", v)]),
                        "section is undefined on an attained value")
    h = {}
    for x, v in part.items():
        count += 1
        gx = section[v]
        if gx not in part:
            return fail(count, make_witness(f, words=[("x", x), ("g(F(x))", gx)]),
                        "section leaves the arity")
        back = part[gx]
        if back != v:
            return fail(count, make_witness(f, words=[("x", x)],
                                            values=[("lhs", back), ("rhs", v)]),
                        "F∘g∘F != F")
        h[x] = gx
    for x, hx in h.items():
        count += 1
        if h[hx] != hx:
            return fail(count, make_witness(f, words=[("x", x), ("lhs", h[hx]), ("rhs", hx)]),
                        "H∘H != H")
    seen: dict = {}
    for w in sorted(set(h.values()), key=f.alphabet.sort_key):
        count += 1
        v = part[w]
        if v in seen:
            return fail(count, make_witness(f, words=[("x", seen[v]), ("x'", w)],
                                            values=[("value", v)]),
                        "F is not one-to-one on ran(g∘F)")
        seen[v] = w
    return PropertyReport(name, PASS, count, None, universe)


def is_quasi_inverse(f: Mapping, g: Mapping) -> bool:
    """Whether g is a quasi-inverse of f, both given as finite maps."""
    ran_f = set(f.values())
    for y in ran_f:
        if y not in g or g[y] not in f or f[g[y]] != y:
            return False
    return {g[y] for y in ran_f} == set(g.values())
