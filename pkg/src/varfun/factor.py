"""Factorization F_n = f_n ∘ H_n of B-preassociative functions.

H is an associative, length-preserving string function built as
H_n = g_n ∘ F_n from quasi-inverses g_n of the parts F_n, and f_n is F_n
restricted to ran(H_n), which is one-to-one.  Every factorization built
here is re-verified before it is returned.
"""
from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field

from .errors import (
    EmptyPrefixOutput,
    FormatError,
    InternalConsistencyError,
    NotBPreassociative,
    NotMGeneratedRange,
    PartialOuterMap,
)
from .funcrep import Codomain, VariadicFn, _parse_codomain
from .props import (
    FAIL,
    PASS,
    PropertyReport,
    check_associative,
    check_b_preassociative,
    check_length_preserving,
    check_m_generated_range,
    make_witness,
    universe_text,
)
from .quasi import (
    QuasiInverse,
    canonical_quasi_inverse,
    constrained_quasi_inverse,
    load_quasi_inverses,
)
from .words import Alphabet, format_word, parse_word

OUTER_HEADER = "varfun-outer v1"


@dataclass
class Factorization:
    source: VariadicFn
    H: VariadicFn
    outer: dict[int, dict[str, str]] | None  # None: f_n is F restricted to ran(H_n)
    sections: dict[int, QuasiInverse] | None = None
    checked: int = 0
    report: PropertyReport | None = field(default=None, repr=False)

    def outer_map(self, n: int) -> dict[str, str]:
        if self.outer is not None:
            return self.outer[n]
        H = self.H
        return {w: self.source(w) for w in sorted(set(H.part(n).values()),
                                                  key=H.alphabet.sort_key)}

    def dump_outer(self) -> str:
        f = self.source
        lines = [
            OUTER_HEADER,
            f"alphabet: {f.alphabet.letters}",
            f"codomain: {f.codomain.describe()}",
            f"maxlen: {f.maxlen}",
        ]
        fmt = f.codomain.format_value
        for n in range(1, f.maxlen + 1):
            for w, v in self.outer_map(n).items():
                lines.append(f"{format_word(w)} -> {fmt(v)}")
        if self.sections:
            lines.append("provenance:")
            for n in sorted(self.sections):
                lines.append(self.sections[n].dump(f.codomain).rstrip("\n"))
        return "\n".join(lines) + "\n"


def load_outer(text: str):
    """Parse an outer-map file into (alphabet, codomain, outer, sections)."""
    head, _, prov = text.partition("\nprovenance:")
    meta: dict[str, str] = {}
    maps: list[tuple[int, str, str]] = []
    seen_header = False
    for lineno, raw in enumerate(head.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line != OUTER_HEADER:
                raise FormatError(lineno, f"expected {OUTER_HEADER!r}")
            seen_header = True
        elif "->" in line:
            lhs, rhs = (s.strip() for s in line.split("->", 1))
            maps.append((lineno, lhs, rhs))
        elif ":" in line:
            key, value = (s.strip() for s in line.split(":", 1))
            meta[key] = value
        else:
            raise FormatError(lineno, "unexpected line")
    try:
        alphabet = Alphabet(meta["alphabet"])
    except (KeyError, ValueError):
        raise FormatError(0, "missing or bad alphabet") from None
    codomain = _parse_codomain(meta.get("codomain", ""), alphabet)
    outer: dict[int, dict[str, str]] = {}
    for lineno, lhs, rhs in maps:
        w = parse_word(lhs, alphabet)
        outer.setdefault(len(w), {})[w] = codomain.parse_value(rhs, lineno)
    sections = None
    if prov.strip():
        sections = {q.arity: q for q in load_quasi_inverses(prov, alphabet, codomain)}
    return alphabet, codomain, outer, sections


def build_factorization(f: VariadicFn, sections: dict[int, QuasiInverse]) -> Factorization:
    """H_n = g_n ∘ F_n and f_n = F_n|ran(H_n), without any verification."""
    table = {"": ""}
    outer: dict[int, dict[str, str]] = {}
    sort_key = f.alphabet.sort_key
    for n in range(1, f.maxlen + 1):
        g = sections[n]
        image = set()
        for x, v in f.part(n).items():
            try:
                hx = g(v)
            except KeyError:
                raise PartialOuterMap(v, n) from None
            table[x] = hx
            image.add(hx)
        outer[n] = {w: f(w) for w in sorted(image, key=sort_key) if f.defined(w)}
    H = VariadicFn(f.alphabet, Codomain.of_words(f.alphabet), f.maxlen, table=table,
                   length_preserving=True, partial=f.partial, validate=False)
    return Factorization(f, H, outer, dict(sections))


def _checked(f: VariadicFn, fac: Factorization, maxlen=None) -> Factorization:
    report = verify_factorization(f, fac, maxlen)
    if not report:
        raise InternalConsistencyError("factorization failed verification:\n" + report.render())
    fac.report = report
    fac.checked = report.instances_checked
    return fac


def factorize(f: VariadicFn, sections: dict[int, QuasiInverse] | None = None) -> Factorization:
    """Factor a tabulated B-preassociative function.

    ``sections`` optionally fixes the quasi-inverse used at each arity;
    the default is the least-preimage choice.
    """
    if not f.tabulated:
        raise ValueError("procedural functions need factorize_procedural")
    report = check_b_preassociative(f)
    if not report:
        raise NotBPreassociative(report)
    if sections is None:
        sections = {n: canonical_quasi_inverse(f, n) for n in range(1, f.maxlen + 1)}
    return _checked(f, build_factorization(f, sections))


def factorize_m(f: VariadicFn, m: int) -> Factorization:
    """Factorization whose H has an m-generated range."""
    if not f.tabulated:
        raise ValueError("factorize_m needs a tabulated function")
    report = check_b_preassociative(f)
    if not report:
        raise NotBPreassociative(report)
    sections = {n: constrained_quasi_inverse(f, n, m) for n in range(1, f.maxlen + 1)}
    fac = _checked(f, build_factorization(f, sections))
    gen = check_m_generated_range(fac.H, m)
    if not gen:
        raise InternalConsistencyError("constrained factorization lost its m-generated range:\n"
                                       + gen.render())
    return fac


def factorize_procedural(f: VariadicFn, quasi_inverse: Callable[[int, str], str],
                         maxlen: int) -> Factorization:
    """Factor a procedural function with a caller-supplied section g(n, value).

    The laws are verified on every word of length <= maxlen only; the
    number of verified instances is recorded in ``checked``.
    """
    report = check_b_preassociative(f, maxlen)
    if not report:
        raise NotBPreassociative(report)

    def rule(x):
        return quasi_inverse(len(x), f(x)) if x else ""

    H = VariadicFn(f.alphabet, Codomain.of_words(f.alphabet), f.maxlen, rule=rule,
                   eps=True, length_preserving=True, name="H")
    return _checked(f, Factorization(f, H, None), maxlen)


def verify_factorization(f: VariadicFn, fac: Factorization,
                         maxlen: int | None = None) -> PropertyReport:
    """Check every law a factorization must satisfy on the bounded universe."""
    L = f.maxlen if maxlen is None else maxlen
    name = "factorization"
    universe = universe_text(f, L)
    F = f.tabulate(L)
    H = fac.H.tabulate(L)
    count = 0

    def fail(detail, witness=None, n=0):
        return PropertyReport(name, FAIL, count + n, witness, universe, detail=detail)

    if not H.defined("") or H("") != "":
        return fail("H(eps) must be eps")
    lp = check_length_preserving(H)
    count += lp.instances_checked
    if not lp:
        return fail("H is not length-preserving", lp.witness)
    assoc = check_associative(H)
    count += assoc.instances_checked
    if not assoc:
        return fail(f"H is not associative ({assoc.verdict})", assoc.witness)
    for n in range(1, L + 1):
        Fn = F.part(n)
        Hn = H.part(n)
        if fac.outer is not None:
            fn = fac.outer.get(n, {})
        else:
            fn = {w: F(w) for w in set(Hn.values()) if F.defined(w)}
        ran_h = set(Hn.values())
        for w in sorted(ran_h, key=f.alphabet.sort_key):
            count += 1
            if w not in fn:
                return fail(f"f_{n} is undefined on ran(H_{n})", make_witness(f, words=[("w", w)]))
        seen: dict = {}
        for w in sorted(ran_h, key=f.alphabet.sort_key):
            count += 1
            v = fn[w]
            if v in seen:
                return fail(f"f_{n} is not one-to-one",
                            make_witness(f, words=[("w", seen[v]), ("w'", w)],
                                         values=[("value", v)]))
            seen[v] = w
            if not F.defined(w) or F(w) != v:
                got = F(w) if F.defined(w) else "undefined"
                return fail(f"f_{n} differs from F_{n} on ran(H_{n})",
                            make_witness(f, words=[("w", w)], values=[("lhs", v)],
                                         other=[("rhs", got)]))
        for x, v in Fn.items():
            count += 2
            hx = Hn.get(x)
            if hx is None or fn.get(hx) != v:
                return fail(f"F_{n} != f_{n} ∘ H_{n}",
                            make_witness(f, words=[("x", x)], values=[("rhs", v)],
                                         other=[("lhs", fn.get(hx, "undefined"))]))
            if Fn.get(hx) != v:
                return fail(f"F_{n} ∘ H_{n} != F_{n}",
                            make_witness(f, words=[("x", x), ("H(x)", hx)], values=[("rhs", v)]))
    return PropertyReport(name, PASS, count, None, universe)


# prefix assimilation ------------------------------------------------------------


def assimilate_prefix(H: VariadicFn, m: int, maxlen: int | None = None) -> VariadicFn:
    """H_[m](x): the m-prefix of H(x), for H with an m-generated range."""
    report = check_m_generated_range(H, m, maxlen)
    if not report:
        raise NotMGeneratedRange(report)
    cod = Codomain.of_words(H.alphabet)
    if H.tabulated:
        table = {x: v[:m] for x, v in H.items()}
        return VariadicFn(H.alphabet, cod, H.maxlen, table=table, partial=H.partial,
                          validate=False)
    return VariadicFn(H.alphabet, cod, H.maxlen, rule=lambda x: H(x)[:m], eps=H.eps)


def reconstruct_from_prefix(Hm: VariadicFn, m: int) -> VariadicFn:
    """Inverse of :func:`assimilate_prefix`: pad with the last prefix letter."""
    def expand(x, v):
        if len(x) <= m:
            return v
        if len(v) != m or not v:
            raise EmptyPrefixOutput(x)
        return v + v[-1] * (len(x) - m)

    cod = Codomain.of_words(Hm.alphabet)
    if Hm.tabulated:
        table = {x: expand(x, v) for x, v in Hm.items()}
        lp = all(len(x) == len(v) for x, v in table.items())
        return VariadicFn(Hm.alphabet, cod, Hm.maxlen, table=table, length_preserving=lp,
                          partial=Hm.partial, validate=False)
    return VariadicFn(Hm.alphabet, cod, Hm.maxlen, rule=lambda x: expand(x, Hm(x)), eps=Hm.eps)


__all__ = [
    "Factorization", "build_factorization", "factorize", "factorize_m",
    "factorize_procedural", "verify_factorization", "assimilate_prefix",
    "reconstruct_from_prefix", "load_outer",
]
