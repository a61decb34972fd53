"""Decision procedures for the associativity family of properties.

All quantifiers range over the bounded universe of words of length at most
L (the function's maxlen unless a smaller ``maxlen`` is passed).  Each
checker returns a :class:`PropertyReport`; failures carry the least
witness in (length, word) order, so reports are reproducible.
"""
from __future__ import annotations

from array import array
from dataclasses import dataclass

from . import _fast
from .errors import NotLengthPreserving, OutOfDomain, WrongCodomain
from .funcrep import VariadicFn, diagonal_section_m, word_positions
from .words import format_word, in_generated_set

PASS = "pass"
FAIL = "fail"
INSUFFICIENT = "insufficient-tabulation"


@dataclass(frozen=True)
class Witness:
    """Ordered (key, raw value, rendered text) triples."""

    entries: tuple[tuple[str, object, str], ...]

    def __getitem__(self, key):
        for k, raw, _ in self.entries:
            if k == key:
                return raw
        raise KeyError(key)

    def get(self, key, default=None):
        try:
            return self[key]
        except KeyError:
            return default

    def keys(self):
        return [k for k, _, _ in self.entries]

    def render(self) -> str:
        return "witness: " + " ".join(f"{k}={text}" for k, _, text in self.entries)


def make_witness(f: VariadicFn | None, *, words=(), values=(), other=()) -> Witness:
    """Build a witness; ``words`` are inputs, ``values`` are codomain values of f."""
    entries = [(k, w, format_word(w)) for k, w in words]
    fmt = f.codomain.format_value if f is not None else str
    entries += [(k, v, fmt(v)) for k, v in values]
    entries += [(k, v, str(v)) for k, v in other]
    return Witness(tuple(entries))


@dataclass(frozen=True)
class PropertyReport:
    property: str
    verdict: str
    instances_checked: int = 0
    witness: Witness | None = None
    universe: str = ""
    skipped: int = 0
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def __bool__(self):
        return self.passed

    def render(self) -> str:
        lines = [f"PROPERTY {self.property}: {self.verdict.upper()} "
                 f"({self.instances_checked} instances)"]
        if self.universe:
            lines.append(f"universe: {self.universe}")
        if self.skipped:
            lines.append(f"skipped: {self.skipped}")
        if self.witness is not None:
            lines.append(self.witness.render())
        if self.detail:
            lines.append(self.detail)
        return "\n".join(lines)


def universe_text(f: VariadicFn, L: int) -> str:
    return f"words of length <= {L} over {f.alphabet.letters}"


def _bound(f: VariadicFn, maxlen: int | None) -> int:
    L = f.maxlen if maxlen is None else maxlen
    if L < 1 or L > f.maxlen:
        raise OutOfDomain(f"universe bound {L} is outside 1..{f.maxlen}")
    return L


def _require_string_function(f: VariadicFn, what: str):
    cod = f.codomain
    if not cod.is_words or cod.alphabet != f.alphabet:
        raise WrongCodomain(f"{what} needs a string function over its own alphabet")


def _report(name, f, L, verdict, count, witness=None, skipped=0, detail=""):
    return PropertyReport(name, verdict, count, witness, universe_text(f, L), skipped, detail)


# pointwise properties -----------------------------------------------------------


def check_length_preserving(f: VariadicFn, maxlen: int | None = None) -> PropertyReport:
    _require_string_function(f, "length preservation")
    L = _bound(f, maxlen)
    count = 0
    for x, v in f.tabulate(L).items():
        count += 1
        if len(v) != len(x):
            w = make_witness(f, words=[("x", x)], values=[("value", v)])
            return _report("length-preserving", f, L, FAIL, count, w)
    return _report("length-preserving", f, L, PASS, count)


def check_idempotent_parts(f: VariadicFn, maxlen: int | None = None) -> PropertyReport:
    _require_string_function(f, "idempotency of parts")
    L = _bound(f, maxlen)
    if not check_length_preserving(f, L):
        raise NotLengthPreserving("F_n ∘ F_n needs a length-preserving function")
    t = f.tabulate(L)
    count = skipped = 0
    for x, v in t.items():
        if not t.defined(v):
            skipped += 1
            continue
        count += 1
        vv = t(v)
        if vv != v:
            w = make_witness(f, words=[("x", x)], values=[("lhs", vv), ("rhs", v)])
            return _report("idempotent-parts", f, L, FAIL, count, w, skipped)
    return _report("idempotent-parts", f, L, PASS, count, skipped=skipped)


def check_m_generated_range(f: VariadicFn, m: int, maxlen: int | None = None) -> PropertyReport:
    _require_string_function(f, "m-generated range")
    if m < 1:
        raise ValueError("m must be at least 1")
    L = _bound(f, maxlen)
    name = f"{m}-generated-range"
    count = 0
    for x, v in f.tabulate(L).items():
        count += 1
        if len(v) != len(x) or not in_generated_set(v, m):
            w = make_witness(f, words=[("x", x)], values=[("value", v)])
            return _report(name, f, L, FAIL, count, w)
    return _report(name, f, L, PASS, count)


def check_m_quasi_range_idempotent(f: VariadicFn, n: int, m: int) -> PropertyReport:
    """Whether ran(F_n) equals the range of the m-diagonal section."""
    diag = set(diagonal_section_m(f, n, m).values())
    name = f"{m}-quasi-range-idempotent[n={n}]"
    count = 0
    for x, v in f.part(n).items():
        count += 1
        if v not in diag:
            w = make_witness(f, words=[("x", x)], values=[("value", v)])
            return _report(name, f, n, FAIL, count, w)
    return _report(name, f, n, PASS, count)


# pair-premise properties -------------------------------------------------------


def _pair_check(f: VariadicFn, maxlen, mode, name) -> PropertyReport:
    L = _bound(f, maxlen)
    enc = f.encoded(L)
    lay = enc.layout
    count, hit = _fast.pair_violation(enc.vals, lay.lens, lay.codes, lay.offsets,
                                      lay.powers, lay.const, L, mode)
    if hit is None:
        return _report(name, f, L, PASS, count)
    x, y, y2, z = (enc.words[i] for i in hit)
    words = [("x", x), ("y", y), ("y'", y2), ("z", z)]
    if mode == _fast.DEFINETTI:
        words.append(("u", y2[0]))
    w = make_witness(f, words=words, values=[("lhs", f(x + y + z)), ("rhs", f(x + y2 + z))])
    return _report(name, f, L, FAIL, count, w)


def check_preassociative(f: VariadicFn, maxlen: int | None = None) -> PropertyReport:
    return _pair_check(f, maxlen, _fast.PREASSOCIATIVE, "preassociative")


def check_b_preassociative(f: VariadicFn, maxlen: int | None = None) -> PropertyReport:
    return _pair_check(f, maxlen, _fast.B_PREASSOCIATIVE, "b-preassociative")


def check_definetti(f: VariadicFn, maxlen: int | None = None) -> PropertyReport:
    """F(y) = F(u^|y|) implies F(xyz) = F(x u^|y| z) whenever |xz| >= 1."""
    return _pair_check(f, maxlen, _fast.DEFINETTI, "definetti")


# substitution properties --------------------------------------------------------


def _substitution_check(f, L, inner, name, replacement):
    enc = f.encoded(L)
    lay = enc.layout
    count, hit, n_out, first_out = _fast.substitution_violation(
        enc.vals, inner, lay.lens, lay.codes, lay.offsets, lay.powers, L)
    if hit is not None:
        x, y, z = (enc.words[i] for i in hit)
        r = replacement(y)
        w = make_witness(f, words=[("x", x), ("y", y), ("y'", r), ("z", z)],
                         values=[("lhs", f(x + y + z)), ("rhs", f(x + r + z))])
        return _report(name, f, L, FAIL, count, w, n_out)
    if n_out:
        x, y, z = (enc.words[i] for i in first_out)
        w = make_witness(f, words=[("x", x), ("y", y), ("z", z)],
                         values=[("inner", f(y))])
        detail = f"{n_out} instances need values outside the tabulated universe"
        return _report(name, f, L, INSUFFICIENT, count, w, n_out, detail)
    return _report(name, f, L, PASS, count)


def check_associative(f: VariadicFn, maxlen: int | None = None) -> PropertyReport:
    """F(xyz) = F(x F(y) z) on every instance inside the universe."""
    _require_string_function(f, "associativity")
    L = _bound(f, maxlen)
    inner = f.encoded(L).inner_images()
    return _substitution_check(f, L, inner, "associative", f)


def _letter_or_eps(f: VariadicFn, value: str) -> str:
    if f.codomain.is_words:
        return value
    return "" if value == "eps" else value


def check_b_associative_eps(f: VariadicFn, maxlen: int | None = None) -> PropertyReport:
    """F(xyz) = F(x F(y)^|y| z) for functions valued in letters or ε.

    Symbols codomains qualify when every symbol is a letter or ``eps``.
    Instances with F(y) = ε and |y| >= 1 shorten the word; they are
    counted and reported as insufficient rather than compared.
    """
    L = _bound(f, maxlen)
    cod = f.codomain
    if cod.is_words:
        _require_string_function(f, "B-associativity")
    elif not all(s == "eps" or (len(s) == 1 and s in f.alphabet) for s in cod.symbols):
        raise WrongCodomain("B-associativity needs values in the alphabet or eps")
    enc = f.encoded(L)
    letters = []
    for v in enc.values:
        c = _letter_or_eps(f, v)
        if len(c) > 1:
            raise WrongCodomain(f"value {v!r} is neither a letter nor eps")
        letters.append(c)
    index = word_positions(f.alphabet, L)
    inner = []
    for y, vid in zip(enc.words, enc.vals):
        if vid < 0:
            inner.append(-2)
        elif not y:
            inner.append(0)
        elif letters[vid]:
            inner.append(index[letters[vid] * len(y)])
        else:
            inner.append(-1)
    def replacement(y):
        return _letter_or_eps(f, f(y)) * len(y)

    return _substitution_check(f, L, array("q", inner), "b-associative", replacement)


PROPERTIES = {
    "length-preserving": check_length_preserving,
    "associative": check_associative,
    "preassociative": check_preassociative,
    "b-preassociative": check_b_preassociative,
    "b-associative": check_b_associative_eps,
    "definetti": check_definetti,
    "idempotent-parts": check_idempotent_parts,
    "m-generated-range": check_m_generated_range,
    "m-quasi-range-idempotent": check_m_quasi_range_idempotent,
}
