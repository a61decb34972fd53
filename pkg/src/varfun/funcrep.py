"""Variadic functions on a bounded universe of words.

A :class:`VariadicFn` is either *tabulated* (an explicit map from the
words of length 1..L, optionally ε, to codomain values) or *procedural*
(a rule with a declared evaluation bound).  Codomain values are plain
strings: symbol names, or words over the alphabet.
"""
from __future__ import annotations

from array import array
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import (
    DuplicateEntry,
    FormatError,
    MissingEntry,
    NotLengthPreserving,
    OutOfDomain,
    PartialOuterMap,
    UnknownLetter,
    WrongCodomain,
)
from .words import EPS_TOKEN, Alphabet, count_words, format_word, parse_word

TABLE_HEADER = "varfun-table v1"
TABULATION_LIMIT = 10**6


@dataclass(frozen=True)
class Codomain:
    kind: str  # "symbols" or "words"
    symbols: tuple[str, ...] = ()
    alphabet: Alphabet | None = None
    _rank: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind == "symbols":
            if not self.symbols:
                raise ValueError("a symbols codomain needs at least one symbol")
            if len(set(self.symbols)) != len(self.symbols):
                raise ValueError("symbol names must be distinct")
            for s in self.symbols:
                if not s or any(c.isspace() for c in s) or "#" in s or s == "->":
                    raise ValueError(f"unusable symbol name {s!r}")
            object.__setattr__(self, "_rank", {s: i for i, s in enumerate(self.symbols)})
        elif self.kind == "words":
            if self.alphabet is None:
                raise ValueError("a words codomain needs an alphabet")
            object.__setattr__(self, "_rank", {})
        else:
            raise ValueError(f"unknown codomain kind {self.kind!r}")

    @classmethod
    def of_words(cls, alphabet: Alphabet) -> Codomain:
        return cls("words", alphabet=alphabet)

    @classmethod
    def of_symbols(cls, names) -> Codomain:
        return cls("symbols", symbols=tuple(names))

    @property
    def is_words(self) -> bool:
        return self.kind == "words"

    def __contains__(self, value) -> bool:
        if self.kind == "symbols":
            return value in self._rank
        return isinstance(value, str) and self.alphabet.owns(value)

    def sort_key(self, value):
        if self.kind == "symbols":
            return self._rank[value]
        return self.alphabet.sort_key(value)

    def describe(self) -> str:
        if self.kind == "symbols":
            return "symbols " + " ".join(self.symbols)
        return "words"

    def format_value(self, value: str) -> str:
        return format_word(value) if self.kind == "words" else value

    def parse_value(self, token: str, line: int | None = None) -> str:
        if self.kind == "words":
            return parse_word(token, self.alphabet)
        if token not in self._rank:
            raise FormatError(line, f"unknown symbol {token!r}")
        return token


class VariadicFn:
    """A function from words of length <= maxlen to a codomain.

    ``table`` maps words to values; lengths 1..maxlen must be covered unless
    ``partial`` is set (missing words are then outside the domain), and an
    entry for ε is optional.  ``rule`` is an alternative evaluation
    procedure; ``maxlen`` is then its evaluation bound and ``eps`` says
    whether ε belongs to the domain.
    """

    def __init__(
        self,
        alphabet: Alphabet,
        codomain: Codomain,
        maxlen: int,
        *,
        table: Mapping[str, str] | None = None,
        rule: Callable[[str], str] | None = None,
        length_preserving: bool = False,
        partial: bool = False,
        eps: bool = False,
        name: str | None = None,
        validate: bool = True,
    ):
        if (table is None) == (rule is None):
            raise ValueError("give exactly one of table or rule")
        if maxlen < 1:
            raise ValueError("maxlen must be positive")
        self.alphabet = alphabet
        self.codomain = codomain
        self.maxlen = maxlen
        self.length_preserving = length_preserving
        self.partial = partial
        self.name = name
        self.rule = rule
        self._encoded = {}
        if table is not None:
            self.table = dict(table)
            self.eps = "" in self.table
            if validate:
                self._validate()
        else:
            self.table = None
            self.eps = eps

    def _validate(self):
        alphabet, codomain, L = self.alphabet, self.codomain, self.maxlen
        for x, v in self.table.items():
            alphabet.check(x)
            if len(x) > L:
                raise OutOfDomain(f"entry {x!r} is longer than maxlen {L}")
            if v not in codomain:
                if codomain.is_words:
                    codomain.alphabet.check(v)
                raise WrongCodomain(f"value {v!r} is not in the codomain")
        if not self.partial:
            expected = count_words(alphabet.size, L, start=1) + self.eps
            if len(self.table) != expected:
                for x in alphabet.universe(L, start=1):
                    if x not in self.table:
                        raise MissingEntry(x)
        if self.length_preserving:
            if not codomain.is_words:
                raise WrongCodomain("only string functions can be length-preserving")
            for x, v in self.table.items():
                if len(v) != len(x):
                    raise NotLengthPreserving(f"|F({format_word(x)})| != {len(x)}")

    # evaluation -----------------------------------------------------------

    @property
    def tabulated(self) -> bool:
        return self.table is not None

    @property
    def is_string_function(self) -> bool:
        return self.codomain.is_words

    def defined(self, x: str) -> bool:
        if self.table is not None:
            return x in self.table
        return len(x) <= self.maxlen and (bool(x) or self.eps) and self.alphabet.owns(x)

    def __call__(self, x: str) -> str:
        if self.table is not None:
            try:
                return self.table[x]
            except KeyError:
                if not self.alphabet.owns(x):
                    raise UnknownLetter(next(c for c in x if c not in self.alphabet),
                                        self.alphabet.letters) from None
                raise OutOfDomain(f"{format_word(x)!r} is outside the domain") from None
        if not self.defined(x):
            if not self.alphabet.owns(x):
                self.alphabet.check(x)
            raise OutOfDomain(f"{format_word(x)!r} is outside the domain")
        return self.rule(x)

    def part(self, n: int) -> dict[str, str]:
        """The n-ary part as an explicit map over its defined inputs."""
        self._check_arity(n)
        if self.table is not None:
            t = self.table
            return {x: t[x] for x in self.alphabet.words(n) if x in t}
        return {x: self.rule(x) for x in self.alphabet.words(n)}

    def _check_arity(self, n: int):
        if n > self.maxlen or n < 0:
            raise OutOfDomain(f"arity {n} is outside 0..{self.maxlen}")
        if n == 0 and not self.eps:
            raise OutOfDomain("ε is outside the domain")
        if self.table is None and self.alphabet.size**n > TABULATION_LIMIT:
            raise OutOfDomain(f"arity {n} is too large to enumerate")

    def items(self):
        """Defined (word, value) pairs in canonical order."""
        if self.table is not None:
            t = self.table
            for x in self.alphabet.universe(self.maxlen):
                if x in t:
                    yield x, t[x]
        else:
            for x in self.alphabet.universe(self.maxlen, start=0 if self.eps else 1):
                yield x, self.rule(x)

    def tabulate(self, maxlen: int | None = None) -> VariadicFn:
        """Explicit table on words of length <= maxlen (default: the bound)."""
        L = self.maxlen if maxlen is None else maxlen
        if L > self.maxlen:
            raise OutOfDomain(f"cannot tabulate beyond the evaluation bound {self.maxlen}")
        if self.table is not None and L == self.maxlen:
            return self
        if count_words(self.alphabet.size, L) > TABULATION_LIMIT:
            raise OutOfDomain(f"{self.alphabet.size}^{L} words exceed the tabulation limit")
        if self.table is not None:
            t = {x: v for x, v in self.table.items() if len(x) <= L}
        else:
            start = 0 if self.eps else 1
            t = {x: self.rule(x) for x in self.alphabet.universe(L, start=start)}
        return VariadicFn(
            self.alphabet, self.codomain, L, table=t,
            length_preserving=self.length_preserving, partial=self.partial,
            name=self.name, validate=False,
        )

    def encoded(self, maxlen: int | None = None) -> Encoded:
        L = self.maxlen if maxlen is None else maxlen
        enc = self._encoded.get(L)
        if enc is None:
            enc = self._encoded[L] = _encode(self.tabulate(L))
        return enc

    def __eq__(self, other):
        # same graph, same function; the length-preserving flag is only a declaration
        if not isinstance(other, VariadicFn):
            return NotImplemented
        if self.table is None or other.table is None:
            return self is other
        return (
            self.alphabet == other.alphabet
            and self.codomain == other.codomain
            and self.maxlen == other.maxlen
            and self.partial == other.partial
            and self.table == other.table
        )

    __hash__ = None

    def __repr__(self):
        kind = "table" if self.tabulated else "rule"
        label = f" {self.name}" if self.name else ""
        return (f"<VariadicFn{label} {kind} over {self.alphabet.letters!r}, "
                f"maxlen={self.maxlen}, codomain={self.codomain.describe()}>")


def evaluate(f: VariadicFn, x: str) -> str:
    return f(x)


# text format ---------------------------------------------------------------


def load_table(text: str) -> VariadicFn:
    header_seen = False
    meta: dict[str, str] = {}
    entries: list[tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not header_seen:
            if line != TABLE_HEADER:
                raise FormatError(lineno, f"expected {TABLE_HEADER!r}")
            header_seen = True
            continue
        if "->" in line:
            lhs, rhs = (s.strip() for s in line.split("->", 1))
            if not lhs or not rhs or " " in lhs or " " in rhs:
                raise FormatError(lineno, "malformed mapping line")
            entries.append((lineno, lhs, rhs))
            continue
        if ":" not in line:
            raise FormatError(lineno, "expected 'key: value' or a mapping")
        if entries:
            raise FormatError(lineno, "header line after mappings")
        key, value = (s.strip() for s in line.split(":", 1))
        if key in meta:
            raise FormatError(lineno, f"repeated header {key!r}")
        meta[key] = value
    if not header_seen:
        raise FormatError(1, "empty table file")
    for key in ("alphabet", "codomain", "maxlen"):
        if key not in meta:
            raise FormatError(0, f"missing header {key!r}")
    unknown = set(meta) - {"alphabet", "codomain", "maxlen", "length-preserving", "domain"}
    if unknown:
        raise FormatError(0, f"unknown header {sorted(unknown)[0]!r}")
    try:
        alphabet = Alphabet(meta["alphabet"])
    except ValueError as exc:
        raise FormatError(0, str(exc)) from None
    codomain = _parse_codomain(meta["codomain"], alphabet)
    try:
        maxlen = int(meta["maxlen"])
    except ValueError:
        raise FormatError(0, f"bad maxlen {meta['maxlen']!r}") from None
    lp = meta.get("length-preserving", "false")
    if lp not in ("true", "false"):
        raise FormatError(0, "length-preserving must be true or false")
    domain = meta.get("domain", "total")
    if domain not in ("total", "partial"):
        raise FormatError(0, "domain must be total or partial")

    table: dict[str, str] = {}
    for lineno, lhs, rhs in entries:
        x = parse_word(lhs, alphabet)
        if len(x) > maxlen:
            raise FormatError(lineno, f"word {lhs!r} is longer than maxlen {maxlen}")
        if x in table:
            raise DuplicateEntry(x, lineno)
        table[x] = codomain.parse_value(rhs, lineno)
    return VariadicFn(alphabet, codomain, maxlen, table=table,
                      length_preserving=lp == "true", partial=domain == "partial")


def _parse_codomain(spec: str, alphabet: Alphabet) -> Codomain:
    parts = spec.split()
    if parts == ["words"]:
        return Codomain.of_words(alphabet)
    if parts and parts[0] == "symbols" and len(parts) > 1:
        try:
            return Codomain.of_symbols(parts[1:])
        except ValueError as exc:
            raise FormatError(0, str(exc)) from None
    raise FormatError(0, f"bad codomain {spec!r}")


def dump_table(f: VariadicFn) -> str:
    """Canonical text form; mappings sorted by (length, word)."""
    if not f.tabulated:
        raise ValueError("only tabulated functions serialize; call tabulate() first")
    lines = [
        TABLE_HEADER,
        f"alphabet: {f.alphabet.letters}",
        f"codomain: {f.codomain.describe()}",
        f"maxlen: {f.maxlen}",
    ]
    if f.length_preserving:
        lines.append("length-preserving: true")
    if f.partial:
        lines.append("domain: partial")
    fmt = f.codomain.format_value
    for x, v in f.items():
        lines.append(f"{format_word(x)} -> {fmt(v)}")
    return "\n".join(lines) + "\n"


# derived maps --------------------------------------------------------------


def diagonal_section_m(f: VariadicFn, n: int, m: int) -> dict[str, str]:
    """Map yz -> F(y z^(n-min(n,m)+1)) over words yz of length min(n, m)."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if n < 1:
        raise OutOfDomain("diagonal sections are defined for arities >= 1")
    f._check_arity(n)
    j = min(n, m)
    out = {}
    for w in f.alphabet.words(j):
        x = w + w[-1] * (n - j)
        if f.defined(x):
            out[w] = f(x)
    return out


def range_of(f: VariadicFn, n: int) -> tuple[str, ...]:
    values = set(f.part(n).values())
    return tuple(sorted(values, key=f.codomain.sort_key))


def kernel_partition(f: VariadicFn, n: int) -> list[tuple[str, ...]]:
    """Classes of X^n with equal F-value, ordered by least representative."""
    classes: dict[str, list[str]] = {}
    for x, v in f.part(n).items():
        classes.setdefault(v, []).append(x)
    return [tuple(c) for c in classes.values()]


def compose_unary(g, f: VariadicFn, codomain: Codomain | None = None, *,
                  length_preserving: bool = False) -> VariadicFn:
    """The function whose n-ary part is g_n ∘ F_n.

    ``g`` maps each arity to a dict or callable, or is itself a callable
    ``g(n, value)``.  The ε entry is kept only when ``g`` covers arity 0.
    """
    if codomain is None:
        codomain = Codomain.of_words(f.alphabet)

    def outer(n):
        if callable(g) and not isinstance(g, Mapping):
            return lambda v: g(n, v)
        gn = g.get(n) if isinstance(g, Mapping) else None
        if gn is None:
            return None
        if isinstance(gn, Mapping):
            return gn.__getitem__
        return gn

    def apply(n, v):
        gn = outer(n)
        if gn is None:
            raise PartialOuterMap(v, n)
        try:
            return gn(v)
        except KeyError:
            raise PartialOuterMap(v, n) from None

    if f.tabulated:
        table = {}
        for x, v in f.items():
            n = len(x)
            if n == 0 and outer(0) is None:
                continue
            table[x] = apply(n, v)
        return VariadicFn(f.alphabet, codomain, f.maxlen, table=table,
                          length_preserving=length_preserving, partial=f.partial)
    return VariadicFn(f.alphabet, codomain, f.maxlen,
                      rule=lambda x: apply(len(x), f(x)),
                      eps=f.eps and outer(0) is not None,
                      length_preserving=length_preserving)


# integer encoding for the search kernels -------------------------------------


@dataclass(frozen=True)
class Layout:
    """Index arithmetic for all words of length 0..L over k letters."""

    k: int
    L: int
    lens: array
    codes: array
    offsets: array
    powers: array
    const: array


@lru_cache(maxsize=None)
def layout(k: int, L: int) -> Layout:
    lens, codes, const = array("q"), array("q"), array("q")
    offsets, powers = array("q"), array("q")
    off = 0
    for n in range(L + 2):
        offsets.append(off)
        if n <= L:
            powers.append(k**n)
            rep = sum(k**i for i in range(n))  # code of 11..1 in base k
            for c in range(k**n):
                lens.append(n)
                codes.append(c)
                const.append(1 if n == 0 or c % rep == 0 else 0)
            off += k**n
    return Layout(k, L, lens, codes, offsets, powers, const)


@dataclass(frozen=True)
class Encoded:
    """A tabulated function as integer arrays indexed by global word index."""

    alphabet: Alphabet
    maxlen: int
    words: tuple[str, ...]
    vals: array  # value id per word, -1 when undefined
    values: tuple[str, ...]
    value_index: array  # words codomain: index of the value word, -1 if beyond L
    layout: Layout

    def inner_images(self) -> array:
        """Per word y: index of F(y) (-1 beyond the universe, -2 undefined)."""
        vi = self.value_index
        return array("q", (vi[v] if v >= 0 else -2 for v in self.vals))


def _encode(f: VariadicFn) -> Encoded:
    words = f.alphabet.universe(f.maxlen)
    table = f.table
    values = tuple(sorted(set(table.values()), key=f.codomain.sort_key))
    ids = {v: i for i, v in enumerate(values)}
    vals = array("q", (ids[table[x]] if x in table else -1 for x in words))
    if f.codomain.is_words and f.codomain.alphabet == f.alphabet:
        index = _word_positions(f.alphabet.letters, f.maxlen)
        value_index = array("q", (index.get(v, -1) for v in values))
    else:
        value_index = array("q", [-1] * len(values))
    return Encoded(f.alphabet, f.maxlen, words, vals, values, value_index,
                   layout(f.alphabet.size, f.maxlen))


@lru_cache(maxsize=None)
def _word_positions(letters: str, L: int) -> dict[str, int]:
    return {w: i for i, w in enumerate(Alphabet(letters).universe(L))}


def word_positions(alphabet: Alphabet, L: int) -> dict[str, int]:
    return _word_positions(alphabet.letters, L)


__all__ = [
    "Codomain", "VariadicFn", "Encoded", "Layout", "EPS_TOKEN",
    "load_table", "dump_table", "evaluate", "diagonal_section_m", "range_of",
    "kernel_partition", "compose_unary", "layout", "word_positions",
]
