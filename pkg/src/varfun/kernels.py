"""Functions whose kernel is defined position by position.

F has a componentwise defined kernel when there are equivalence relations
E_1, E_2, ... on the alphabet such that, for words x, y of equal length n,
F(x) = F(y) exactly when x_i E_i y_i for every i <= n.
"""
from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from .errors import ChainConditionViolated, OuterNotInjective, PartialOuterMap
from .funcrep import Codomain, VariadicFn
from .families import _compose, as_unary_map, chain_image
from .props import FAIL, PASS, PropertyReport, make_witness, universe_text
from .words import Alphabet


@dataclass(frozen=True)
class PositionRelations:
    """One partition of the alphabet per position 1..L."""

    alphabet: Alphabet
    partitions: tuple[tuple[str, ...], ...]

    def classes(self, i: int) -> tuple[str, ...]:
        return self.partitions[i - 1]

    def class_of(self, i: int) -> dict[str, int]:
        return {c: j for j, cls in enumerate(self.partitions[i - 1]) for c in cls}

    def related(self, i: int, a: str, b: str) -> bool:
        idx = self.class_of(i)
        return idx[a] == idx[b]

    def render(self) -> str:
        return "\n".join(
            f"E{i}: " + " ".join("{" + ",".join(cls) + "}" for cls in part)
            for i, part in enumerate(self.partitions, start=1)
        )


def partition_of(alphabet: Alphabet, h: Mapping[str, str]) -> tuple[str, ...]:
    """ker(h) as a tuple of classes, ordered by least letter."""
    classes: dict[str, str] = {}
    for c in alphabet:
        classes[h[c]] = classes.get(h[c], "") + c
    return tuple(sorted(classes.values(), key=lambda s: alphabet.rank(s[0])))


def _swap_partitions(f: VariadicFn) -> tuple[tuple[str, ...], ...]:
    """Per position i, letters a ~ b iff swapping a for b at i never changes F."""
    alphabet = f.alphabet
    L = f.maxlen
    parts = []
    for i in range(L):
        profiles: dict[tuple, str] = {}
        for a in alphabet:
            profile = []
            for n in range(i + 1, L + 1):
                for x in alphabet.words(n - 1):
                    profile.append(f(x[:i] + a + x[i:]))
            key = tuple(profile)
            profiles[key] = profiles.get(key, "") + a
        parts.append(tuple(profiles.values()))
    return tuple(parts)


def componentwise_kernel_report(f: VariadicFn):
    """Detect the defining relations; returns (relations or None, report)."""
    if not f.tabulated or f.partial:
        raise ValueError("kernel detection needs a total tabulated function")
    L = f.maxlen
    relations = PositionRelations(f.alphabet, _swap_partitions(f))
    index = [relations.class_of(i) for i in range(1, L + 1)]
    count = 0
    for n in range(1, L + 1):
        part = f.part(n)
        keyed: dict[tuple, str] = {}
        by_value: dict[str, tuple] = {}
        broken = False
        for x, v in part.items():
            count += 1
            key = tuple(index[i][c] for i, c in enumerate(x))
            if keyed.setdefault(key, v) != v or by_value.setdefault(v, key) != key:
                broken = True
                break
        if broken:
            x, y = _least_violating_pair(part, index)
            w = make_witness(f, words=[("x", x), ("y", y)],
                             values=[("F(x)", part[x]), ("F(y)", part[y])])
            report = PropertyReport("componentwise-kernel", FAIL, count, w,
                                    universe_text(f, L))
            return None, report
    report = PropertyReport("componentwise-kernel", PASS, count, None, universe_text(f, L),
                            detail=relations.render())
    return relations, report


def _least_violating_pair(part: dict, index) -> tuple[str, str]:
    words = list(part)
    keys = {x: tuple(index[i][c] for i, c in enumerate(x)) for x in words}
    for a, x in enumerate(words):
        for y in words[a + 1:]:
            if (part[x] == part[y]) != (keys[x] == keys[y]):
                return x, y
    raise AssertionError("no violating pair although the biconditional failed")


def detect_componentwise_kernel(f: VariadicFn) -> PositionRelations | None:
    return componentwise_kernel_report(f)[0]


def check_nested_relations(r: PositionRelations) -> PropertyReport:
    """Whether every E_i class lies inside one E_(i+1) class."""
    count = 0
    universe = f"{len(r.partitions)} positions over {r.alphabet.letters}"
    for i in range(1, len(r.partitions)):
        nxt = r.class_of(i + 1)
        for cls in r.classes(i):
            count += 1
            for b in cls[1:]:
                if nxt[b] != nxt[cls[0]]:
                    w = make_witness(None, other=[("i", i), ("a", cls[0]), ("b", b)])
                    return PropertyReport("nested-relations", FAIL, count, w, universe)
    return PropertyReport("nested-relations", PASS, count, None, universe)


def check_chain(alphabet: Alphabet, h: Sequence) -> list[dict[str, str]]:
    """Normalize a chain and enforce h_n∘h_n = h_n and h_(n+1)∘h_n = h_(n+1)."""
    chain = [as_unary_map(alphabet, hi) for hi in h]
    for n in range(1, len(chain) + 1):
        hn = chain[n - 1]
        if _compose(hn, hn) != hn:
            raise ChainConditionViolated(n)
        if n < len(chain) and _compose(chain[n], hn) != chain[n]:
            raise ChainConditionViolated(n)
    return chain


def build_from_kernel_data(h: Sequence, alphabet: Alphabet, outer=None,
                           codomain: Codomain | None = None) -> VariadicFn:
    """F_n(x) = f_n(h_1(x_1)...h_n(x_n)) on words of length <= len(h).

    ``outer`` maps each arity to a dict (or callable) on the reached words;
    without it F is the letterwise string function itself.
    """
    chain = check_chain(alphabet, h)
    L = len(chain)
    if outer is None:
        table = {x: chain_image(chain, x) for x in alphabet.universe(L, start=1)}
        return VariadicFn(alphabet, Codomain.of_words(alphabet), L, table=table,
                          validate=False, name="kernel-data")
    table = {}
    names: dict[str, None] = {}
    for n in range(1, L + 1):
        fn = outer[n] if isinstance(outer, Mapping) else (lambda w, n=n: outer(n, w))
        assigned: dict[str, str] = {}
        for x in alphabet.words(n):
            w = chain_image(chain, x)
            try:
                v = fn[w] if isinstance(fn, Mapping) else fn(w)
            except KeyError:
                raise PartialOuterMap(w, n) from None
            if assigned.setdefault(v, w) != w:
                raise OuterNotInjective(n)
            table[x] = v
            names.setdefault(v)
    if codomain is None:
        codomain = Codomain.of_symbols(names)
    return VariadicFn(alphabet, codomain, L, table=table, name="kernel-data")
