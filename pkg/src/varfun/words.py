"""Strings over finite ordered alphabets.

Words are plain ``str`` values whose characters are letters of an
:class:`Alphabet`; the empty string is the empty word.  Everything that
needs a canonical order uses (length, lexicographic-by-alphabet) order,
which coincides with the global word index computed by :func:`word_index`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .errors import AlphabetMismatch, UnknownLetter

EPS_TOKEN = "eps"


@dataclass(frozen=True)
class Alphabet:
    """A finite ordered set of single-character letters."""

    letters: str
    _rank: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        letters = self.letters
        if not letters:
            raise ValueError("alphabet must contain at least one letter")
        if len(set(letters)) != len(letters):
            raise ValueError(f"alphabet letters are not distinct: {letters!r}")
        for c in letters:
            if not c.isprintable() or c.isspace() or c == "#":
                raise ValueError(f"unusable letter {c!r}")
        object.__setattr__(self, "_rank", {c: i for i, c in enumerate(letters)})

    @property
    def size(self) -> int:
        return len(self.letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __contains__(self, letter):
        return letter in self._rank

    def rank(self, letter: str) -> int:
        try:
            return self._rank[letter]
        except KeyError:
            raise UnknownLetter(letter, self.letters) from None

    def owns(self, word: str) -> bool:
        rank = self._rank
        return all(c in rank for c in word)

    def check(self, word: str) -> str:
        for c in word:
            if c not in self._rank:
                raise UnknownLetter(c, self.letters)
        return word

    def sort_key(self, word: str):
        """Key for (length, lexicographic) order."""
        rank = self._rank
        return (len(word), tuple(rank[c] for c in word))

    def words(self, n: int) -> tuple[str, ...]:
        return enumerate_words(self, n)

    def universe(self, maxlen: int, start: int = 0) -> tuple[str, ...]:
        """All words with ``start <= length <= maxlen`` in canonical order."""
        return _universe(self.letters, start, maxlen)


def concat(x: str, y: str, alphabet: Alphabet | None = None) -> str:
    if alphabet is not None:
        for w in (x, y):
            if not alphabet.owns(w):
                raise AlphabetMismatch(w, alphabet.letters)
    return x + y


def power(x: str, n: int) -> str:
    if n < 0:
        raise ValueError("power exponent must be non-negative")
    return x * n


def prefix_m(x: str, m: int) -> str:
    if m < 1:
        raise ValueError("prefix length must be at least 1")
    return x[:m]


def in_generated_set(x: str, m: int) -> bool:
    """Whether ``x`` lies in X_m^n for n = |x|: its last n-m+1 letters coincide."""
    if m < 1:
        raise ValueError("m must be at least 1")
    n = len(x)
    if n <= m:
        return True
    tail = x[m - 1:]
    return tail.count(tail[0]) == len(tail)


def enumerate_words(alphabet: Alphabet, n: int) -> tuple[str, ...]:
    if n < 0:
        raise ValueError("word length must be non-negative")
    return _words(alphabet.letters, n)


@lru_cache(maxsize=None)
def _words(letters: str, n: int) -> tuple[str, ...]:
    return tuple("".join(p) for p in product(letters, repeat=n))


@lru_cache(maxsize=None)
def _universe(letters: str, start: int, maxlen: int) -> tuple[str, ...]:
    out = []
    for n in range(start, maxlen + 1):
        out.extend(_words(letters, n))
    return tuple(out)


def count_words(k: int, maxlen: int, start: int = 0) -> int:
    return sum(k**n for n in range(start, maxlen + 1))


def word_index(alphabet: Alphabet, x: str) -> int:
    """Position of ``x`` in the canonical enumeration of all words (ε is 0)."""
    k = alphabet.size
    code = 0
    for c in x:
        code = code * k + alphabet.rank(c)
    return count_words(k, len(x) - 1) + code if x else 0


def format_word(x: str) -> str:
    if x == EPS_TOKEN:
        raise ValueError(f"the word {EPS_TOKEN!r} collides with the empty-word token")
    return x if x else EPS_TOKEN


def parse_word(token: str, alphabet: Alphabet | None = None) -> str:
    if token == EPS_TOKEN:
        return ""
    if alphabet is not None:
        alphabet.check(token)
    return token
