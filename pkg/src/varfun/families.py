"""Built-in function families.

Letter removal and its length-preserving companion, letterwise chains of
unary operations, the B-associative lift of letter-valued functions, a
partial arithmetic mean on digit alphabets, and quasi-arithmetic
pre-means over the reals.
"""
from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainViolation, NotBAssociative, NotSingleLetterOutputs, WrongCodomain
from .factor import Factorization
from .funcrep import Codomain, VariadicFn
from .props import (
    FAIL,
    PASS,
    PropertyReport,
    check_b_associative_eps,
    make_witness,
)
from .words import Alphabet

# letter removal ------------------------------------------------------------------


def remove_letter_fn(a: str, alphabet: Alphabet, bound: int) -> VariadicFn:
    """F(x): x with every occurrence of ``a`` deleted."""
    alphabet.rank(a)
    return VariadicFn(alphabet, Codomain.of_words(alphabet), bound,
                      rule=lambda x: x.replace(a, ""), eps=True, name=f"remove-{a}")


def remove_letter_section(a: str):
    """The quasi-inverse g_n(x) = x a^(n-|x|) of the letter-removal parts."""
    return lambda n, x: x + a * (n - len(x))


def remove_letter_H(a: str, alphabet: Alphabet, bound: int) -> VariadicFn:
    """H_n = g_n ∘ F_n: every ``a`` moved to the right end, other letters kept in order."""
    alphabet.rank(a)
    g = remove_letter_section(a)
    return VariadicFn(alphabet, Codomain.of_words(alphabet), bound,
                      rule=lambda x: g(len(x), x.replace(a, "")), eps=True,
                      length_preserving=True, name=f"move-{a}-right")


def remove_letter_outer(a: str):
    """f_n on ran(H_n): strip the trailing block of ``a`` letters."""
    return lambda w: w.rstrip(a)


# letterwise chains ---------------------------------------------------------------


def as_unary_map(alphabet: Alphabet, h) -> dict[str, str]:
    """Normalize a unary operation given as a dict or as images in alphabet order."""
    if isinstance(h, Mapping):
        m = dict(h)
    else:
        if len(h) != alphabet.size:
            raise ValueError(f"unary operation {h!r} needs {alphabet.size} images")
        m = dict(zip(alphabet.letters, h))
    if set(m) != set(alphabet.letters):
        raise ValueError("unary operation must be total on the alphabet")
    for v in m.values():
        alphabet.rank(v)
    return m


def chain_image(chain: Sequence[dict], x: str) -> str:
    return "".join(chain[i][c] for i, c in enumerate(x))


def hchain_fn(h: Sequence, alphabet: Alphabet, maxlen: int | None = None) -> VariadicFn:
    """F_n(x_1...x_n) = h_1(x_1)...h_n(x_n), with F(ε) = ε."""
    chain = [as_unary_map(alphabet, hi) for hi in h]
    L = len(chain) if maxlen is None else maxlen
    if L > len(chain):
        raise ValueError(f"a chain of {len(chain)} operations covers lengths up to {len(chain)}")
    table = {x: chain_image(chain, x) for x in alphabet.universe(L)}
    return VariadicFn(alphabet, Codomain.of_words(alphabet), L, table=table,
                      length_preserving=True, validate=False, name="hchain")


def _compose(p: dict, q: dict) -> dict:
    """p ∘ q."""
    return {c: p[q[c]] for c in q}


def hchain_condition(h: Sequence, alphabet: Alphabet) -> PropertyReport:
    """h_n ∘ h_m = h_n for all m <= n, cross-checked against the two-condition form."""
    chain = [as_unary_map(alphabet, hi) for hi in h]
    L = len(chain)
    full = None
    count = 0
    for n in range(1, L + 1):
        for m in range(1, n + 1):
            count += 1
            if _compose(chain[n - 1], chain[m - 1]) != chain[n - 1]:
                full = (n, m)
                break
        if full:
            break
    short = None
    for n in range(1, L + 1):
        hn = chain[n - 1]
        if _compose(hn, hn) != hn:
            short = n
            break
        if n < L and _compose(chain[n], hn) != chain[n]:
            short = n
            break
    if (full is None) != (short is None):
        raise AssertionError("the two forms of the chain condition disagree")
    universe = f"chains of {L} unary operations on {alphabet.letters}"
    if full is None:
        return PropertyReport("hchain-condition", PASS, count, None, universe)
    n, m = full
    w = make_witness(None, other=[("n", n), ("m", m)])
    return PropertyReport("hchain-condition", FAIL, count, w, universe,
                          detail=f"two-condition form first fails at n={short}")


# B-associative lift ---------------------------------------------------------------


def b_assoc_lift(f: VariadicFn) -> Factorization:
    """H_n(x) = F_n(x)^n with outer maps f_n(x^n) = F-value x."""
    if not f.tabulated:
        raise ValueError("b_assoc_lift needs a tabulated function")
    letter_of = {}
    for x, v in f.items():
        if not x:
            continue
        if len(v) != 1 or v not in f.alphabet:
            raise NotSingleLetterOutputs(f"F({x}) = {v!r} is not a single letter")
        letter_of[v] = v
    try:
        report = check_b_associative_eps(f)
    except WrongCodomain as exc:
        raise NotSingleLetterOutputs(str(exc)) from None
    if report.verdict == FAIL:
        raise NotBAssociative(report)
    table = {"": ""}
    outer: dict[int, dict[str, str]] = {}
    for x, v in f.items():
        if not x:
            continue
        n = len(x)
        w = letter_of[v] * n
        table[x] = w
        outer.setdefault(n, {})[w] = v
    H = VariadicFn(f.alphabet, Codomain.of_words(f.alphabet), f.maxlen, table=table,
                   length_preserving=True, partial=f.partial, validate=False, name="lift")
    return Factorization(f, H, outer)


def arithmetic_mean_fn(alphabet: Alphabet, maxlen: int) -> VariadicFn:
    """Mean of digit letters, defined only where the mean is again a letter."""
    digits = {c: int(c) for c in alphabet}
    table = {}
    for x in alphabet.universe(maxlen, start=1):
        q, r = divmod(sum(digits[c] for c in x), len(x))
        if r == 0 and str(q) in alphabet:
            table[x] = str(q)
    return VariadicFn(alphabet, Codomain.of_words(alphabet), maxlen, table=table,
                      partial=True, name="mean")


# quasi-arithmetic pre-means --------------------------------------------------------

INNER_KINDS = ("identity", "log", "negation", "affine")
OUTER_KINDS = ("scaled", "exp_scaled", "inverse", "affine")


@dataclass(frozen=True)
class PreMeanSpec:
    """F_n(x) = outer_n(mean of inner(x_i)) from a closed set of shapes.

    inner: identity, log, negation, or affine t -> a*t + b (a != 0).
    outer: scaled t -> n*t, exp_scaled t -> exp(n*t), inverse (of inner),
    or affine t -> p*t + q (p != 0).  The domain is the open interval
    (lo, hi); None means unbounded.
    """

    inner: str = "identity"
    outer: str = "scaled"
    inner_coeffs: tuple = (1, 0)
    outer_coeffs: tuple = (1, 0)
    lo: float | None = None
    hi: float | None = None

    def __post_init__(self):
        if self.inner not in INNER_KINDS:
            raise ValueError(f"unknown inner function {self.inner!r}")
        if self.outer not in OUTER_KINDS:
            raise ValueError(f"unknown outer function {self.outer!r}")
        object.__setattr__(self, "inner_coeffs", tuple(Fraction(c) for c in self.inner_coeffs))
        object.__setattr__(self, "outer_coeffs", tuple(Fraction(c) for c in self.outer_coeffs))
        if self.inner == "affine" and self.inner_coeffs[0] == 0:
            raise ValueError("affine inner function must have a nonzero slope")
        if self.outer == "affine" and self.outer_coeffs[0] == 0:
            raise ValueError("affine outer function is not one-to-one with slope 0")
        if self.inner == "log" and (self.lo is None or self.lo < 0):
            raise ValueError("log needs a domain inside (0, inf)")

    @property
    def exact(self) -> bool:
        return self.inner != "log" and self.outer != "exp_scaled"

    def in_domain(self, x) -> bool:
        return (self.lo is None or x > self.lo) and (self.hi is None or x < self.hi)

    def f(self, x):
        if self.inner == "identity":
            return x
        if self.inner == "negation":
            return -x
        if self.inner == "log":
            return math.log(x)
        a, b = self.inner_coeffs
        return a * x + b

    def f_inverse(self, t):
        if self.inner == "identity":
            return t
        if self.inner == "negation":
            return -t
        if self.inner == "log":
            return math.exp(t)
        a, b = self.inner_coeffs
        return (t - b) / a

    def f_n(self, n: int, t):
        if self.outer == "scaled":
            return n * t
        if self.outer == "exp_scaled":
            return math.exp(n * t)
        if self.outer == "inverse":
            return self.f_inverse(t)
        p, q = self.outer_coeffs
        return p * t + q


SUM = PreMeanSpec("identity", "scaled")
PRODUCT = PreMeanSpec("log", "exp_scaled", lo=0.0)
MEAN = PreMeanSpec("identity", "inverse")
PREMEANS = {"sum": SUM, "product": PRODUCT, "mean": MEAN}


def premean_eval(spec: PreMeanSpec, xs: Sequence):
    """F_n(x) = f_n((1/n) * sum f(x_i)); exact Fractions for rational shapes."""
    if not xs:
        raise ValueError("pre-means are defined for n >= 1")
    for i, x in enumerate(xs):
        if not spec.in_domain(x):
            raise DomainViolation(i, x)
    n = len(xs)
    if spec.exact:
        return spec.f_n(n, sum(spec.f(Fraction(x)) for x in xs) / n)
    return spec.f_n(n, math.fsum(spec.f(float(x)) for x in xs) / n)


def _draw(spec: PreMeanSpec, rng, size: int):
    if spec.exact:
        return [Fraction(int(v)) for v in rng.integers(-20, 21, size=size)]
    lo = max(spec.lo if spec.lo is not None else -10.0, 0.0) + 0.5
    return [float(v) for v in rng.uniform(lo, lo + 9.5, size=size)]


def premean_check_bpa(spec: PreMeanSpec, trials: int = 10_000, seed: int = 0,
                      tol: float = 1e-9) -> PropertyReport:
    """Sampled B-preassociativity: spread y into y' with equal inner mean, compare contexts.

    Trial i draws from a generator seeded by (seed, i).  Rational shapes
    must agree exactly; float shapes within ``tol`` relative to
    max(1, |F(xyz)|).
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    name = "premean-b-preassociative"
    universe = f"{trials} sampled instances, seed {seed}"
    for i in range(trials):
        rng = np.random.default_rng([seed, i])
        k = int(rng.integers(2, 6))
        y = _draw(spec, rng, k)
        p, q = (int(v) for v in rng.choice(k, size=2, replace=False))
        ty = [spec.f(v) for v in y]
        delta = Fraction(int(rng.integers(-5, 6))) if spec.exact else float(rng.normal())
        ty[p] += delta
        ty[q] -= delta
        y2 = [spec.f_inverse(t) for t in ty]
        if not all(spec.in_domain(v) for v in y2):
            raise ValueError(f"trial {i}: the mean-preserving spread left the domain")
        x = _draw(spec, rng, int(rng.integers(0, 4)))
        z = _draw(spec, rng, int(rng.integers(0, 4)))
        lhs = premean_eval(spec, x + y + z)
        rhs = premean_eval(spec, x + y2 + z)
        ok = lhs == rhs if spec.exact else abs(lhs - rhs) <= tol * max(1.0, abs(lhs))
        if not ok:
            w = make_witness(None, other=[("trial", i), ("x", x), ("y", y), ("y'", y2),
                                          ("z", z), ("lhs", lhs), ("rhs", rhs)])
            return PropertyReport(name, FAIL, i + 1, w, universe)
    return PropertyReport(name, PASS, trials, None, universe)


__all__ = [
    "remove_letter_fn", "remove_letter_H", "remove_letter_section", "remove_letter_outer",
    "as_unary_map", "chain_image", "hchain_fn", "hchain_condition", "b_assoc_lift",
    "arithmetic_mean_fn", "PreMeanSpec", "SUM", "PRODUCT", "MEAN", "PREMEANS",
    "premean_eval", "premean_check_bpa",
]
