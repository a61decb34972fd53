"""Brute-force reference checkers written straight from the definitions.

They share nothing with the library except the plain-dict table format:
words are str, the table maps words (possibly "") to values, and missing
words are outside the domain.  Loops run in (length, word) order so the
first failure found is the least witness.
"""
from itertools import product


def universe(letters, L, start=0):
    return ["".join(t) for n in range(start, L + 1) for t in product(letters, repeat=n)]


def preassociative(table, letters, L, equal_lengths=False):
    """First (x, y, y', z) violating F(y)=F(y') => F(xyz)=F(xy'z), or None."""
    U = universe(letters, L)
    for x in U:
        for y in U:
            if y not in table or (equal_lengths and not y):
                continue
            for y2 in U:
                if y2 == y or y2 not in table or table[y2] != table[y]:
                    continue
                if equal_lengths and len(y2) != len(y):
                    continue
                for z in U:
                    a, b = x + y + z, x + y2 + z
                    if len(a) > L or len(b) > L or a not in table or b not in table:
                        continue
                    if table[a] != table[b]:
                        return x, y, y2, z
    return None


def associative(table, letters, L):
    """First (x, y, z) violating F(xyz) = F(x F(y) z) inside the universe."""
    U = universe(letters, L)
    for x in U:
        for y in U:
            if y not in table:
                continue
            for z in U:
                a, b = x + y + z, x + table[y] + z
                if len(a) > L or len(b) > L or a not in table or b not in table:
                    continue
                if table[a] != table[b]:
                    return x, y, z
    return None


def b_associative(table, letters, L):
    """First (x, y, z) violating F(xyz) = F(x F(y)^|y| z), letter-valued F."""
    U = universe(letters, L)
    for x in U:
        for y in U:
            if y not in table:
                continue
            for z in U:
                a, b = x + y + z, x + table[y] * len(y) + z
                if len(a) > L or len(b) > L or a not in table or b not in table:
                    continue
                if table[a] != table[b]:
                    return x, y, z
    return None


def generated_set(letters, n, m):
    """X_m^n from its defining formula {y z^(n-min(n,m)+1) : yz in X^min(n,m)}."""
    k = min(n, m)
    out = set()
    for t in product(letters, repeat=k):
        yz = "".join(t)
        out.add(yz[:-1] + yz[-1] * (n - k + 1))
    return out


def idempotent(table):
    return all(table.get(v) == v for v in table.values() if v in table)


def quasi_inverse_laws(part, section):
    """F∘g∘F = F, (g∘F)∘(g∘F) = g∘F, F one-to-one on ran(g∘F)."""
    h = {x: section[v] for x, v in part.items()}
    if any(part[h[x]] != part[x] for x in part):
        return False
    if any(h[h[x]] != h[x] for x in part):
        return False
    image = set(h.values())
    return len({part[w] for w in image}) == len(image)
