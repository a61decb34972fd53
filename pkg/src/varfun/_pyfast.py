"""Pure-Python search kernels (fallback for the compiled ``_cfast``).

Both kernels walk words by global index, where word g has length
``lens[g]`` and base-k code ``codes[g]``; the index of a concatenation
xyz is ``offsets[|xyz|] + (cx * k^|y| + cy) * k^|z| + cz``.  Loops visit
tuples in lexicographic (length, word) order, so the first violation found
is the least one.  A value id of -1 marks an undefined word.
"""

PREASSOCIATIVE = 0
B_PREASSOCIATIVE = 1
DEFINETTI = 2


def pair_violation(vals, lens, codes, offsets, powers, const, L, mode):
    """Search (x, y, y2, z) with F(y) = F(y2) but F(xyz) != F(x y2 z).

    mode 0: any lengths; mode 1: |y| = |y2| >= 1; mode 2: as mode 1 with
    y2 a constant word and |xz| >= 1.  Returns (instances, witness).
    """
    vals = list(vals)
    lens = list(lens)
    codes = list(codes)
    offsets = list(offsets)
    powers = list(powers)
    N = offsets[L + 1]
    buckets = [[] for _ in range(max(vals, default=-1) + 1)]
    for g in range(N):
        if vals[g] >= 0:
            buckets[vals[g]].append(g)
    count = 0
    for x in range(N):
        lx = lens[x]
        cx = codes[x]
        for y in range(N):
            ly = lens[y]
            if lx + ly > L:
                break
            v = vals[y]
            if v < 0 or (mode and ly == 0):
                continue
            cy = codes[y]
            for y2 in buckets[v]:
                ly2 = lens[y2]
                if lx + ly2 > L:
                    break
                if y2 == y:
                    continue
                if mode:
                    if ly2 < ly:
                        continue
                    if ly2 > ly:
                        break
                    if mode == DEFINETTI and not const[y2]:
                        continue
                cy2 = codes[y2]
                span = lx + (ly if ly >= ly2 else ly2)
                hy = cx * powers[ly] + cy
                hy2 = cx * powers[ly2] + cy2
                for z in range(N):
                    lz = lens[z]
                    if span + lz > L:
                        break
                    if mode == DEFINETTI and lx + lz == 0:
                        continue
                    pz = powers[lz]
                    cz = codes[z]
                    a = vals[offsets[lx + ly + lz] + hy * pz + cz]
                    b = vals[offsets[lx + ly2 + lz] + hy2 * pz + cz]
                    if a < 0 or b < 0:
                        continue
                    count += 1
                    if a != b:
                        return count, (x, y, y2, z)
    return count, None


def substitution_violation(vals, inner, lens, codes, offsets, powers, L):
    """Search (x, y, z) with F(xyz) != F(x r z), r = inner[y].

    ``inner[y]`` is a word index, -1 when the replacement leaves the
    universe (counted as out-of-universe), or -2 to skip y.  Returns
    (instances, witness, out_of_universe, first_out).
    """
    vals = list(vals)
    inner = list(inner)
    lens = list(lens)
    codes = list(codes)
    offsets = list(offsets)
    powers = list(powers)
    N = offsets[L + 1]
    count = 0
    n_out = 0
    first_out = None
    for x in range(N):
        lx = lens[x]
        cx = codes[x]
        for y in range(N):
            ly = lens[y]
            if lx + ly > L:
                break
            r = inner[y]
            if r == -2:
                continue
            lr = lens[r] if r >= 0 else 0
            hy = cx * powers[ly] + codes[y]
            hr = cx * powers[lr] + codes[r] if r >= 0 else 0
            for z in range(N):
                lz = lens[z]
                if lx + ly + lz > L:
                    break
                if r < 0 or lx + lr + lz > L:
                    n_out += 1
                    if first_out is None:
                        first_out = (x, y, z)
                    continue
                pz = powers[lz]
                cz = codes[z]
                a = vals[offsets[lx + ly + lz] + hy * pz + cz]
                b = vals[offsets[lx + lr + lz] + hr * pz + cz]
                if a < 0 or b < 0:
                    continue
                count += 1
                if a != b:
                    return count, (x, y, z), n_out, first_out
    return count, None, n_out, first_out
