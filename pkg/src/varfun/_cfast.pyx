# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; same contract as ``varfun._pyfast``."""

from libc.stdlib cimport malloc, free

ctypedef long long i64


def pair_violation(const i64[::1] vals, const i64[::1] lens, const i64[::1] codes,
                   const i64[::1] offsets, const i64[::1] powers, const i64[::1] const_,
                   Py_ssize_t L, int mode):
    cdef Py_ssize_t N = offsets[L + 1]
    cdef Py_ssize_t V = 0, g, v, x, y, y2, z, j
    cdef i64 lx, ly, ly2, lz, cx, cy, cy2, hy, hy2, pz, span, a, b
    cdef i64 count = 0
    for g in range(N):
        if vals[g] + 1 > V:
            V = vals[g] + 1
    # bucket words by value id, ascending word index inside each bucket
    cdef i64 *start = <i64 *> malloc((V + 1) * sizeof(i64))
    cdef i64 *fill = <i64 *> malloc((V + 1) * sizeof(i64))
    cdef i64 *members = <i64 *> malloc((N + 1) * sizeof(i64))
    if start == NULL or fill == NULL or members == NULL:
        free(start); free(fill); free(members)
        raise MemoryError()
    try:
        for v in range(V + 1):
            start[v] = 0
        for g in range(N):
            if vals[g] >= 0:
                start[vals[g] + 1] += 1
        for v in range(V):
            start[v + 1] += start[v]
        for v in range(V):
            fill[v] = start[v]
        for g in range(N):
            v = vals[g]
            if v >= 0:
                members[fill[v]] = g
                fill[v] += 1

        for x in range(N):
            lx = lens[x]
            cx = codes[x]
            for y in range(N):
                ly = lens[y]
                if lx + ly > L:
                    break
                v = vals[y]
                if v < 0 or (mode != 0 and ly == 0):
                    continue
                cy = codes[y]
                for j in range(start[v], start[v + 1]):
                    y2 = members[j]
                    ly2 = lens[y2]
                    if lx + ly2 > L:
                        break
                    if y2 == y:
                        continue
                    if mode != 0:
                        if ly2 < ly:
                            continue
                        if ly2 > ly:
                            break
                        if mode == 2 and const_[y2] == 0:
                            continue
                    cy2 = codes[y2]
                    span = lx + (ly if ly >= ly2 else ly2)
                    hy = cx * powers[ly] + cy
                    hy2 = cx * powers[ly2] + cy2
                    for z in range(N):
                        lz = lens[z]
                        if span + lz > L:
                            break
                        if mode == 2 and lx + lz == 0:
                            continue
                        pz = powers[lz]
                        a = vals[offsets[lx + ly + lz] + hy * pz + codes[z]]
                        b = vals[offsets[lx + ly2 + lz] + hy2 * pz + codes[z]]
                        if a < 0 or b < 0:
                            continue
                        count += 1
                        if a != b:
                            return count, (x, y, y2, z)
    finally:
        free(start)
        free(fill)
        free(members)
    return count, None


def substitution_violation(const i64[::1] vals, const i64[::1] inner,
                           const i64[::1] lens, const i64[::1] codes,
                           const i64[::1] offsets, const i64[::1] powers,
                           Py_ssize_t L):
    cdef Py_ssize_t N = offsets[L + 1]
    cdef Py_ssize_t x, y, z
    cdef i64 lx, ly, lz, lr, cx, hy, hr, pz, r, a, b
    cdef i64 count = 0, n_out = 0
    cdef i64 ox = -1, oy = -1, oz = -1
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
                    if ox < 0:
                        ox = x; oy = y; oz = z
                    continue
                pz = powers[lz]
                a = vals[offsets[lx + ly + lz] + hy * pz + codes[z]]
                b = vals[offsets[lx + lr + lz] + hr * pz + codes[z]]
                if a < 0 or b < 0:
                    continue
                count += 1
                if a != b:
                    return count, (x, y, z), n_out, ((ox, oy, oz) if ox >= 0 else None)
    return count, None, n_out, ((ox, oy, oz) if ox >= 0 else None)
