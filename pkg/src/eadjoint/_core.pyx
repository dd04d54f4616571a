# cython: language_level=3
"""Compiled twin of the exact-arithmetic kernels in ``_corepy``.

Entries stay arbitrary-precision Python objects (int / Fraction); Cython only
removes interpreter dispatch from the loops.  The algorithms, branch
structure and arithmetic order are identical to the pure backend, so both
produce identical objects for identical inputs.
"""

from math import gcd


def mat_mul(a, Py_ssize_t m, Py_ssize_t n, b, Py_ssize_t p):
    """Row-major product of an m*n and an n*p matrix of exact entries."""
    cdef Py_ssize_t i, j, t, ia, io, tb
    cdef list out = [0] * (m * p)
    for i in range(m):
        ia = i * n
        io = i * p
        for t in range(n):
            x = a[ia + t]
            if x:
                tb = t * p
                for j in range(p):
                    y = b[tb + j]
                    if y:
                        out[io + j] = out[io + j] + x * y
    return out


def rank_int(rows, Py_ssize_t ncols):
    """Rank of an integer matrix given as a list of integer row lists."""
    cdef Py_ssize_t m = len(rows)
    cdef list work = [list(row) for row in rows]
    cdef Py_ssize_t rank = 0, c, i, j, piv
    cdef list pr, ri
    for c in range(ncols):
        piv = -1
        for i in range(rank, m):
            if (<list>work[i])[c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            work[piv], work[rank] = work[rank], work[piv]
        pr = <list>work[rank]
        pv = pr[c]
        for i in range(rank + 1, m):
            ri = <list>work[i]
            x = ri[c]
            if x:
                g = gcd(pv, x)
                f = pv // g
                s = x // g
                ri[c] = 0
                rg = 0
                for j in range(c + 1, ncols):
                    v = ri[j] * f - pr[j] * s
                    ri[j] = v
                    if rg != 1 and v:
                        rg = gcd(rg, v)
                if rg > 1:
                    for j in range(c + 1, ncols):
                        if ri[j]:
                            ri[j] = ri[j] // rg
        rank += 1
        if rank == m:
            break
    return rank


def rre_int(rows, Py_ssize_t ncols):
    """Reduced row echelon form of an integer matrix.

    Same contract as the pure twin: returns (rank, pivot_cols, rows) with the
    pivot rows primitive, positive-pivot, zeros above and below each pivot.
    """
    cdef Py_ssize_t m = len(rows)
    cdef list work = [list(row) for row in rows]
    cdef list pivots = []
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef list pr, ri
    for c in range(ncols):
        piv = -1
        for i in range(r, m):
            if (<list>work[i])[c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            work[piv], work[r] = work[r], work[piv]
        pr = <list>work[r]
        g = 0
        for j in range(ncols):
            v = pr[j]
            if v:
                g = gcd(g, v)
                if g == 1:
                    break
        if pr[c] < 0:
            g = -g
        if g != 1:
            for j in range(ncols):
                if pr[j]:
                    pr[j] = pr[j] // g
        pv = pr[c]
        for i in range(m):
            if i == r:
                continue
            ri = <list>work[i]
            x = ri[c]
            if x:
                gg = gcd(pv, x)
                f = pv // gg
                s = x // gg
                rg = 0
                for j in range(ncols):
                    v = ri[j] * f - pr[j] * s
                    ri[j] = v
                    if rg != 1 and v:
                        rg = gcd(rg, v)
                if rg > 1:
                    for j in range(ncols):
                        if ri[j]:
                            ri[j] = ri[j] // rg
        pivots.append(c)
        r += 1
        if r == m:
            break
    return r, pivots, work
