# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Fincke-Pohst kernel; same contract as _kernels_py.enumerate_block."""

from libc.math cimport sqrt, ceil, floor


def enumerate_block(diag, off, double bound):
    cdef int m = len(diag)
    if m == 0:
        return [((), 0.0)]
    if m > 64:
        raise ValueError("block dimension above 64")

    cdef double d[64]
    cdef double o[64][64]
    cdef long x[64]
    cdef long hi[64]
    cdef double rem[64]
    cdef double acc[64]
    cdef double cen[64]
    cdef int i, r
    cdef double c, radius, t, term

    for i in range(m):
        d[i] = diag[i]
        x[i] = 0
        for r in range(m):
            o[r][i] = off[r][i] if r > i else 0.0

    out = []
    i = m - 1
    rem[i] = bound
    acc[i] = 0.0
    cen[i] = 0.0
    radius = sqrt(bound / d[i]) if bound >= 0 else -1.0
    if radius < 0:
        return out
    x[i] = <long>ceil(-radius) - 1
    hi[i] = <long>floor(radius)

    while True:
        x[i] += 1
        if x[i] > hi[i]:
            x[i] = 0
            i += 1
            if i >= m:
                break
            continue
        t = x[i] - cen[i]
        term = d[i] * t * t
        if term > rem[i]:
            continue
        if i == 0:
            out.append((tuple([x[r] for r in range(m)]), acc[0] + term))
            continue
        # open the next level down
        c = 0.0
        for r in range(i, m):
            c -= o[r][i - 1] * x[r]
        rem[i - 1] = rem[i] - term
        acc[i - 1] = acc[i] + term
        cen[i - 1] = c
        radius = sqrt(rem[i - 1] / d[i - 1])
        x[i - 1] = <long>ceil(c - radius) - 1
        hi[i - 1] = <long>floor(c + radius)
        i -= 1
    return out
