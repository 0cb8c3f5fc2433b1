"""Pure-Python Fincke-Pohst kernel (reference and fallback for _fpenum)."""

import math


def enumerate_block(diag, off, bound):
    """All integer x with sum_i diag[i] (x_i + sum_{r>i} off[r][i] x_r)^2 <= bound.

    Returns a list of ``(x, value)`` pairs including the zero vector, in
    depth-first order (last coordinate outermost, ascending at every level).
    """
    m = len(diag)
    out = []
    if m == 0:
        out.append(((), 0.0))
        return out
    x = [0] * m

    def descend(i, remaining, acc):
        c = 0.0
        for r in range(i + 1, m):
            c -= off[r][i] * x[r]
        if remaining < 0.0:
            return
        radius = math.sqrt(remaining / diag[i])
        lo = math.ceil(c - radius)
        hi = math.floor(c + radius)
        for xi in range(lo, hi + 1):
            t = xi - c
            term = diag[i] * t * t
            if term > remaining:
                continue
            x[i] = xi
            if i == 0:
                out.append((tuple(x), acc + term))
            else:
                descend(i - 1, remaining - term, acc + term)
        x[i] = 0

    descend(m - 1, float(bound), 0.0)
    return out
