"""Independent reference computations used by the tests.

Nothing here imports the package: discriminants come from the closed
formulas, theta sums from brute force over a box, short vectors from
exhaustive search.
"""

import itertools
import math
import random

import numpy as np

# log sum_{m in Z} exp(-pi m^2) = log(pi^{1/4} / Gamma(3/4))
THETA_CONSTANT = 0.08290152003105444
# h0 of the trivial class, brute force over a box (see test_theta)
H0_QI_ZERO = 0.007455856241734299
H0_QSQRT5_ZERO = 0.004049474483386122
H0_QSQRT2_AT_03 = 0.0011969714941009704  # log u = (0.3, -0.3), basis (1, sqrt 2)

EX1_DISC = 10**80 + 129
EX2_POLY = [-1000470997815, -1090173446, -88998, 1]
EX2_DISC = 10000820940380105429207549453
EX2_ROOTS = (-10001.478300670848, -1000.3250867460597, 99999.80338741683)


def poly_disc(poly):
    """Discriminant of a monic quadratic or cubic given low to high."""
    if len(poly) == 3:
        c, b, _ = poly
        return b * b - 4 * c
    d, c, b, _ = poly
    return b * b * c * c - 4 * c**3 - 4 * b**3 * d - 27 * d * d + 18 * b * c * d


def squarefree(m):
    m = abs(m)
    p = 2
    while p * p <= m:
        if m % (p * p) == 0:
            return False
        p += 1
    return m > 1


def has_integer_root(poly):
    c0 = abs(poly[0])
    if c0 == 0:
        return True
    for r in range(1, c0 + 1):
        if c0 % r == 0:
            for s in (r, -r):
                if sum(c * s**i for i, c in enumerate(poly)) == 0:
                    return True
    return False


def random_maximal_poly(rng, degree, max_disc=10**6):
    """Monic irreducible polynomial with squarefree discriminant, so Z[alpha] is maximal."""
    while True:
        coeffs = [rng.randint(-30, 30) for _ in range(degree)] + [1]
        D = poly_disc(coeffs)
        if D == 0 or abs(D) > max_disc or not squarefree(D):
            continue
        if has_integer_root(coeffs):
            continue
        return coeffs, D


def brute_theta(columns, radius=None):
    """sum exp(-pi |Bx|^2) over the box |x_i| <= radius.

    The default box covers every x with |Bx|^2 <= 12 (dropped terms < 1e-16).
    """
    B = np.array(columns, dtype=float).T
    n = B.shape[1]
    if radius is None:
        radius = int(math.ceil(np.linalg.norm(np.linalg.inv(B), 2) * math.sqrt(12))) + 1
    rng = np.arange(-radius, radius + 1)
    grid = np.array(list(itertools.product(rng, repeat=n)), dtype=float)
    sq = np.sum((grid @ B.T) ** 2, axis=1)
    return math.fsum(np.exp(-math.pi * sq))


def brute_enumerate(diag, off, bound, box=None):
    m = len(diag)
    if box is None:
        box = int(math.ceil(math.sqrt(bound / min(diag)) * 4)) + 2
    found = {}
    for x in itertools.product(range(-box, box + 1), repeat=m):
        v = 0.0
        for i in range(m):
            t = x[i] + sum(off[r][i] * x[r] for r in range(i + 1, m))
            v += diag[i] * t * t
        if v <= bound:
            found[x] = v
    return found


def random_basis(rng: random.Random, n, scale=1.0):
    while True:
        B = np.array([[rng.gauss(0, scale) for _ in range(n)] for _ in range(n)])
        if abs(np.linalg.det(B)) > 0.1 * scale**n:
            return B
