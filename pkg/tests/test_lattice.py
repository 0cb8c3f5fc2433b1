import itertools
import math
import random

import numpy as np
import pytest
from mpmath import mp

from arakelov_h0.errors import PrecisionError
from arakelov_h0.lattice import LatticeBasis, TriangularForm, dual_block, enumerate_vectors, gso, lll

from oracles import brute_enumerate, random_basis


@pytest.fixture(autouse=True)
def working_precision():
    # the package routines run under the caller's precision
    with mp.workprec(160):
        yield


def _cols(B):
    return [[mp.mpf(float(x)) for x in B[:, j]] for j in range(B.shape[1])]


def _shortest_sq(B):
    best = math.inf
    for x in itertools.product(range(-6, 7), repeat=B.shape[1]):
        if any(x):
            best = min(best, float(np.sum((B @ np.array(x)) ** 2)))
    return best


@pytest.mark.parametrize("seed", range(10))
def test_gso_matches_qr(seed):
    B = random_basis(random.Random(seed), 3)
    g = gso(_cols(B))
    R = np.linalg.qr(B, mode="r")
    for i in range(3):
        assert float(g.A[i][i]) == pytest.approx(R[i, i] ** 2, rel=1e-10)
    assert float(g.covolume) == pytest.approx(abs(np.linalg.det(B)), rel=1e-10)


@pytest.mark.parametrize("seed", range(25))
def test_lll_conditions(seed):
    rng = random.Random(100 + seed)
    n = 2 + seed % 3
    B = random_basis(rng, n, scale=5.0)
    # skew it so that LLL has work to do
    T = np.eye(n, dtype=int)
    for i in range(n - 1):
        T[i, i + 1] = rng.randint(-20, 20)
    B = B @ T
    red, U = lll(LatticeBasis(_cols(B)))
    U = np.array(U, dtype=object)
    assert abs(int(np.linalg.det(U.astype(float)).round())) == 1
    R = np.array([[float(x) for x in c] for c in red.columns]).T
    assert np.allclose(B @ U.astype(float), R, atol=1e-8)
    g = gso(red)
    for i in range(n):
        for j in range(i):
            assert abs(g.A[i][j]) <= 0.5 + 1e-12
    for k in range(1, n):
        assert g.A[k][k] >= (0.75 - g.A[k][k - 1] ** 2) * g.A[k - 1][k - 1] - 1e-12
    if n <= 3:
        b1 = float(g.A[0][0])
        assert b1 <= 2 ** (n - 1) * _shortest_sq(B) * (1 + 1e-9)


def test_lll_is_deterministic():
    B = random_basis(random.Random(5), 3, 3.0)
    a, Ua = lll(_cols(B))
    b, Ub = lll(_cols(B))
    assert Ua == Ub and a.columns == b.columns


def test_gso_collapse():
    with pytest.raises(PrecisionError):
        gso([[mp.mpf(1), mp.mpf(2)], [mp.mpf(2), mp.mpf(4)]])


@pytest.mark.parametrize("seed", range(10))
def test_dual_block_is_dual(seed):
    rng = random.Random(seed)
    B = random_basis(rng, 3, 1.0)
    B[:, 0] *= 0.2
    red, _ = lll(_cols(B))
    g = gso(red)
    d = dual_block(red, g)
    k = d.k
    assert all(g.A[i][i] < 1 for i in range(k))
    assert k == len(red.columns) or g.A[k][k] >= 1
    for l in range(k):
        for i in range(k):
            ip = mp.fsum(a * b for a, b in zip(d.dual_columns[l], red.columns[i]))
            assert abs(ip - (1 if i == l else 0)) < 1e-30
    assert float(d.gamma) == pytest.approx(math.prod(math.sqrt(float(g.A[i][i])) for i in range(k)))


def _random_form(rng, m):
    diag = tuple(rng.uniform(0.2, 3.0) for _ in range(m))
    off = tuple(tuple(rng.uniform(-1.5, 1.5) if r > i else 0.0 for i in range(m)) for r in range(m))
    return TriangularForm(diag, off)


@pytest.mark.parametrize("seed", range(15))
def test_enumeration_matches_brute_force(seed):
    rng = random.Random(seed)
    f1 = _random_form(rng, 1 + seed % 2)
    f2 = _random_form(rng, 1 + (seed // 2) % 2)
    M = rng.uniform(1, 6)
    got = enumerate_vectors([f1, f2], M)
    a = brute_enumerate(f1.diag, f1.off, M)
    b = brute_enumerate(f2.diag, f2.off, M)
    want = set()
    for x, v in a.items():
        for y, w in b.items():
            z = x + y
            if v + w <= M and any(z):
                first = next(c for c in z if c)
                want.add(z if first > 0 else tuple(-c for c in z))
    assert got == sorted(want)
