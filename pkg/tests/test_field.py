import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp

from arakelov_h0 import build_field, field_from_spec
from arakelov_h0.errors import ParameterError, RankError, ReducibleError, ZeroElementError
from arakelov_h0.field import embed_element, mul_matrix

from oracles import EX1_DISC, EX2_DISC, EX2_ROOTS, poly_disc, random_maximal_poly


def test_gaussian_field_constants():
    K = build_field([1, 0, 1])
    assert (K.n, K.r1, K.r2) == (2, 0, 1)
    assert K.disc == -4
    assert abs(float(K.partial_F) - 4 / np.pi) < 1e-15
    x = embed_element(K, K.one())
    assert [float(v) for v in x] == pytest.approx([2**0.5, 0.0])


def test_golden_ratio_order():
    # basis 1, phi with phi^2 = phi + 1
    K = build_field([-1, -1, 1])
    phi = K.element([0, 1])
    assert mul_matrix(K, phi) == [[0, 1], [1, 1]]
    assert K.norm(phi) == -1
    assert K.trace(phi) == 1
    assert K.disc == 5


def test_half_integral_basis():
    K = field_from_spec({"poly": [-5, 0, 1], "integral_basis": [[1, 0], ["-1/2", "1/2"]]})
    assert K.disc == 5
    w = K.element([0, 1])
    assert K.mul(w, w) == K.element([1, -1])


def test_ex1_field(ex1):
    F, _ = ex1
    assert F.disc == EX1_DISC
    assert F.precision_bits == 1064
    with mp.workprec(F.precision_bits):
        vals = F.place_values(F.element([0, 1]))
        assert abs(vals[0] + vals[1] + 1) < mp.mpf(2) ** -900
        assert vals[0] < 0 < vals[1]


def test_ex2_field(ex2):
    F, _ = ex2
    assert F.disc == EX2_DISC == poly_disc([-1000470997815, -1090173446, -88998, 1])
    assert (F.r1, F.r2) == (3, 0)
    assert [float(r) for r in F.roots] == pytest.approx(EX2_ROOTS, rel=1e-12)


@pytest.mark.parametrize("seed", range(20))
def test_disc_matches_closed_formula(seed):
    rng = random.Random(seed)
    poly, D = random_maximal_poly(rng, 2 + seed % 2)
    K = build_field(poly)
    assert K.disc == D
    assert K.r1 + 2 * K.r2 == K.n
    assert (K.disc > 0) == (K.r2 % 2 == 0)


def test_norm_is_product_of_embeddings():
    K = build_field([-7, 2, 0, 1])
    rng = random.Random(3)
    for _ in range(20):
        a = K.element([rng.randint(-9, 9) for _ in range(3)])
        if a.is_zero:
            continue
        with mp.workprec(K.precision_bits):
            prod = mp.one
            for d, v in zip(K.degrees, K.place_values(a)):
                prod *= abs(v) ** d
        assert abs(float(prod) - abs(K.norm(a))) <= 1e-9 * max(1, abs(K.norm(a)))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=3, max_size=3), st.lists(st.integers(-50, 50), min_size=3, max_size=3))
def test_multiplication_is_multiplicative_in_norm(a, b):
    K = build_field([-1, -2, 1, 1])
    x, y = K.element(a), K.element(b)
    assert K.norm(K.mul(x, y)) == K.norm(x) * K.norm(y)


def test_inverse():
    K = build_field([1, 0, 1])
    a = K.element([3, 4])
    assert K.mul(a, K.inverse(a)) == K.one()
    assert K.inverse(a) == K.element([Fraction(3, 25), Fraction(-4, 25)])
    with pytest.raises(ZeroElementError):
        K.inverse(K.element([0, 0]))


def test_rejects_bad_input():
    with pytest.raises(ParameterError):
        build_field([1, 2])  # not monic
    with pytest.raises(ReducibleError):
        build_field([-4, 0, 1])
    with pytest.raises(ReducibleError):
        build_field([1, 2, 1])  # repeated root
    with pytest.raises(RankError):
        build_field([-5, 0, 1], [[1, 2], [0, 0]])
    with pytest.raises(ParameterError):
        field_from_spec({"integral_basis": []})


def test_non_integral_basis_rejected():
    from arakelov_h0.errors import DomainError

    with pytest.raises(DomainError):
        field_from_spec({"poly": [-3, 0, 1], "integral_basis": [[1, 0], ["-1/2", "1/2"]]})
