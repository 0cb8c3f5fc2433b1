import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from arakelov_h0 import build_field
from arakelov_h0.ideals import (
    FracIdeal,
    hnf_from_generators,
    hnf_integer_columns,
    ideal_mul,
    ideal_scale,
    principal_ideal,
    scale_by_element_inverse,
    unit_ideal,
)

GAUSS = build_field([1, 0, 1])
CUBIC = build_field([-1, -2, 1, 1])


def test_hnf_shape():
    h = hnf_integer_columns([[4, 6], [2, 8]], 2)
    # upper triangular, positive pivots, reduced above the pivot
    assert h[1][0] == 0
    assert h[0][0] > 0 and h[1][1] > 0
    assert 0 <= h[0][1] < h[0][0]
    assert h[0][0] * h[1][1] == abs(4 * 8 - 2 * 6)


def test_unit_ideal():
    O = unit_ideal(3)
    assert O.norm == 1
    assert O.contains_one()


def test_principal_norm_equals_element_norm():
    rng = random.Random(7)
    for _ in range(30):
        f = CUBIC.element([rng.randint(-20, 20) for _ in range(3)])
        if f.is_zero:
            continue
        assert principal_ideal(CUBIC, f).norm == abs(CUBIC.norm(f))


def test_ramified_prime_squares_to_two():
    # (2, 1 + i) = (1 + i) and its square is (2)
    P = hnf_from_generators([[2, 0], [1, 1]])
    assert P.norm == 2
    assert P == principal_ideal(GAUSS, GAUSS.element([1, 1]))
    assert ideal_mul(P, P, GAUSS) == principal_ideal(GAUSS, GAUSS.element([2, 0]))


def test_membership():
    P = principal_ideal(GAUSS, GAUSS.element([1, 1]))
    assert P.contains(GAUSS.element([2, 0]))
    assert P.contains(GAUSS.element([1, -1]))
    assert not P.contains(GAUSS.element([1, 0]))
    assert not P.contains_one()


def test_scale_by_element_inverse_roundtrip():
    f = CUBIC.element([2, -1, 3])
    O = unit_ideal(3)
    J = scale_by_element_inverse(O, f, CUBIC)
    assert J.norm == Fraction(1, abs(CUBIC.norm(f)))
    assert J.contains_one()
    assert ideal_mul(J, principal_ideal(CUBIC, f), CUBIC) == O


def test_scale_rational():
    I = ideal_scale(unit_ideal(2), Fraction(3, 2))
    assert I.den == 2
    assert I.norm == Fraction(9, 4)


def test_json_roundtrip():
    I = scale_by_element_inverse(unit_ideal(3), CUBIC.element([5, 1, 0]), CUBIC)
    assert FracIdeal.from_json(I.to_json()) == I
    assert FracIdeal.from_json("OF", 3) == unit_ideal(3)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(-15, 15), min_size=3, max_size=3).filter(any),
    st.lists(st.integers(-15, 15), min_size=3, max_size=3).filter(any),
)
def test_norm_is_multiplicative(a, b):
    I = principal_ideal(CUBIC, CUBIC.element(a))
    J = scale_by_element_inverse(unit_ideal(3), CUBIC.element(b), CUBIC)
    assert ideal_mul(I, J, CUBIC).norm == I.norm * J.norm


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-40, 40), min_size=3, max_size=3), min_size=3, max_size=5))
def test_hnf_is_canonical(cols):
    from arakelov_h0._exact import det

    if all(det([[c[i] for c in cols[j : j + 3]] for i in range(3)]) == 0 for j in range(len(cols) - 2)):
        return
    a = hnf_from_generators(cols)
    rng = random.Random(len(cols))
    shuffled = cols[:]
    rng.shuffle(shuffled)
    mixed = shuffled + [[x + y for x, y in zip(shuffled[0], shuffled[1])]]
    assert hnf_from_generators(mixed) == a
