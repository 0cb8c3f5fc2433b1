"""Arakelov divisors stored in log space."""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp

from .errors import DomainError, MagnitudeError, ParameterError
from .ideals import FracIdeal, ideal_mul, principal_ideal, unit_ideal


def log_rational(q):
    return mp.log(q.numerator) - mp.log(q.denominator)


@dataclass(frozen=True)
class ArakelovDivisor:
    """A pair (I, u) with u kept as ``log_u`` (one entry per infinite place)."""

    ideal: FracIdeal
    log_u: tuple

    def __post_init__(self):
        # mpf entries keep their precision; anything else is converted at the current one
        object.__setattr__(self, "log_u", tuple(x if isinstance(x, mp.mpf) else mp.mpf(x) for x in self.log_u))

    def to_json(self, digits=60):
        return {
            "ideal": self.ideal.to_json(),
            "log_u": [mp.nstr(x, digits, strip_zeros=False) for x in self.log_u],
        }

    @classmethod
    def from_json(cls, obj, field):
        ideal = FracIdeal.from_json(obj.get("ideal", "OF"), field.n)
        if ideal.n != field.n:
            raise ParameterError("ideal dimension does not match the field degree")
        with mp.workprec(field.precision_bits):
            log_u = tuple(mp.mpf(str(x)) for x in obj["log_u"])
        if len(log_u) != field.places:
            raise ParameterError(f"log_u needs {field.places} entries")
        return cls(ideal, log_u)


def weighted_sum(field, values):
    return mp.fsum(d * v for d, v in zip(field.degrees, values))


def degree(D, field):
    """deg D = -(sum_sigma deg(sigma) log u_sigma + log N(I))."""
    with mp.workprec(field.precision_bits):
        return -(weighted_sum(field, D.log_u) + log_rational(D.ideal.norm))


def add(D1, D2, field):
    with mp.workprec(field.precision_bits):
        return ArakelovDivisor(ideal_mul(D1.ideal, D2.ideal, field), tuple(a + b for a, b in zip(D1.log_u, D2.log_u)))


def shift(D, log_offset, field):
    """D + (O_F, exp(log_offset))."""
    with mp.workprec(field.precision_bits):
        return ArakelovDivisor(D.ideal, tuple(a + mp.mpf(b) for a, b in zip(D.log_u, log_offset)))


def translate_to_degree_zero(W, field):
    """(I, e^{d/n} v) for W = (I, v) of degree d."""
    with mp.workprec(field.precision_bits):
        d = degree(W, field)
        return ArakelovDivisor(W.ideal, tuple(x + d / field.n for x in W.log_u))


def principal_divisor(f, field):
    """(f) = (f^{-1} O_F, |f|)."""
    if f.is_zero:
        raise DomainError("principal divisor of zero")
    inv = field.inverse(f)
    with mp.workprec(field.precision_bits):
        log_abs = tuple(mp.log(abs(v)) for v in field.place_values(f))
    return ArakelovDivisor(principal_ideal(field, inv), log_abs)


def zero_divisor(field):
    return ArakelovDivisor(unit_ideal(field.n), (0,) * field.places)


def effectivity(D, field):
    """e(D): 0 unless O_F is contained in I, else exp(-pi ||1||_D^2)."""
    if not D.ideal.contains_one():
        return mp.zero
    with mp.workprec(field.precision_bits):
        bound = 2 * field.log_partial_F
        if any(abs(x) > bound for x in D.log_u):
            raise MagnitudeError("log_u too large to exponentiate; reduce the divisor first")
        norm1 = mp.fsum(d * mp.exp(2 * x) for d, x in zip(field.degrees, D.log_u))
        return mp.exp(-mp.pi * norm1)


def log_vector_norm(log_s, degrees=None):
    """sqrt(sum deg(sigma) (log s_sigma)^2); an upper bound for ||s||_Pic."""
    if degrees is None:
        degrees = (1,) * len(log_s)
    return mp.sqrt(mp.fsum(d * mp.mpf(x) ** 2 for d, x in zip(degrees, log_s)))

