"""Fractional ideals in Hermite normal form.

A fractional ideal I is stored as ``(den, hnf)`` where the columns of ``hnf``
are the integral-basis coordinates of a Z-basis of ``den * I``.  ``hnf`` is
upper triangular with positive diagonal and every entry to the right of a
pivot reduced into ``[0, pivot)``.  With ``gcd(den, hnf) = 1`` this is a
canonical form, so ideal equality is tuple equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import _exact
from .errors import ParameterError, RankError
from .field import FieldElement, mul_matrix


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf_integer_columns(cols, n):
    """Column HNF of the Z-span of integer vectors ``cols`` (each length n).

    Returns an n x n list-of-rows matrix; raises RankError if the span has
    rank < n.
    """
    work = [list(c) for c in cols if any(c)]
    pivots = [None] * n
    for row in range(n - 1, -1, -1):
        active = [c for c in work if c[row] != 0]
        rest = [c for c in work if c[row] == 0]
        if not active:
            raise RankError("generators do not span a full-rank module")
        pivot = active[0]
        for other in active[1:]:
            # combine so that `other` loses its entry in this row
            g, x, y = _xgcd(pivot[row], other[row])
            a, b = pivot[row] // g, other[row] // g
            new_pivot = [x * p + y * o for p, o in zip(pivot, other)]
            new_other = [a * o - b * p for p, o in zip(pivot, other)]
            pivot = new_pivot
            if any(new_other):
                rest.append(new_other)
        if pivot[row] < 0:
            pivot = [-v for v in pivot]
        pivots[row] = pivot
        work = rest
    # anything left in `work` is zero now; reduce off-diagonal entries
    for row in range(n - 1, -1, -1):
        d = pivots[row][row]
        for j in range(row + 1, n):
            q = pivots[j][row] // d
            if q:
                pivots[j] = [a - q * b for a, b in zip(pivots[j], pivots[row])]
    return [[pivots[j][i] for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class FracIdeal:
    den: int
    hnf: tuple

    @property
    def n(self):
        return len(self.hnf)

    @property
    def norm(self):
        d = 1
        for i in range(self.n):
            d *= self.hnf[i][i]
        return Fraction(d, self.den**self.n)

    @property
    def inverse_norm(self):
        return 1 / self.norm

    def basis_elements(self):
        """Z-basis of the ideal as field elements."""
        n = self.n
        return [FieldElement(Fraction(self.hnf[i][j], self.den) for i in range(n)) for j in range(n)]

    def contains_one(self):
        return self.contains(FieldElement((1,) + (0,) * (self.n - 1)))

    def contains(self, f):
        """Membership test by back-substitution in the triangular basis."""
        n = self.n
        target = [c * self.den for c in f.coords]
        for i in range(n - 1, -1, -1):
            x = Fraction(target[i], self.hnf[i][i])
            if x.denominator != 1:
                return False
            for k in range(i + 1):
                target[k] -= x * self.hnf[k][i]
        return True

    def to_json(self):
        return {"den": self.den, "hnf": [list(r) for r in self.hnf]}

    @classmethod
    def from_json(cls, obj, n=None):
        if obj == "OF":
            if n is None:
                raise ParameterError("'OF' needs the field degree")
            return unit_ideal(n)
        return hnf_from_generators(
            [[Fraction(obj["hnf"][i][j], int(obj["den"])) for i in range(len(obj["hnf"]))] for j in range(len(obj["hnf"]))]
        )


def hnf_from_generators(cols):
    """Canonical :class:`FracIdeal` spanned by rational coordinate vectors."""
    cols = [[Fraction(x) for x in c] for c in cols]
    if not cols:
        raise RankError("no generators")
    n = len(cols[0])
    den = _exact.lcm_denominators(x for c in cols for x in c)
    icols = [[int(x * den) for x in c] for c in cols]
    h = hnf_integer_columns(icols, n)
    g = den
    for row in h:
        for x in row:
            g = gcd(g, x)
    return FracIdeal(den // g, tuple(tuple(x // g for x in row) for row in h))


def unit_ideal(n):
    return FracIdeal(1, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def principal_ideal(field, f):
    """The ideal f * O_F."""
    return hnf_from_generators(_exact.transpose(mul_matrix(field, f)))


def ideal_mul(I, J, field):
    gens = []
    for a in I.basis_elements():
        for b in J.basis_elements():
            gens.append(field.mul(a, b).coords)
    return hnf_from_generators(gens)


def ideal_scale(I, q):
    """q * I for a nonzero rational q."""
    q = Fraction(q)
    return hnf_from_generators([[q * Fraction(I.hnf[i][j], I.den) for i in range(I.n)] for j in range(I.n)])


def scale_by_element_inverse(I, f, field):
    """The ideal f^{-1} I."""
    minv = _exact.inverse(mul_matrix(field, f))
    cols = [e.coords for e in I.basis_elements()]
    return hnf_from_generators([_exact.matvec(minv, c) for c in cols])


def associated_divisor(J, field):
    """d(J) = (J, N(J)^{-1/n} at every place)."""
    from mpmath import mp

    from .arakelov import ArakelovDivisor

    with mp.workprec(field.precision_bits):
        nrm = J.norm
        lu = -(mp.log(nrm.numerator) - mp.log(nrm.denominator)) / field.n
        return ArakelovDivisor(J, tuple(lu for _ in range(field.places)))
