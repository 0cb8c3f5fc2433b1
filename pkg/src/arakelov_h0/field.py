"""Number fields given by a monic integer polynomial and an integral basis.

Elements are stored as exact rational coordinate tuples with respect to the
integral basis ``omega_1 = 1, omega_2, ..., omega_n``.  Numerical work (the
embeddings into F_R) happens in mpmath at ``precision_bits``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import mpmath
from mpmath import mp

from . import _exact
from .errors import DomainError, ParameterError, PrecisionError, RankError, ReducibleError, ZeroElementError

GUARD_BITS = 16


@dataclass(frozen=True)
class FieldElement:
    """Exact coordinates with respect to the integral basis."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @property
    def is_zero(self):
        return not any(self.coords)

    def __add__(self, other):
        return FieldElement(a + b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return FieldElement(-a for a in self.coords)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, q):
        q = Fraction(q)
        return FieldElement(q * a for a in self.coords)


@dataclass(frozen=True, eq=False)
class NumberField:
    poly: tuple
    n: int
    r1: int
    r2: int
    roots: tuple
    integral_basis: tuple
    basis_inverse: tuple
    structure_constants: tuple
    disc: int
    precision_bits: int
    omega_embeddings: tuple = dc_field(repr=False)
    basis_traces: tuple = dc_field(repr=False)

    @property
    def places(self):
        return self.r1 + self.r2

    @property
    def degrees(self):
        return (1,) * self.r1 + (2,) * self.r2

    @property
    def partial_F(self):
        with mp.workprec(self.precision_bits):
            return (2 / mp.pi) ** self.r2 * mp.sqrt(abs(self.disc))

    @property
    def log_partial_F(self):
        with mp.workprec(self.precision_bits):
            return self.r2 * mp.log(2 / mp.pi) + mp.log(abs(self.disc)) / 2

    @property
    def big_D_F(self):
        with mp.workprec(self.precision_bits):
            return mp.exp(self.log_big_D_F)

    @property
    def log_big_D_F(self):
        n = self.n
        with mp.workprec(self.precision_bits):
            return n * ((n - 1) * mp.log(2) / 2 + mp.log(n) / 2) + self.log_partial_F

    def one(self):
        return FieldElement((1,) + (0,) * (self.n - 1))

    def element(self, coords):
        coords = tuple(coords)
        if len(coords) != self.n:
            raise ParameterError(f"expected {self.n} coordinates, got {len(coords)}")
        return FieldElement(coords)

    def mul(self, a, b):
        n = self.n
        c = self.structure_constants
        out = [Fraction(0)] * n
        for i, ai in enumerate(a.coords):
            if not ai:
                continue
            for j, bj in enumerate(b.coords):
                if not bj:
                    continue
                aibj = ai * bj
                cij = c[i][j]
                for k in range(n):
                    if cij[k]:
                        out[k] += aibj * cij[k]
        return FieldElement(out)

    def norm(self, a):
        if a.is_zero:
            return Fraction(0)
        return _exact.det(mul_matrix(self, a))

    def trace(self, a):
        return sum((x * t for x, t in zip(a.coords, self.basis_traces)), Fraction(0))

    def inverse(self, a):
        m = mul_matrix(self, a)
        # f^{-1} = M_f^{-1} applied to the coordinates of 1
        inv = _exact.inverse(m)
        return FieldElement(row[0] for row in inv)

    def place_values(self, a):
        """sigma(a) for every infinite place, real places first."""
        with mp.workprec(self.precision_bits):
            return [
                mp.fsum(mp.mpf(x.numerator) / x.denominator * w for x, w in zip(a.coords, emb) if x)
                if any(a.coords)
                else mp.zero
                for emb in self.omega_embeddings
            ]


def _poly_eval(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_deriv(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


def _poly_rem(a, b):
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    while len(b) > 1 and b[-1] == 0:
        b.pop()
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] -= f * bc
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_gcd_degree(a, b):
    a, b = list(a), list(b)
    while b and any(b):
        a, b = b, _poly_rem(a, b)
    while a and a[-1] == 0:
        a.pop()
    return len(a) - 1


def _power_sums(poly, count):
    """Exact power sums p_0..p_{count-1} of the roots of a monic polynomial."""
    n = len(poly) - 1
    a = poly
    p = [n]
    for k in range(1, count):
        s = sum(a[n - i] * p[k - i] for i in range(1, min(k - 1, n) + 1))
        if k <= n:
            s += k * a[n - k]
        p.append(-s)
    return p


def _reduce_power(poly, coeffs):
    """Reduce a power-basis polynomial modulo the monic defining polynomial."""
    n = len(poly) - 1
    c = [Fraction(x) for x in coeffs]
    for d in range(len(c) - 1, n - 1, -1):
        lead = c[d]
        if lead:
            for i in range(n):
                c[d - n + i] -= lead * poly[i]
        c[d] = Fraction(0)
    c = c[:n] + [Fraction(0)] * max(0, n - len(c))
    return c


def _find_roots(poly, prec):
    n = len(poly) - 1
    work = prec + 2 * max(abs(c) for c in poly).bit_length() + 64
    with mp.workprec(work):
        if n == 1:
            return [mp.mpf(-poly[0])], work
        try:
            roots = mpmath.polyroots(list(reversed(poly)), maxsteps=400, extraprec=work)
        except mpmath.libmp.NoConvergence as exc:  # pragma: no cover - polyroots rarely fails
            raise PrecisionError(f"root finding did not converge: {exc}") from exc
        target = mp.mpf(2) ** (-prec + GUARD_BITS)
        deriv = _poly_deriv(poly)
        refined = []
        for r in roots:
            r = mp.mpc(r)
            for _ in range(60):
                fp = _poly_eval(deriv, r)
                if fp == 0:
                    raise ReducibleError("repeated root")
                step = _poly_eval(poly, r) / fp
                r = r - step
                # a simple root lies within n|p/p'| of r
                if n * abs(step) < target:
                    break
            else:
                raise PrecisionError("root refinement did not converge")
            fp = _poly_eval(deriv, r)
            radius = n * abs(_poly_eval(poly, r) / fp)
            if radius > target:
                raise PrecisionError("root refinement did not reach the requested precision")
            refined.append((r, radius))
        return refined, work


def build_field(poly, integral_basis=None, precision_bits=None):
    """Construct a :class:`NumberField`.

    Parameters
    ----------
    poly : list of int
        Coefficients low to high, monic.
    integral_basis : n x n rationals, optional
        ``integral_basis[k][j]`` is the coefficient of alpha^k in omega_j.
        Defaults to the power basis (the order Z[alpha]).
    precision_bits : int, optional
        Working precision; defaults to ``max(192, 4 * bitlength(disc))``.
    """
    poly = [int(c) for c in poly]
    n = len(poly) - 1
    if n < 1:
        raise ParameterError("polynomial must have degree >= 1")
    if poly[-1] != 1:
        raise ParameterError("polynomial must be monic")

    if integral_basis is None:
        basis = _exact.identity(n)
    else:
        basis = [[_exact.to_fraction(x) for x in row] for row in integral_basis]
        if len(basis) != n or any(len(r) != n for r in basis):
            raise ParameterError("integral basis must be n x n")
    if [basis[k][0] for k in range(n)] != [1] + [0] * (n - 1):
        raise ParameterError("first integral basis element must be 1")
    if _exact.det(basis) == 0:
        raise RankError("integral basis is not invertible")
    binv = _exact.inverse(basis)

    if n >= 2:
        if _poly_gcd_degree(poly, _poly_deriv(poly)) > 0:
            raise ReducibleError("polynomial has a repeated factor")

    # structure constants: omega_i * omega_j in the power basis, then back
    cols = [[basis[k][j] for k in range(n)] for j in range(n)]
    struct = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = [Fraction(0)] * (2 * n - 1)
            for a, ca in enumerate(cols[i]):
                if ca:
                    for b, cb in enumerate(cols[j]):
                        if cb:
                            prod[a + b] += ca * cb
            row.append(tuple(_exact.matvec(binv, _reduce_power(poly, prod))))
        struct.append(tuple(row))
    if any(x.denominator != 1 for row in struct for v in row for x in v):
        raise DomainError("integral basis does not span an order (non-integral structure constants)")

    psums = _power_sums(poly, 2 * n)
    traces = tuple(sum((cols[j][k] * psums[k] for k in range(n)), Fraction(0)) for j in range(n))

    def trace_of(coords):
        return sum((x * t for x, t in zip(coords, traces)), Fraction(0))

    gram = [[trace_of(struct[i][j]) for j in range(n)] for i in range(n)]
    disc_q = _exact.det(gram)
    if disc_q.denominator != 1:
        raise DomainError("trace form discriminant is not an integer")
    disc = int(disc_q)

    if precision_bits is None:
        precision_bits = max(192, 4 * abs(disc).bit_length())
    precision_bits = int(precision_bits)
    if precision_bits < 53:
        raise ParameterError("precision_bits must be at least 53")

    refined, work = _find_roots(poly, precision_bits)
    with mp.workprec(work):
        if n == 1:
            real = [refined[0]]
            cplx = []
        else:
            real, cplx = [], []
            for r, radius in refined:
                if abs(r.imag) <= 2 * radius + mp.mpf(2) ** (-precision_bits // 2):
                    real.append(mp.mpf(r.real))
                elif r.imag > 0:
                    cplx.append(r)
            real.sort()
            cplx.sort(key=lambda z: (z.real, z.imag))
        r1, r2 = len(real), len(cplx)
        if r1 + 2 * r2 != n:
            raise PrecisionError("could not separate real and complex roots")

        for r in real if n > 1 else ():
            m = int(mp.nint(r))
            if _poly_eval(poly, m) == 0:
                raise ReducibleError(f"polynomial has the integer root {m}")

        roots = tuple(real + cplx)
        emb = []
        for r in roots:
            powers = [mp.one]
            for _ in range(n - 1):
                powers.append(powers[-1] * r)
            emb.append(
                tuple(
                    mp.fsum(mp.mpf(cols[j][k].numerator) / cols[j][k].denominator * powers[k] for k in range(n) if cols[j][k])
                    for j in range(n)
                )
            )

    return NumberField(
        poly=tuple(poly),
        n=n,
        r1=r1,
        r2=r2,
        roots=roots,
        integral_basis=tuple(tuple(r) for r in basis),
        basis_inverse=tuple(tuple(r) for r in binv),
        structure_constants=tuple(struct),
        disc=disc,
        precision_bits=precision_bits,
        omega_embeddings=tuple(emb),
        basis_traces=traces,
    )


def embed_element(field, f):
    """Real coordinates of f under the trace-form isometry F_R -> R^n.

    Complex places contribute (sqrt2 Re, sqrt2 Im) so that the Euclidean norm
    equals sum over places of deg(sigma) |sigma(f)|^2.
    """
    vals = field.place_values(f)
    with mp.workprec(field.precision_bits):
        out = [mp.mpf(v) for v in vals[: field.r1]]
        s2 = mp.sqrt(2)
        for v in vals[field.r1 :]:
            out.extend((s2 * v.real, s2 * v.imag))
    return out


def mul_matrix(field, f):
    """Matrix of multiplication by f: column j holds the coordinates of f*omega_j."""
    if f.is_zero:
        raise ZeroElementError("multiplication matrix of zero")
    n = field.n
    c = field.structure_constants
    m = [[Fraction(0)] * n for _ in range(n)]
    for i, fi in enumerate(f.coords):
        if not fi:
            continue
        for j in range(n):
            cij = c[i][j]
            for k in range(n):
                if cij[k]:
                    m[k][j] += fi * cij[k]
    return m


def field_from_spec(spec, precision_bits=None):
    """Build a field from the JSON-style mapping used by the CLI.

    ``integral_basis`` there is a list of basis elements, each a list of
    power-basis coordinates (ints, ``"p/q"`` strings or ``[p, q]`` pairs).
    """
    if "poly" not in spec:
        raise ParameterError("field JSON needs a 'poly' entry")
    poly = [int(c) for c in spec["poly"]]
    basis = None
    if spec.get("integral_basis") is not None:
        elems = [[_exact.to_fraction(x) for x in e] for e in spec["integral_basis"]]
        basis = _exact.transpose(elems)
    prec = precision_bits if precision_bits is not None else spec.get("precision_bits")
    return build_field(poly, basis, prec)
