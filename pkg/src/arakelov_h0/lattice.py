"""Real lattices at working precision: embedding, Gram-Schmidt, LLL, dual blocks
and short-vector enumeration for split triangular forms.

Bases are lists of column vectors of mpf.  All routines run under the
caller's ``mp.workprec`` (the pipeline sets it from the field).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from mpmath import mp

from . import kernels
from .errors import MagnitudeError, PrecisionError

LLL_DELTA = mp.mpf(3) / 4


@dataclass
class LatticeBasis:
    columns: list
    provenance: dict | None = dc_field(default=None, repr=False)

    @property
    def dim(self):
        return len(self.columns)


@dataclass
class GSOData:
    bstar: list
    A: list  # A[i][i] = |b_i*|^2, A[i][j] = mu_{i,j} for j < i

    @property
    def covolume(self):
        out = mp.one
        for i in range(len(self.A)):
            out *= mp.sqrt(self.A[i][i])
        return out


@dataclass
class DualBlockData:
    k: int
    C: list
    cross: list  # cross[l][i] = <c_l, b_i*>
    gamma: object
    dual_columns: list = dc_field(default_factory=list, repr=False)


def dot(u, v):
    return mp.fsum(a * b for a, b in zip(u, v))


def place_scaled_columns(place_values, log_scale, r1):
    """Embed elements given by their per-place values, scaling place sigma by exp(log_scale[sigma]).

    ``place_values[j]`` lists sigma(beta_j) over the places.
    """
    scales = [mp.exp(s) for s in log_scale]
    s2 = mp.sqrt(2)
    cols = []
    for vals in place_values:
        col = [scales[p] * vals[p] for p in range(r1)]
        for p in range(r1, len(vals)):
            z = scales[p] * vals[p]
            col.extend((s2 * z.real, s2 * z.imag))
        cols.append(col)
    return cols


def divisor_lattice(J, log_s, d, field, W=None, max_skew=None):
    """Basis of e^{-d/n} N(J)^{-1/n} s J as real columns.

    ``W`` is recorded as provenance only.  ``max_skew`` bounds
    max |log scale - mean| (a guard against overflowing the precision).
    """
    n = field.n
    with mp.workprec(field.precision_bits):
        nrm = J.norm
        base = -mp.mpf(d) / n - (mp.log(nrm.numerator) - mp.log(nrm.denominator)) / n
        log_scale = [base + mp.mpf(x) for x in log_s]
        if max_skew is not None:
            mean = mp.fsum(dg * x for dg, x in zip(field.degrees, log_scale)) / n
            if any(abs(x - mean) > max_skew for x in log_scale):
                raise MagnitudeError("per-place scaling too skewed for the working precision")
        elems = J.basis_elements()
        vals = [field.place_values(e) for e in elems]
        cols = place_scaled_columns(vals, log_scale, field.r1)
    return LatticeBasis(cols, {"ideal": J, "log_scale": tuple(log_scale), "divisor": W})


def gso(basis):
    """Gram-Schmidt data; raises PrecisionError if a b_i* collapses."""
    cols = basis.columns if isinstance(basis, LatticeBasis) else basis
    m = len(cols)
    prec = mp.prec
    bstar = []
    A = [[mp.zero] * m for _ in range(m)]
    for i, b in enumerate(cols):
        v = list(b)
        for j in range(i):
            mu = dot(b, bstar[j]) / A[j][j]
            A[i][j] = mu
            v = [x - mu * y for x, y in zip(v, bstar[j])]
        nn = dot(v, v)
        bb = dot(b, b)
        # cancellation ate (almost) every bit of the mantissa
        if nn <= 0 or nn < bb * mp.mpf(2) ** (-(prec - 48)):
            raise PrecisionError(f"Gram-Schmidt vector {i} collapsed at {prec} bits")
        A[i][i] = nn
        bstar.append(v)
    return GSOData(bstar, A)


def lll(basis, delta_lll=None):
    """LLL reduction with delta = 3/4.

    Returns ``(reduced, U)`` where U is an exact integer matrix (list of rows)
    with ``reduced[:, j] = sum_i basis[:, i] * U[i][j]``.  Deterministic:
    size reduction sweeps j = k-1..0, swaps happen only on strict Lovasz
    failure.
    """
    delta = LLL_DELTA if delta_lll is None else mp.mpf(delta_lll)
    b = [list(c) for c in (basis.columns if isinstance(basis, LatticeBasis) else basis)]
    m = len(b)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    if m <= 1:
        return LatticeBasis(b, getattr(basis, "provenance", None)), U
    g = gso(b)
    k = 1
    iterations = 0
    limit = 200 * m * m + 40 * mp.prec
    while k < m:
        iterations += 1
        if iterations > limit:
            raise PrecisionError("LLL did not terminate; precision too low")
        changed = False
        for j in range(k - 1, -1, -1):
            q = int(mp.nint(g.A[k][j]))
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                for row in U:
                    row[k] -= q * row[j]
                for l in range(j):
                    g.A[k][l] -= q * g.A[j][l]
                g.A[k][j] -= q
                changed = True
        if changed:
            g = gso(b)
        mu = g.A[k][k - 1]
        if g.A[k][k] >= (delta - mu * mu) * g.A[k - 1][k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            for row in U:
                row[k], row[k - 1] = row[k - 1], row[k]
            g = gso(b)
            k = max(k - 1, 1)
    return LatticeBasis(b, getattr(basis, "provenance", None)), U


def dual_block(basis, g):
    """Dual basis of the prefix b_1..b_k with |b_i*|^2 < 1 and its Gram-Schmidt data."""
    cols = basis.columns if isinstance(basis, LatticeBasis) else basis
    n = len(cols)
    k = 0
    while k < n and g.A[k][k] < 1:
        k += 1
    if k == 0:
        return DualBlockData(0, [], [], mp.one, [])
    B = cols[:k]
    G = mp.matrix(k, k)
    for i in range(k):
        for j in range(k):
            G[i, j] = dot(B[i], B[j])
    Ginv = G ** -1
    dual = [[mp.fsum(B[i][r] * Ginv[i, l] for i in range(k)) for r in range(len(B[0]))] for l in range(k)]
    gd = gso(dual)
    cross = [[dot(dual[l], g.bstar[i]) for i in range(k)] for l in range(k)]
    gamma = mp.one
    for i in range(k):
        gamma *= mp.sqrt(g.A[i][i])
    return DualBlockData(k, gd.A, cross, gamma, dual)


@dataclass(frozen=True)
class TriangularForm:
    """sum_i diag[i] (x_i + sum_{r>i} off[r][i] x_r)^2 over float coefficients."""

    diag: tuple
    off: tuple

    @property
    def dim(self):
        return len(self.diag)

    def value(self, x):
        m = self.dim
        total = 0.0
        for i in range(m):
            t = x[i] + sum(self.off[r][i] * x[r] for r in range(i + 1, m))
            total += self.diag[i] * t * t
        return total


def _canonical(x):
    for c in x:
        if c:
            return x if c > 0 else tuple(-v for v in x)
    return x


def enumerate_vectors(blocks, M):
    """Nonzero integer vectors (one per +- pair) with Q1(x) <= M.

    ``blocks`` is a sequence of :class:`TriangularForm` acting on consecutive
    variable ranges; Q1 is their direct sum.  Output is sorted
    lexicographically with the first nonzero coordinate positive.
    """
    M = float(M)
    parts = []
    for blk in blocks:
        pts = kernels.enumerate_block(list(blk.diag), [list(r) for r in blk.off], M)
        pts.sort(key=lambda p: p[1])
        parts.append(pts)
    combos = [((), 0.0)]
    for pts in parts:
        nxt = []
        for x, v in combos:
            room = M - v
            for y, w in pts:
                if w > room:
                    break
                nxt.append((x + y, v + w))
        combos = nxt
    seen = set()
    for x, _ in combos:
        if any(x):
            seen.add(_canonical(x))
    return sorted(seen)
