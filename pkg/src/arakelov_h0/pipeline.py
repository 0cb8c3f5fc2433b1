"""End-to-end h0: LLL reduction of divisors, the jump walk, good divisors,
the theta evaluation and grid sweeps backed by a cache of good divisors.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from mpmath import mp

from .arakelov import ArakelovDivisor, degree, log_rational, log_vector_norm, translate_to_degree_zero
from .errors import DomainError, InvariantError, MagnitudeError, ParameterError
from .field import FieldElement
from .ideals import FracIdeal, ideal_mul, scale_by_element_inverse, unit_ideal
from .lattice import LatticeBasis, dual_block, enumerate_vectors, gso, lll, place_scaled_columns
from .theta import choose_M, plain_form, split_form, tail_bound, theta_sum

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TraceRow:
    i: int
    ideal: FracIdeal
    norm_Jinv: Fraction
    log_omega: tuple

    def to_json(self, digits=15):
        return {
            "i": self.i,
            "hnf": [list(r) for r in self.ideal.hnf],
            "den": self.ideal.den,
            "norm_Jinv": str(self.norm_Jinv),
            "log_omega": [mp.nstr(x, digits) for x in self.log_omega],
        }


@dataclass
class ReductionOutcome:
    """D = d(J) + (O_F, s) in Pic, with s kept as ``log_s``."""

    J: FracIdeal
    log_s: tuple
    trace: list | None = None

    @property
    def norm_Jinv(self):
        return self.J.inverse_norm

    def as_divisor(self, field):
        """The representative (J, N(J)^{-1/n} s)."""
        with mp.workprec(field.precision_bits):
            base = -log_rational(self.J.norm) / field.n
            return ArakelovDivisor(self.J, tuple(base + x for x in self.log_s))

    def check(self, field, factor=1):
        """Assert the reduction bounds: J^{-1} integral, its norm and ||log s||."""
        nrm = self.norm_Jinv
        if not self.J.contains_one() or nrm.denominator != 1:
            raise InvariantError("J^{-1} is not integral")
        with mp.workprec(field.precision_bits):
            if factor == 1:
                limit = field.n * (field.n - 1) / 2 * mp.log(2) + field.log_partial_F
                if mp.log(nrm.numerator) > limit + mp.mpf(2) ** (-20):
                    raise InvariantError(f"N(J^-1) = {nrm} exceeds 2^(n(n-1)/2) dF")
            size = log_vector_norm(self.log_s, field.degrees)
            # over Q the bound is 0 and only log s = 0 is possible
            if not (size < factor * field.log_big_D_F or size == 0):
                raise InvariantError(f"||log s|| = {mp.nstr(size, 8)} not below {factor} log DF")
            total = mp.fsum(d * x for d, x in zip(field.degrees, self.log_s))
            if abs(total) > mp.mpf(2) ** (-field.precision_bits // 2) * (1 + size) * 1e6:
                raise InvariantError("s does not have norm 1")
        return self


def _skew_limit(field):
    with mp.workprec(field.precision_bits):
        return 4 * field.log_big_D_F + 1


def _lll_reduce(ideal, log_u, field):
    """Core LLL reduction of (I, u): returns (J, log_s, f) with b_1 = u f."""
    with mp.workprec(field.precision_bits):
        elems = ideal.basis_elements()
        vals = [field.place_values(e) for e in elems]
        cols = place_scaled_columns(vals, log_u, field.r1)
        _, U = lll(LatticeBasis(cols))
        f = FieldElement([0] * field.n)
        for i, e in enumerate(elems):
            if U[i][0]:
                f = f + e.scale(U[i][0])
        J = scale_by_element_inverse(ideal, f, field)
        fvals = field.place_values(f)
        lnJ = log_rational(J.norm) / field.n
        log_s = tuple(lu + mp.log(abs(v)) + lnJ for lu, v in zip(log_u, fvals))
    return J, log_s, f


def reduce_divisor(D, field, check=True):
    """LLL reduction on a degree-0 divisor: D = d(J) + (O_F, s) in Pic."""
    with mp.workprec(field.precision_bits):
        deg = degree(D, field)
        scale = 1 + mp.fsum(abs(x) for x in D.log_u)
        if abs(deg) > mp.mpf(2) ** (-field.precision_bits // 2) * scale * 1e6:
            raise DomainError(f"divisor has degree {mp.nstr(deg, 8)}, expected 0")
        mean = mp.fsum(d * x for d, x in zip(field.degrees, D.log_u)) / field.n
        if any(abs(x - mean) > _skew_limit(field) for x in D.log_u):
            raise MagnitudeError("log_u too skewed for a direct reduction; use jump()")
    J, log_s, _ = _lll_reduce(D.ideal, D.log_u, field)
    out = ReductionOutcome(J, log_s)
    return out.check(field) if check else out


def add_reduce(J1, J2, field):
    """Reduce d(J1) + d(J2) = (J1 J2, N(J1 J2)^{-1/n})."""
    with mp.workprec(field.precision_bits):
        limit = field.n * (field.n - 1) / 2 * mp.log(2) + field.log_partial_F + mp.mpf(2) ** -20
        for J in (J1, J2):
            nrm = J.inverse_norm
            if nrm.denominator != 1 or mp.log(nrm.numerator) > limit:
                raise DomainError("add_reduce needs reduced inputs with N(J^-1) <= 2^(n(n-1)/2) dF")
        prod = ideal_mul(J1, J2, field)
        base = -log_rational(prod.norm) / field.n
        D = ArakelovDivisor(prod, tuple(base for _ in range(field.places)))
    return reduce_divisor(D, field)


def jump_steps(log_u, field):
    """The doubling count t and the start point z = 2^{-t} w, w = -log u."""
    with mp.workprec(field.precision_bits):
        w = [-mp.mpf(x) for x in log_u]
        if all(x == 0 for x in w):
            return 0, w
        lp = field.log_partial_F
        if lp <= 0:
            raise DomainError("the torus of this field is a point; log_u must vanish")
        n = field.n
        t = 0
        while any(n * abs(mp.ldexp(x, -t)) >= lp for x in w):
            t += 1
        return t, [mp.ldexp(x, -t) for x in w]


def jump(log_u, field, trace=False):
    """Reduced divisor close to (O_F, u) by repeated doubling and reduction.

    For t = 0 the single reduction of (O_F, u) is returned and the trace
    holds one row for it.
    """
    with mp.workprec(field.precision_bits):
        log_u = tuple(mp.mpf(x) for x in log_u)
        if abs(mp.fsum(d * x for d, x in zip(field.degrees, log_u))) > mp.mpf(2) ** (-field.precision_bits // 2) * (
            1 + mp.fsum(abs(x) for x in log_u)
        ) * 1e6:
            raise DomainError("jump needs a degree-0 vector (weighted sum of log_u must vanish)")
        t, z = jump_steps(log_u, field)
        rows = []
        O = unit_ideal(field.n)
        if t == 0:
            out = reduce_divisor(ArakelovDivisor(O, tuple(-x for x in z)), field)
            if trace:
                out.trace = [TraceRow(0, out.J, out.norm_Jinv, out.log_s)]
            return out
        J = O
        log_omega = tuple(-x for x in z)
        if trace:
            rows.append(TraceRow(0, J, J.inverse_norm, log_omega))
        bound = field.log_big_D_F
        for i in range(t):
            lnJ = log_rational(J.norm) / field.n
            log_v2 = tuple(2 * (x - lnJ) for x in log_omega)
            J, log_omega, _ = _lll_reduce(ideal_mul(J, J, field), log_v2, field)
            if not log_vector_norm(log_omega, field.degrees) < bound:
                raise InvariantError(f"jump step {i + 1}: ||log omega|| exceeds log DF")
            if trace:
                rows.append(TraceRow(i + 1, J, J.inverse_norm, log_omega))
        out = ReductionOutcome(J, log_omega, rows if trace else None)
    return out.check(field)


def good_divisor(D, field, trace=False):
    """A reduced d(J) with D = d(J) + (O_F, s), ||log s|| < 3 log DF."""
    with mp.workprec(field.precision_bits):
        I = D.ideal
        if I == unit_ideal(field.n):
            return jump(D.log_u, field, trace=trace)
        lnI = log_rational(I.norm) / field.n
        first = reduce_divisor(ArakelovDivisor(I, tuple(-lnI for _ in range(field.places))), field)
        second = jump(tuple(x + lnI for x in D.log_u), field, trace=trace)
        third = add_reduce(first.J, second.J, field)
        log_s = tuple(a + b + c for a, b, c in zip(first.log_s, second.log_s, third.log_s))
    out = ReductionOutcome(third.J, log_s, second.trace)
    return out.check(field, factor=3)


class PreparedLattice:
    """LLL-reduced basis of the ideal J behind a good divisor.

    The reduction of the (possibly huge) HNF basis happens once; evaluations
    at nearby points only rescale the reduced basis per place.
    """

    def __init__(self, J, log_s, field):
        self.J = J
        self.field = field
        with mp.workprec(field.precision_bits):
            self.log_s = tuple(mp.mpf(x) for x in log_s)
            self.log_norm = log_rational(J.norm) / field.n
            elems = J.basis_elements()
            vals = [field.place_values(e) for e in elems]
            cols = place_scaled_columns(vals, [x - self.log_norm for x in self.log_s], field.r1)
            _, U = lll(LatticeBasis(cols))
            n = field.n
            self.elements = []
            for j in range(n):
                e = FieldElement([0] * n)
                for i in range(n):
                    if U[i][j]:
                        e = e + elems[i].scale(U[i][j])
                self.elements.append(e)
            self.place_values = [field.place_values(e) for e in self.elements]

    def lattice(self, d, offset=None):
        """Basis of e^{-d/n} N(J)^{-1/n} (s * exp(offset)) J."""
        field = self.field
        with mp.workprec(field.precision_bits):
            base = -mp.mpf(d) / field.n - self.log_norm
            if offset is None:
                offset = (0,) * field.places
            scale = [base + x + mp.mpf(o) for x, o in zip(self.log_s, offset)]
            cols = place_scaled_columns(self.place_values, scale, field.r1)
        return LatticeBasis(cols, {"ideal": self.J, "log_scale": tuple(scale)})

    def h0(self, d, delta, offset=None, split=True, M=None):
        with mp.workprec(self.field.precision_bits):
            return h0_of_lattice(self.lattice(d, offset), delta, split=split, M=M)


def h0_of_lattice(basis, delta, split=True, M=None):
    """log sum_{z in L} exp(-pi |z|^2) via LLL + (optional) Poisson split."""
    if not 0 < delta < 1:
        raise ParameterError("delta must lie in (0, 1)")
    reduced, _ = lll(basis)
    g = gso(reduced)
    if split:
        form = split_form(g, dual_block(reduced, g))
    else:
        form = plain_form(g)
    n = form.n
    lam2 = form.min_diagonal
    if M is None:
        M = choose_M(n, delta, lam2)
        # the closed-form M presumes lambda >= 2^{-(n-1)/2}; keep going until the bound holds
        while tail_bound(math.sqrt(lam2), n, M) > delta:
            M += 1.0
    else:
        M = float(M)
    vectors = enumerate_vectors(form.blocks, M)
    return theta_sum(form, vectors, M, delta)


def h0(W, delta, field, split=True, M=None, outcome=None):
    """Approximate h0(W) with error delta."""
    if not 0 < delta < 1:
        raise ParameterError("delta must lie in (0, 1)")
    with mp.workprec(field.precision_bits):
        d = degree(W, field)
        if outcome is None:
            outcome = good_divisor(translate_to_degree_zero(W, field), field)
        prepared = PreparedLattice(outcome.J, outcome.log_s, field)
        return prepared.h0(d, delta, split=split, M=M)


# ---------------------------------------------------------------- sweeps


@dataclass
class GoodDivisorCache:
    """Good divisors at the centres of a unit grid over the swept region."""

    grid_step: float
    centers: list = dc_field(default_factory=list)  # grid coordinates (tuples)
    indices: list = dc_field(default_factory=list)  # grid index tuples
    entry_of: list = dc_field(default_factory=list)  # position in `distinct`
    distinct: list = dc_field(default_factory=list)  # ReductionOutcome at its first centre
    distinct_center: list = dc_field(default_factory=list)

    def __len__(self):
        return len(self.distinct)

    @property
    def entries(self):
        """(grid centre, outcome) per grid cell."""
        return [(c, e[1]) for c, e in zip(self.centers, self.entry_of)]

    def nearest(self, point):
        """(slot, centre) of the nearest grid centre; ties go to the smallest grid index."""
        best = None
        for slot, (c, idx) in enumerate(zip(self.centers, self.indices)):
            dist = sum((a - b) ** 2 for a, b in zip(point, c))
            key = (dist, idx)
            if best is None or key < best[0]:
                best = (key, slot)
        return best[1]


@dataclass
class SweepRow:
    offset: tuple
    result: object
    cache_index: int


@dataclass
class SweepResult:
    rows: list
    cache: GoodDivisorCache
    directions: list

    def to_csv(self, names=None):
        names = names or [f"t{i + 1}" for i in range(len(self.directions))]
        lines = [",".join(list(names) + ["h0", "M", "term_count", "cache_index"])]
        for row in self.rows:
            cells = [f"{x:.10g}" for x in row.offset]
            cells += [f"{row.result.value:.10f}", f"{row.result.M:g}", str(row.result.term_count), str(row.cache_index)]
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"


def _check_orthonormal(directions, field):
    with mp.workprec(field.precision_bits):
        for i, a in enumerate(directions):
            if len(a) != field.places:
                raise ParameterError("direction has the wrong number of coordinates")
            if abs(mp.fsum(d * x for d, x in zip(field.degrees, a))) > 1e-9:
                raise ParameterError("directions must have degree 0")
            for j, b in enumerate(directions):
                ip = mp.fsum(d * x * y for d, x, y in zip(field.degrees, a, b))
                if abs(ip - (1 if i == j else 0)) > 1e-9:
                    raise ParameterError("directions must be orthonormal in the deg-weighted inner product")


def _grid(extents):
    import itertools

    cells = [max(1, math.ceil(length)) if length > 0 else 1 for length, _ in extents]
    for idx in itertools.product(*(range(c) for c in cells)):
        center = tuple(
            (i + 0.5) if length > 0 else 0.0 for i, (length, _) in zip(idx, extents)
        )
        yield idx, center


def _samples(extents):
    import itertools

    axes = []
    for length, count in extents:
        count = max(1, int(count))
        if count == 1 or length == 0:
            axes.append([0.0])
        else:
            axes.append([length * i / (count - 1) for i in range(count)])
    return list(itertools.product(*axes))


def _log_point(base, directions, coords):
    return tuple(b + mp.fsum(mp.mpf(c) * dv[p] for c, dv in zip(coords, directions)) for p, b in enumerate(base))


def build_cache(D0, directions, extents, field):
    """Good divisor at every unit-grid centre; identical J's share one entry."""
    cache = GoodDivisorCache(1.0)
    seen = {}
    with mp.workprec(field.precision_bits):
        for idx, center in _grid(extents):
            point = _log_point(D0.log_u, directions, center)
            outcome = good_divisor(ArakelovDivisor(D0.ideal, point), field)
            key = outcome.J
            if key not in seen:
                seen[key] = len(cache.distinct)
                cache.distinct.append(outcome)
                cache.distinct_center.append(center)
            cache.centers.append(center)
            cache.indices.append(idx)
            cache.entry_of.append((seen[key], outcome))
    return cache


def _evaluate_chunk(args):
    field, entries, d, delta, jobs = args
    prepared = {}
    out = []
    for key, offset_vec in jobs:
        if key not in prepared:
            J, log_s = entries[key]
            prepared[key] = PreparedLattice(J, log_s, field)
        out.append(prepared[key].h0(d, delta, offset=offset_vec))
    return out


def sweep(W0, directions, extents, delta, field, workers=1):
    """h0 on a grid W0 + (O_F, exp(sum t_k dir_k)), 0 <= t_k <= length_k.

    ``extents`` lists ``(length, sample_count)`` per direction.  Each sample
    reuses the good divisor of its nearest unit-grid centre, with the offset
    folded exactly into s.
    """
    with mp.workprec(field.precision_bits):
        directions = [tuple(mp.mpf(x) for x in dv) for dv in directions]
        if len(directions) != len(extents):
            raise ParameterError("need one extent per direction")
        _check_orthonormal(directions, field)
        d = degree(W0, field)
        D0 = translate_to_degree_zero(W0, field)
        cache = build_cache(D0, directions, extents, field)

        entries = {}
        jobs = []
        slots = []
        for point in _samples(extents):
            slot = cache.nearest(point)
            dist_idx, outcome = cache.entry_of[slot]
            center = cache.centers[slot]
            key = slot
            entries[key] = (outcome.J, outcome.log_s)
            delta_vec = tuple(
                mp.fsum(mp.mpf(p - c) * dv[q] for p, c, dv in zip(point, center, directions)) for q in range(field.places)
            )
            jobs.append((key, delta_vec))
            slots.append((point, dist_idx))

    if workers > 1 and len(jobs) > 1:
        chunk = math.ceil(len(jobs) / workers)
        parts = [jobs[i : i + chunk] for i in range(0, len(jobs), chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [r for part in pool.map(_evaluate_chunk, [(field, entries, d, delta, p) for p in parts]) for r in part]
    else:
        results = _evaluate_chunk((field, entries, d, delta, jobs))

    rows = [SweepRow(tuple(float(x) for x in point), res, idx) for (point, idx), res in zip(slots, results)]
    rows.sort(key=lambda r: r.offset)
    return SweepResult(rows, cache, directions)
