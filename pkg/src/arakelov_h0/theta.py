"""Theta sums for h0 with the block Poisson split, M selection and tail bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import mp

from .errors import InvariantError, ParameterError
from .lattice import TriangularForm


@dataclass(frozen=True)
class QuadraticSplit:
    """Q = Q1 + 2 i Q2 where Q1 = dual block (x_1..x_k) + projected block (x_{k+1}..x_n).

    ``q2[l][j]`` multiplies x_l * x_{k+1+j}.
    """

    k: int
    dual_form: TriangularForm
    primal_form: TriangularForm
    q2: tuple
    gamma: float

    @property
    def n(self):
        return self.k + self.primal_form.dim

    @property
    def blocks(self):
        return (self.dual_form, self.primal_form)

    def q1(self, x):
        k = self.k
        return self.dual_form.value(x[:k]) + self.primal_form.value(x[k:])

    def q2_value(self, x):
        k = self.k
        return sum(self.q2[l][j] * x[l] * x[k + j] for l in range(k) for j in range(len(x) - k))

    @property
    def min_diagonal(self):
        return min(self.dual_form.diag + self.primal_form.diag)


@dataclass(frozen=True)
class H0Result:
    value: float
    M: float
    delta: float
    term_count: int
    path: str
    tail_bound: float
    k: int = 0

    def to_json(self):
        return {
            "h0": f"{self.value:.12f}",
            "M": int(self.M) if float(self.M).is_integer() else repr(self.M),
            "delta": repr(self.delta),
            "term_count": self.term_count,
            "path": self.path,
            "tail_bound": repr(self.tail_bound),
            "k": self.k,
        }


def _triangular_from(A, lo, hi):
    idx = range(lo, hi)
    diag = tuple(float(A[i][i]) for i in idx)
    m = hi - lo
    off = tuple(tuple(float(A[lo + r][lo + i]) if r > i else 0.0 for i in range(m)) for r in range(m))
    return TriangularForm(diag, off)


def plain_form(g):
    """The k = 0 case: Q1 is the Gram-Schmidt form of the whole lattice, Q2 = 0."""
    n = len(g.A)
    return QuadraticSplit(0, TriangularForm((), ()), _triangular_from(g.A, 0, n), (), 1.0)


def split_form(g, dual):
    n = len(g.A)
    k = dual.k
    if k == 0:
        return plain_form(g)
    dual_form = _triangular_from(dual.C, 0, k)
    primal_form = _triangular_from(g.A, k, n)
    q2 = tuple(
        tuple(float(mp.fsum(g.A[j][i] * dual.cross[l][i] for i in range(k))) for j in range(k, n))
        for l in range(k)
    )
    return QuadraticSplit(k, dual_form, primal_form, q2, float(dual.gamma))


def choose_M(n, delta, lambda_sq_lower):
    """Summation budget for target error delta, rounded up to an integer."""
    if not 0 < delta < 1:
        raise ParameterError("delta must lie in (0, 1)")
    if lambda_sq_lower <= 0:
        raise ParameterError("lambda^2 lower bound must be positive")
    formula = (math.log(1 / delta) + (n + 1) * math.log(3) + (n * (n + 1) / 2 - 1) * math.log(2)) / (math.pi - 1)
    floor_ = (n / 2) * math.log(n / 2) if n > 0 else 0.0
    return float(math.ceil(max(formula, lambda_sq_lower, floor_, 1.0)))


def tail_bound(lam, n, M):
    """Upper bound on sum of exp(-pi |a|^2) over lattice vectors with |a|^2 > M.

    ``lam`` may be any lower bound on the shortest nonzero length.
    """
    lam = float(lam)
    if lam <= 0:
        raise ParameterError("lambda must be positive")
    floor_ = max(lam * lam, (n / 2) * math.log(n / 2) if n > 0 else 0.0)
    if M < floor_ * (1 - 1e-12):
        raise ParameterError(f"M={M} below the validity floor {floor_}")
    with mp.workdps(30):
        M_ = mp.mpf(M)
        first = mp.pi / (mp.pi - 1) * (3 / mp.mpf(lam)) ** n * mp.exp(-(mp.pi - 1) * M_)
        second = (2 * mp.sqrt(M_) / lam - 1) ** n * mp.exp(-mp.pi * M_)
        return float(first - second)


def theta_sum(split, vectors, M, delta=None):
    """h0 = log((1/gamma)(1 + 2 sum exp(-pi Q1) cos(2 pi Q2))) over a half-list of vectors."""
    terms = [1.0]
    for x in vectors:
        q1 = split.q1(x)
        q2 = split.q2_value(x) if split.k else 0.0
        terms.append(2.0 * math.exp(-math.pi * q1) * math.cos(2.0 * math.pi * q2))
    total = math.fsum(terms)
    if total <= 0:
        raise InvariantError("theta sum is not positive")
    lam = math.sqrt(split.min_diagonal)
    try:
        tb = tail_bound(lam, split.n, M)
    except ParameterError:
        tb = math.inf
    return H0Result(
        value=math.log(total / split.gamma),
        M=float(M),
        delta=float(delta) if delta is not None else float("nan"),
        term_count=1 + 2 * len(vectors),
        path="split" if split.k else "plain",
        tail_bound=tb,
        k=split.k,
    )
