"""Arithmetic Bohr radius: feasible radius vectors and mean maximization.

A radius vector r >= 0 is feasible for a corpus when every member's
coefficient majorant at r stays below lambda times its sup norm.  The
majorant is a posynomial in r, so feasibility is monotone along every
coordinate ray; mean maximization is a round-robin coordinate ascent whose
per-coordinate step is a plain bisection.  Entries are capped (default 1,
the series domain) and saturated coordinates are flagged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .optimize import _monomials
from .polynomials import VectorPolynomial, supnorm_refined
from .radii import CorpusFunction, as_corpus
from .seeding import derive_seed, generator
from .spaces import INF, inv


@dataclass(frozen=True)
class RadiusVector:
    """Nonnegative radius vector; the mean is always recomputed."""

    r: tuple[float, ...]

    def __post_init__(self):
        if any(x < 0 for x in self.r):
            raise ValueError(f"radius entries must be >= 0: {self.r}")

    @property
    def mean(self) -> float:
        return sum(self.r) / len(self.r)

    @property
    def n(self) -> int:
        return len(self.r)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.r, dtype=float)


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    worst_slack: float
    worst_id: str


class _MajorantSet:
    """Precompiled majorants and thresholds for one corpus and operator."""

    def __init__(self, corpus: Sequence[CorpusFunction], operator, lam: float,
                 seed: int = 0):
        corpus = as_corpus(corpus)
        if not corpus:
            raise ValueError("corpus must be nonempty")
        self.ids = []
        self.weights = []
        self.exponents = []
        self.thresholds = []
        for f in corpus:
            if f.poly.is_zero:
                raise ValueError(f"zero polynomial in corpus: {f.id}")
            norm = f.norm_lower
            if norm is None:
                norm = supnorm_refined(f.poly, seed=derive_seed(seed, "norm", f.id))
            self.ids.append(f.id)
            self.weights.append(f.poly.coefficient_norms(operator))
            self.exponents.append(f.poly.exponents)
            self.thresholds.append(lam * norm)
        self.n = corpus[0].poly.n

    def check(self, r: np.ndarray) -> FeasibilityReport:
        worst = math.inf
        worst_id = self.ids[0]
        ok = True
        for fid, w, A, thr in zip(self.ids, self.weights, self.exponents,
                                  self.thresholds):
            value = float(_monomials(r, A).real @ w)
            slack = thr - value
            if slack < worst:
                worst, worst_id = slack, fid
            if slack < 0:
                ok = False
        return FeasibilityReport(ok, worst, worst_id)


def feasible(r: RadiusVector | Sequence[float], corpus, operator, lam: float,
             seed: int = 0) -> FeasibilityReport:
    """Exact feasibility of a radius vector, with the worst corpus slack.

    Norm lower bounds are used on the right side, so a True verdict is
    conservative with respect to the true sup norms.
    """
    vec = r.as_array() if isinstance(r, RadiusVector) else np.asarray(r, dtype=float)
    if np.any(vec < 0):
        raise ValueError("radius vector must be entrywise nonnegative")
    ms = _MajorantSet(corpus, operator, lam, seed=seed)
    if vec.shape[0] != ms.n:
        raise ValueError(f"radius vector has {vec.shape[0]} entries, corpus domain n={ms.n}")
    return ms.check(vec)


@dataclass(frozen=True)
class MeanResult:
    vector: RadiusVector
    mean: float
    capped_coords: int
    status: str  # "ok" | "infeasible-at-zero"
    method: str = "coordinate-ascent"


def _ray_max(ms: _MajorantSet, direction: np.ndarray, cap: float,
             tol: float = 1e-10) -> float:
    """Largest s with s * direction feasible, entries capped at ``cap``."""
    smax = cap / direction.max() if direction.max() > 0 else 0.0
    if ms.check(smax * direction).feasible:
        return smax
    lo, hi = 0.0, smax
    while hi - lo > tol * max(smax, 1.0):
        mid = 0.5 * (lo + hi)
        if ms.check(mid * direction).feasible:
            lo = mid
        else:
            hi = mid
    return lo


def maximize_mean(corpus, operator, lam: float, budget: int = 4, seed: int = 0,
                  r_cap: float = 1.0, rounds: int = 6,
                  coord_tol: float = 1e-10) -> MeanResult:
    """Feasible radius vector with (locally) maximal mean.

    Starts from the best uniform-ray point plus random restarts, then does
    round-robin coordinate ascent; each coordinate moves to its largest
    feasible value by bisection (the majorants are monotone along rays).
    The returned vector is re-verified feasible by a full exact check.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    ms = _MajorantSet(corpus, operator, lam, seed=seed)
    n = ms.n
    if not ms.check(np.zeros(n)).feasible:
        return MeanResult(RadiusVector((0.0,) * n), 0.0, 0, "infeasible-at-zero")

    def ascend(r0: np.ndarray, order_rng) -> np.ndarray:
        r = r0.copy()
        for _ in range(rounds):
            improved = False
            order = order_rng.permutation(n) if order_rng is not None else range(n)
            for i in order:
                lo, hi = r[i], r_cap
                probe = r.copy()
                probe[i] = hi
                if ms.check(probe).feasible:
                    if hi > lo:
                        r[i] = hi
                        improved = True
                    continue
                while hi - lo > coord_tol:
                    mid = 0.5 * (lo + hi)
                    probe[i] = mid
                    if ms.check(probe).feasible:
                        lo = mid
                    else:
                        hi = mid
                if lo > r[i]:
                    r[i] = lo
                    improved = True
            if not improved:
                break
        return r

    uniform = np.ones(n)
    s = _ray_max(ms, uniform, r_cap)
    candidates = [ascend(s * uniform, None), ascend(np.zeros(n), None)]
    for restart in range(max(budget - 2, 0)):
        rng = generator(seed, "mean-restart", restart)
        direction = rng.random(n) + 0.1
        s0 = _ray_max(ms, direction, r_cap)
        candidates.append(ascend(s0 * direction, rng))
    # the bare uniform-ray point competes too (it is the constructive shape)
    candidates.append(s * uniform)

    best = max(candidates, key=lambda r: r.sum())
    final = ms.check(best)
    if not final.feasible:
        raise AssertionError("coordinate ascent returned an infeasible vector")
    vec = RadiusVector(tuple(float(x) for x in best))
    return MeanResult(vec, vec.mean, int(np.sum(best >= r_cap - 1e-12)), "ok")


def constructive_lower(K_estimate: float, p: float, n: int,
                       eps: float | None = None, *, corpus=None, operator=None,
                       lam: float | None = None, seed: int = 0) -> RadiusVector:
    """The uniform radius vector t n^(-1/p) (1, ..., 1) with t just under K.

    The constant vector maximizes the l1 norm on the lp ball, so scaling it
    by any t below the Bohr radius gives a feasible vector of mean
    t n^(-1/p).  When a corpus is supplied, feasibility is re-verified.
    """
    if not (0.0 < K_estimate <= 1.0):
        raise ValueError(f"K estimate must lie in (0, 1], got {K_estimate}")
    if eps is None:
        eps = 1e-6 * K_estimate
    t = K_estimate - eps
    entry = t * n ** (-inv(p))
    vec = RadiusVector((entry,) * n)
    if corpus is not None:
        if lam is None:
            raise ValueError("re-verification needs lambda")
        report = feasible(vec, corpus, operator, lam, seed=seed)
        if not report.feasible:
            raise AssertionError(
                f"constructive vector infeasible (slack {report.worst_slack:.3g} "
                f"on {report.worst_id})")
    return vec
