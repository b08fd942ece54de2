"""Geometry of finite-dimensional lp spaces.

The exponent p lives in [1, inf]; infinity is the honest float ``math.inf``
and every formula branches on it explicitly instead of relying on large
floats.  Conventions: 1' = inf, inf' = 1, and 0^0 = 1 in monomial
evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from .seeding import generator

INF = math.inf


def _check_exponent(p: float) -> float:
    p = float(p)
    if not (p >= 1.0):
        raise ValueError(f"exponent must lie in [1, inf], got {p}")
    return p


def dual_exponent(p: float) -> float:
    """Hoelder conjugate p' with 1/p + 1/p' = 1; 1' = inf and inf' = 1."""
    p = _check_exponent(p)
    if p == 1.0:
        return INF
    if p == INF:
        return 1.0
    return p / (p - 1.0)


def inv(p: float) -> float:
    """1/p with the convention 1/inf = 0 (exponent arithmetic helper)."""
    p = _check_exponent(p)
    return 0.0 if p == INF else 1.0 / p


def lp_norm(z, p: float) -> float:
    """(sum |z_k|^p)^(1/p), max |z_k| for p = inf."""
    p = _check_exponent(p)
    a = np.abs(np.asarray(z))
    if a.size == 0:
        return 0.0
    if p == INF:
        return float(a.max())
    if p == 1.0:
        return float(a.sum())
    if p == 2.0:
        return float(np.sqrt((a * a).sum()))
    return float((a**p).sum() ** (1.0 / p))


@dataclass(frozen=True)
class SpaceSpec:
    """An lp^n space descriptor: exponent p in [1, inf], dimension n >= 1."""

    p: float
    n: int

    def __post_init__(self):
        _check_exponent(self.p)
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        object.__setattr__(self, "p", float(self.p))

    @property
    def dual(self) -> float:
        return dual_exponent(self.p)

    @property
    def cotype(self) -> float:
        """Cot(lq) = max(2, q) for q < inf, inf for q = inf."""
        return INF if self.p == INF else max(2.0, self.p)

    def norm(self, z) -> float:
        z = np.asarray(z)
        if z.shape[-1] != self.n:
            raise ValueError(f"vector has {z.shape[-1]} entries, space has n={self.n}")
        return lp_norm(z, self.p)

    def label(self) -> str:
        p = "inf" if self.p == INF else format(self.p, "g")
        return f"l{p}^{self.n}"


def monomial_max(alpha: Sequence[int], p: float) -> float:
    """Exact maximum of |z^alpha| over the closed unit ball of lp^n.

    Lagrange multipliers on the p-sphere give |z_i|^p = alpha_i/m at the
    maximizer, hence the value prod_i (alpha_i/m)^(alpha_i/p); factors with
    alpha_i = 0 contribute 1, and p = inf gives 1.  The degree must be >= 1
    (constant monomials are the caller's business).
    """
    p = _check_exponent(p)
    m = sum(alpha)
    if any(a < 0 for a in alpha):
        raise ValueError(f"alpha entries must be nonnegative: {tuple(alpha)}")
    if m == 0:
        raise ValueError("monomial_max requires degree >= 1")
    if p == INF:
        return 1.0
    out = 1.0
    for a in alpha:
        if a > 0:
            out *= (a / m) ** (a / p)
    return out


@dataclass(frozen=True)
class GeometryConstants:
    """Cotype/concavity constants for a coefficient space, with provenance.

    The exact value is only known here for Hilbert space (C_2 = 1); anything
    else is an estimator output and is labeled as a lower bound.
    """

    q: float
    cotype_constant: float
    concavity_constant: float
    source: str

    def __post_init__(self):
        if self.cotype_constant < 1.0 or self.concavity_constant < 1.0:
            raise ValueError("geometry constants must be >= 1")


def default_geometry(space: SpaceSpec) -> GeometryConstants:
    """Registry defaults: C_2(l2^d) = 1 exactly; otherwise the conservative
    placeholder 1.0 labeled as such (never an exactness claim)."""
    q = space.cotype
    if space.p == 2.0:
        return GeometryConstants(q=2.0, cotype_constant=1.0,
                                 concavity_constant=1.0, source="exact-hilbert")
    return GeometryConstants(q=q, cotype_constant=1.0, concavity_constant=1.0,
                             source="default-knob")


def rademacher_average(vectors: np.ndarray, q: float, *, mc_trials: int = 4096,
                       seed: int = 0, exhaustive_limit: int = 12) -> float:
    """L2 average of ||sum_k eps_k x_k||_q over independent signs.

    Exhaustive over all sign patterns for families of size <= exhaustive_limit,
    Monte Carlo beyond.  ``vectors`` has shape (k, d).
    """
    x = np.asarray(vectors, dtype=complex)
    k = x.shape[0]
    if k <= exhaustive_limit:
        signs = np.array(list(product((1.0, -1.0), repeat=k)))
    else:
        rng = generator(seed, "rademacher-mc", k)
        signs = rng.choice([1.0, -1.0], size=(mc_trials, k))
    sums = signs @ x
    norms = np.array([lp_norm(row, q) for row in sums])
    return float(np.sqrt(np.mean(norms**2)))


def estimate_cotype_constant(q: float, d: int, trials: int, seed: int = 0) -> float:
    """Statistical lower bound on the cotype-q constant of lq^d.

    Maximizes (sum ||x_k||_q^q)^(1/q) / L2-Rademacher-average over sampled
    finite families.  Any sampled ratio is a valid lower bound on C_q; the
    best found is returned.  The Rademacher average is exact (exhaustive
    signs) for family sizes <= 12.
    """
    q = _check_exponent(q)
    if q < 2.0:
        raise ValueError(f"cotype exponent must be >= 2, got {q}")
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")

    best = 0.0
    for t in range(trials):
        rng = generator(seed, "cotype-family", t)
        k = int(rng.integers(1, 9))
        design = t % 3
        if design == 0:
            x = rng.standard_normal((k, d))
        elif design == 1:
            # repeated single direction: classical ratio k^(1/q - 1/2)
            v = rng.standard_normal(d)
            x = np.tile(v, (k, 1))
        else:
            cols = rng.integers(0, d, size=k)
            x = np.zeros((k, d))
            x[np.arange(k), cols] = rng.choice([1.0, -1.0], size=k)
        x = x.astype(complex)
        if q == INF:
            num = max(lp_norm(row, INF) for row in x)
        else:
            num = float(np.sum([lp_norm(row, q) ** q for row in x]) ** (1.0 / q))
        denom = rademacher_average(x, q, seed=seed)
        if denom > 0:
            best = max(best, num / denom)
    return best
