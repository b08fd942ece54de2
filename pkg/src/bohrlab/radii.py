"""Per-function and corpus-level Bohr radius estimators.

The radius of one function is found by bisection on the feasibility
predicate "majorant sup over the scaled ball <= lambda * ||f||".  The inner
supremum over the ball is evaluated on a fixed candidate pool built once by
projected ascent (plus closed forms where they exist: p = inf, one active
variable, homogeneous members); a fixed pool keeps the predicate exactly
monotone in r and makes the whole search deterministic.  The corpus minimum
of per-function radii is the upper endpoint of a certified bracket; every
endpoint records its provenance and direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .optimize import _monomials, posynomial_sphere_max
from .polynomials import VectorPolynomial, majorant, supnorm_refined, supnorm_upper
from .seeding import derive_seed
from .spaces import INF

R_CAP_DEFAULT = 1.0


@dataclass(frozen=True)
class RadiusEstimate:
    """A certified bracket for a radius quantity with endpoint provenance."""

    quantity: str  # "K" | "K_m" | "A"
    p: float
    n: int
    m: int | None
    lam: float
    operator: str
    lower: float
    lower_source: str
    upper: float
    upper_source: str
    tol: float
    capped: bool
    seed: int
    raw_upper: float | None = None
    note: str = ""


@dataclass(frozen=True)
class CorpusFunction:
    """A corpus member: polynomial plus whatever is known about its norm.

    ``norm_lower`` is a certified lower bound on sup ||f|| (exact for
    constructed families such as disk automorphism truncations, where the
    tail bound of the discarded majorant mass is recorded as well).
    """

    id: str
    poly: VectorPolynomial
    norm_lower: float | None = None
    norm_source: str = "ascent-refined"
    tail_bound: Callable[[float], float] | None = None


def as_corpus(items) -> list[CorpusFunction]:
    out = []
    for i, item in enumerate(items):
        if isinstance(item, CorpusFunction):
            out.append(item)
        else:
            out.append(CorpusFunction(id=f"f{i}", poly=item))
    return out


class MajorantOracle:
    """Lower estimator of r -> sup_{||z||_p <= 1} sum ||V c_a|| (r|z|)^a.

    Exact closed form when p = inf, n = 1, or a single variable occurs;
    otherwise the sup is the max of the weighted posynomial over a fixed
    candidate pool on the nonnegative sphere, found once by multistart
    ascent under two degree weightings.  Fixed pools make the estimate
    monotone in r.
    """

    def __init__(self, poly: VectorPolynomial, operator, budget: int = 12,
                 iters: int = 80, seed: int = 0):
        self.poly = poly
        self.p = poly.domain.p
        self.weights = poly.coefficient_norms(operator)
        self.exponents = poly.exponents
        self.degrees = poly.exponents.sum(axis=1).astype(float)
        active = poly.active_variables
        self.exact = (self.p == INF) or poly.n == 1 or len(active) <= 1
        self._pool_values: np.ndarray | None = None
        if not self.exact and not poly.is_zero:
            n = poly.n
            # uniform and basis witnesses stay in the pool unconditionally:
            # downstream constructions (the constructive arithmetic vector)
            # rely on the sup estimate dominating these points at every r
            pools = [np.full(n, n ** (-1.0 / self.p) / (1.0 + 1e-13))]
            pools.extend(np.eye(n)[k] for k in range(n))
            for tag, r in (("r1", 1.0), ("rhalf", 0.5)):
                w = self.weights * r**self.degrees
                _, _, pool = posynomial_sphere_max(
                    w, self.exponents, self.p, restarts=budget, iters=iters,
                    seed=derive_seed(seed, "majorant-pool", tag))
                pools.extend(pool)
            # rows: candidate points, columns: terms; bake in the weights
            mono = np.array([_monomials(u, self.exponents).real for u in pools])
            self._pool_values = mono * self.weights[None, :]

    def sup_lower(self, r: float) -> float:
        """Certified lower bound on the majorant supremum at scalar radius r."""
        if r < 0:
            raise ValueError("radius must be >= 0")
        if self.poly.is_zero:
            return 0.0
        rpow = np.power(r, self.degrees)
        if self.exact:
            return float(self.weights @ rpow)
        return float((self._pool_values @ rpow).max())


@dataclass(frozen=True)
class FunctionRadius:
    radius: float
    capped: bool
    norm_lower: float
    norm_source: str
    majorant_exact: bool
    tol: float
    tail_at_radius: float
    note: str = ""


def function_bohr_radius(f: CorpusFunction | VectorPolynomial, operator,
                         lam: float, tol: float = 1e-9, *, r_cap: float = R_CAP_DEFAULT,
                         budget: int = 12, seed: int = 0) -> FunctionRadius:
    """Largest r in [0, r_cap] with majorant-sup(r) <= lambda ||f||, by bisection.

    The right side uses a certified lower bound of ||f||; the left side a
    certified lower bound of the sup.  The two directions are recorded: with
    an exact norm the result over-estimates the true per-function radius
    (never under), which is the sound direction for corpus upper bounds.
    """
    if not isinstance(f, CorpusFunction):
        f = CorpusFunction(id="adhoc", poly=f)
    if f.poly.is_zero:
        raise ValueError("the zero function has no Bohr radius")
    if tol <= 0:
        raise ValueError(f"tolerance must be > 0, got {tol}")
    if lam < 1.0:
        raise ValueError(f"lambda must be >= 1, got {lam}")

    if f.norm_lower is not None:
        norm_lower, norm_source = f.norm_lower, f.norm_source
    else:
        norm_lower = supnorm_refined(f.poly, seed=derive_seed(seed, "norm", f.id))
        norm_source = "ascent-refined"
    if norm_lower <= 0:
        raise ValueError(f"nonpositive norm estimate for {f.id}")

    threshold = lam * norm_lower
    oracle = MajorantOracle(f.poly, operator, budget=budget,
                            seed=derive_seed(seed, "oracle", f.id))
    note = ""
    if lam <= 1.0 and (f.poly.d > 1 or (operator is not None and operator.kind != "identity")):
        note = "no positivity guarantee"

    def tail(r):
        return f.tail_bound(r) if f.tail_bound is not None else 0.0

    if oracle.sup_lower(r_cap) <= threshold:
        return FunctionRadius(r_cap, True, norm_lower, norm_source,
                              oracle.exact, tol, tail(r_cap), note)
    if oracle.sup_lower(0.0) > threshold:
        return FunctionRadius(0.0, False, norm_lower, norm_source,
                              oracle.exact, tol, tail(0.0),
                              note or "infeasible at r = 0")

    lo, hi = 0.0, r_cap
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if oracle.sup_lower(mid) <= threshold:
            lo = mid
        else:
            hi = mid
    return FunctionRadius(lo, False, norm_lower, norm_source,
                          oracle.exact, tol, tail(lo), note)


def estimate_K_upper(corpus: Sequence[CorpusFunction | VectorPolynomial],
                     operator, lam: float, tol: float = 1e-9, *,
                     r_cap: float = R_CAP_DEFAULT, budget: int = 12,
                     seed: int = 0) -> RadiusEstimate:
    """Corpus upper estimate of K: min over members of the per-function radius.

    Each member's radius is an upper estimate for K, so the minimum is; the
    argmin id is recorded in the provenance.
    """
    corpus = as_corpus(corpus)
    if not corpus:
        raise ValueError("corpus must be nonempty")
    best: FunctionRadius | None = None
    best_id = ""
    for f in corpus:
        res = function_bohr_radius(f, operator, lam, tol, r_cap=r_cap,
                                   budget=budget, seed=seed)
        if best is None or res.radius < best.radius:
            best, best_id = res, f.id
    poly = corpus[0].poly
    op_label = "identity" if operator is None else operator.label()
    src = f"corpus:{best_id};norm={best.norm_source}"
    if best.tail_at_radius > 0:
        src += f";trunc_tail={best.tail_at_radius:.3g}"
    if not best.majorant_exact:
        src += ";majorant=ascent-pool"
    return RadiusEstimate(
        quantity="K", p=poly.domain.p, n=poly.n, m=None, lam=lam,
        operator=op_label, lower=0.0, lower_source="trivial",
        upper=best.radius, upper_source=src, tol=tol, capped=best.capped,
        seed=seed, note=best.note)


def estimate_Km_upper(corpus: Sequence[CorpusFunction | VectorPolynomial],
                      operator, lam: float, *, budget: int = 12,
                      seed: int = 0) -> RadiusEstimate:
    """Upper estimate of the degree-m homogeneous radius K_m.

    For a homogeneous P the defining constraint scales as r^m, so each
    member yields lambda^(1/m) (||P|| / S(P))^(1/m) with S the majorant sup
    at radius 1.  Pairing the coefficient-majorant UPPER bound of ||P||
    with the ascent LOWER bound of S makes the minimum a true upper bound.
    The uncapped value is kept alongside (the lambda^(1/m) scaling law is
    exact only before capping).
    """
    corpus = as_corpus(corpus)
    if not corpus:
        raise ValueError("corpus must be nonempty")
    degrees = {f.poly.homogeneous_degree for f in corpus}
    if len(degrees) != 1 or None in degrees:
        raise ValueError(f"corpus must be homogeneous of a single degree, got {degrees}")
    m = degrees.pop()
    if m < 1:
        raise ValueError("degree must be >= 1")

    best_raw = math.inf
    best_id = ""
    for f in corpus:
        if f.poly.is_zero:
            raise ValueError(f"zero polynomial in corpus: {f.id}")
        oracle = MajorantOracle(f.poly, operator, budget=budget,
                                seed=derive_seed(seed, "km-oracle", f.id))
        s_lower = oracle.sup_lower(1.0)
        if s_lower <= 0:
            continue
        ratio = supnorm_upper(f.poly) / s_lower
        raw = lam ** (1.0 / m) * ratio ** (1.0 / m)
        if raw < best_raw:
            best_raw, best_id = raw, f.id
    if not math.isfinite(best_raw):
        raise ValueError("no usable corpus member")
    poly = corpus[0].poly
    op_label = "identity" if operator is None else operator.label()
    capped = best_raw > R_CAP_DEFAULT
    return RadiusEstimate(
        quantity="K_m", p=poly.domain.p, n=poly.n, m=m, lam=lam,
        operator=op_label, lower=0.0, lower_source="trivial",
        upper=min(best_raw, R_CAP_DEFAULT),
        upper_source=f"corpus:{best_id};norm=coeff-majorant-upper;S=ascent-lower",
        tol=0.0, capped=capped, seed=seed, raw_upper=best_raw)


@dataclass(frozen=True)
class SandwichReport:
    lam: float
    opnorm: float
    factor: float
    k_upper: float
    entries: list = field(default_factory=list)  # (name, km_lower, k_lower, slack)

    @property
    def passed(self) -> bool:
        return all(slack >= 0 for *_rest, slack in self.entries)


def sandwich_check(k_upper: float | RadiusEstimate, km_lower_bounds: dict,
                   opnorm: float, lam: float) -> "SandwichReport":
    """Check formula lower bounds against a corpus upper estimate of K.

    Each entry of ``km_lower_bounds`` names a certified lower bound on
    inf_m K_m; the reduction factor (lambda-||V||)/(2 lambda-||V||) turns it
    into a lower bound on K, which must not exceed the corpus upper
    estimate.  The slack of each comparison is reported.
    """
    if not (0.0 < opnorm < lam):
        raise ValueError(f"sandwich needs ||V|| < lambda, got {opnorm} >= {lam}")
    upper = k_upper.upper if isinstance(k_upper, RadiusEstimate) else float(k_upper)
    factor = (lam - opnorm) / (2.0 * lam - opnorm)
    entries = []
    for name, val in km_lower_bounds.items():
        k_lower = factor * val
        entries.append((name, val, k_lower, upper - k_lower))
    return SandwichReport(lam=lam, opnorm=opnorm, factor=factor,
                          k_upper=upper, entries=entries)
