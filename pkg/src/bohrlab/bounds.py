"""Closed-form bounds, constants, and exponent formulas.

Every calculator is a pure function of its parameters.  Universal constants
that the underlying theory leaves abstract (C, B, cotype constants,
summing constants) enter as explicit knobs defaulting to 1 and are echoed
in the provenance string, never silently fabricated.  log is the natural
logarithm, and exponent arithmetic treats p = inf symbolically (1/inf = 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .spaces import INF, inv

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class BoundSpec:
    """One evaluated bound: which theorem, which direction, which knobs."""

    theorem: str
    direction: str  # "lower" | "upper"
    value: float
    params: dict = field(default_factory=dict)
    constants_used: str = "none"

    def __post_init__(self):
        if self.direction not in ("lower", "upper"):
            raise ValueError(f"direction must be lower/upper, got {self.direction}")
        if self.value < 0:
            raise ValueError(f"bound value must be >= 0, got {self.value}")


def _check_opnorm_lambda(opnorm: float, lam: float) -> None:
    if not (0.0 < opnorm < lam):
        raise ValueError(f"need 0 < ||V|| < lambda, got ||V||={opnorm}, lambda={lam}")


def prop22_constant(opnorm: float, lam: float) -> float:
    """The positivity constant B for a non-null operator with ||V|| < lambda.

    Two-case maximum: for ||V|| >= 1,
        max{ (l-v)/((l-v+1) v), (l-v)/(2l-v) },
    and for 0 < ||V|| < 1 the first denominator loses the factor v.
    """
    _check_opnorm_lambda(opnorm, lam)
    v, l = opnorm, lam
    second = (l - v) / (2.0 * l - v)
    if v >= 1.0:
        first = (l - v) / ((l - v + 1.0) * v)
    else:
        first = (l - v) / (l - v + 1.0)
    return max(first, second)


def homogeneous_reduction_factor(opnorm: float, lam: float) -> float:
    """(lambda - ||V||) / (2 lambda - ||V||): scales inf_m K_m down to K."""
    _check_opnorm_lambda(opnorm, lam)
    return (lam - opnorm) / (2.0 * lam - opnorm)


def homogeneous_reduction_factor_lambda1(opnorm: float, lam: float) -> float:
    """(lambda - ||V||) / (lambda - ||V|| + 1): the lambda = 1 reduction."""
    _check_opnorm_lambda(opnorm, lam)
    return (lam - opnorm) / (lam - opnorm + 1.0)


def lower_bound_general(p: float, n: int, lam: float, opnorm: float,
                        identity: bool = False) -> float:
    """K >= B / n^(1-1/p); identity operators use B = (lambda-1)/lambda."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if identity:
        if lam < 1.0:
            raise ValueError("identity bound needs lambda >= 1")
        B = (lam - 1.0) / lam
    else:
        B = prop22_constant(opnorm, lam)
    return B * n ** (-(1.0 - inv(p)))


def cotype_bounds(p: float, n: int, lam: float, q: float,
                  C_q: float = 1.0, direction: str = "lower") -> float:
    """Bracket branches for identities on a space of cotype q (q = Cot(X)).

    upper:  lambda / n^(1-1/p)  when p <= q, else lambda / n^(1-1/q).
    lower:  (lambda-1)/(lambda e) when p <= r, else the same over
            C_q n^(1/r - 1/p), with r = q/(q-1).
    """
    if q < 2.0:
        raise ValueError(f"cotype exponent must be >= 2, got {q}")
    if C_q < 1.0:
        raise ValueError(f"cotype constant must be >= 1, got {C_q}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if direction == "upper":
        if p <= q:
            return lam * n ** (-(1.0 - inv(p)))
        return lam * n ** (-(1.0 - inv(q)))
    if direction == "lower":
        if lam <= 1.0:
            return 0.0
        r = INF if q == INF else q / (q - 1.0)
        base = (lam - 1.0) / (lam * math.e)
        if p <= r:
            return base
        return base / C_q * n ** (-(inv(r) - inv(p)))
    raise ValueError(f"direction must be lower/upper, got {direction}")


def rho_exponent(q: float, r: float, m: int) -> float:
    """rho = q r m / (q + (m-1) r), the summability exponent for degree m."""
    if not (2.0 <= q < INF):
        raise ValueError(f"q must lie in [2, inf), got {q}")
    if not (1.0 <= r <= q):
        raise ValueError(f"r must lie in [1, q], got {r}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return q * r * m / (q + (m - 1) * r)


ENVELOPE_KINDS = ("main_lower", "main_upper", "arithmetic_lower",
                  "arithmetic_upper", "concave_operator_lower",
                  "operator_theorem12")


def envelope(p: float, n: int, lam: float, kind: str, *, C: float = 1.0,
             B: float = 1.0, q: float | None = None,
             opnorm: float | None = None) -> float:
    """Asymptotic envelope values with explicit constant knobs.

    main_lower / main_upper:   C (l-1)/(2l-1) (log n/n)^(1-1/min(p,2))
                               and B l^2 (log n/n)^(1-1/min(p,2));
    operator_theorem12:        C (log n/n)^(1-1/max(2,q));
    arithmetic_lower:          C n^(-1/p) (log n/n)^(1-1/max(2,q));
    arithmetic_upper:          B (log n)^(1-1/min(p,2)) / n^(1/2+1/max(p,2));
    concave_operator_lower:    C (l-||V||)/(2l-||V||) (log n/n)^(1-1/q).
    """
    if n < 2:
        raise ValueError(f"envelopes need n >= 2, got {n}")
    if kind not in ENVELOPE_KINDS:
        raise ValueError(f"unknown envelope kind {kind!r}")
    ln = math.log(n)
    small = 1.0 - 1.0 / min(p, 2.0)
    if kind == "main_lower":
        if lam <= 1.0:
            return 0.0
        return C * (lam - 1.0) / (2.0 * lam - 1.0) * (ln / n) ** small
    if kind == "main_upper":
        return B * lam**2 * (ln / n) ** small
    if kind == "operator_theorem12":
        if q is None:
            raise ValueError("operator_theorem12 needs the target exponent q")
        return C * (ln / n) ** (1.0 - 1.0 / max(2.0, q))
    if kind == "arithmetic_lower":
        if q is None:
            raise ValueError("arithmetic_lower needs the target exponent q")
        return C * n ** (-inv(p)) * (ln / n) ** (1.0 - 1.0 / max(2.0, q))
    if kind == "arithmetic_upper":
        return B * ln**small / n ** (0.5 + inv(max(p, 2.0)))
    # concave_operator_lower
    if opnorm is None or q is None:
        raise ValueError("concave_operator_lower needs q and the operator norm")
    _check_opnorm_lambda(opnorm, lam)
    return C * (lam - opnorm) / (2.0 * lam - opnorm) * (ln / n) ** (1.0 - 1.0 / q)


def km_polydisc_lower(n: int, lam: float, B: float = 1.0) -> float:
    """B (lambda-1)/(2 lambda-1) sqrt(log n / n): the degree-uniform lower
    bound on the polydisc, which also bounds every K_m(B_{lp^n}) below."""
    if n < 2:
        raise ValueError(f"needs n >= 2, got {n}")
    if lam <= 1.0:
        return 0.0
    return B * (lam - 1.0) / (2.0 * lam - 1.0) * math.sqrt(math.log(n) / n)


def embedding_bounds(p: float, r: float, q: float, n: int, lam: float,
                     direction: str, constant: float = 1.0) -> float:
    """Piecewise envelopes for the inclusion lr -> lq, 1 <= r < q < inf.

    upper: (log n/n)^(1-1/min(p,2)) if r < 2; n^-(1-1/p) if p <= r;
           n^-(1-1/r) if r < p.
    lower: sqrt(log n/n) if r < 2; 1/e if p <= r; n^-(1-1/r-1/p) if r < p.
    Constants depending on lambda, r, q sit in the ``constant`` knob.
    """
    if not (1.0 <= r < q < INF):
        raise ValueError(f"need 1 <= r < q < inf, got r={r}, q={q}")
    if n < 2:
        raise ValueError(f"needs n >= 2, got {n}")
    ln = math.log(n)
    if direction == "upper":
        if r < 2.0:
            return constant * (ln / n) ** (1.0 - 1.0 / min(p, 2.0))
        if p <= r:
            return constant * n ** (-(1.0 - inv(p)))
        return constant * n ** (-(1.0 - 1.0 / r))
    if direction == "lower":
        if r < 2.0:
            return constant * math.sqrt(ln / n)
        if p <= r:
            return constant / math.e
        return constant * n ** (-(1.0 - 1.0 / r - inv(p)))
    raise ValueError(f"direction must be lower/upper, got {direction}")


def arithmetic_embedding_bounds(p: float, r: float, q: float, n: int, lam: float,
                                direction: str, constant: float = 1.0) -> float:
    """Piecewise envelopes for the arithmetic radius of the inclusion lr -> lq.

    upper: (log n)^(1-1/min(p,2)) / n^(1/2+1/max(p,2)) if r < 2; 1/n if
           p <= r; n^-(1-1/r+1/p) if r < p.
    lower: sqrt(log n)/n^(1+1/p) if r < 2; 1/(e n^(1/p)) if p <= r;
           n^-(1-1/r) if r < p.
    """
    if not (1.0 <= r < q < INF):
        raise ValueError(f"need 1 <= r < q < inf, got r={r}, q={q}")
    if n < 2:
        raise ValueError(f"needs n >= 2, got {n}")
    ln = math.log(n)
    if direction == "upper":
        if r < 2.0:
            return constant * ln ** (1.0 - 1.0 / min(p, 2.0)) / n ** (0.5 + inv(max(p, 2.0)))
        if p <= r:
            return constant / n
        return constant * n ** (-(1.0 - 1.0 / r + inv(p)))
    if direction == "lower":
        if r < 2.0:
            return constant * math.sqrt(ln) / n ** (1.0 + inv(p))
        if p <= r:
            return constant / (math.e * n ** inv(p))
        return constant * n ** (-(1.0 - 1.0 / r))
    raise ValueError(f"direction must be lower/upper, got {direction}")


def bombieri_closed_form(lam: float) -> float:
    """K(D, lambda) = 1 / (3 lambda - 2 sqrt(2 (lambda^2 - 1))), on [1, sqrt 2].

    Strictly increasing from 1/3 to 1/sqrt(2) across the domain.
    """
    if not (1.0 - 1e-12 <= lam <= SQRT2 + 1e-12):
        raise ValueError(f"closed form only valid for 1 <= lambda <= sqrt(2), got {lam}")
    lam = min(max(lam, 1.0), SQRT2)
    return 1.0 / (3.0 * lam - 2.0 * math.sqrt(2.0 * (lam * lam - 1.0)))
