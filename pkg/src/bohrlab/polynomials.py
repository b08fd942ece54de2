"""Vector-valued polynomials and truncated power series on lp^n balls.

A VectorPolynomial is a finitely supported map from exponent vectors alpha
to coefficient vectors in a finite-dimensional lq^d space.  The module
provides exact evaluation, the coefficient majorant, certified sup-norm
brackets (ascent lower bounds, coefficient-majorant upper bounds), the
symmetric multilinear form obtained by polarization, and random ensembles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np

from .multiindex import alpha_to_j, enumerate_alpha, multiplicity
from .optimize import _monomials, complex_poly_sup
from .seeding import derive_seed, generator
from .spaces import INF, SpaceSpec, dual_exponent, lp_norm, monomial_max


def _term_order(alpha: tuple[int, ...]):
    return (sum(alpha), alpha_to_j(alpha))


class VectorPolynomial:
    """Finitely supported series sum_alpha c_alpha z^alpha.

    ``domain`` is the lp^n space the variable lives in, ``codomain`` the
    lq^d coefficient space.  Terms with an all-zero coefficient vector are
    dropped so the representation is canonical; iteration order is
    lexicographic on the nondecreasing index tuple of alpha, grouped by
    degree.
    """

    def __init__(self, domain: SpaceSpec, codomain: SpaceSpec,
                 terms: Mapping[tuple[int, ...], Sequence[complex]]):
        self.domain = domain
        self.codomain = codomain
        clean: dict[tuple[int, ...], np.ndarray] = {}
        for alpha, c in terms.items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != domain.n:
                raise ValueError(f"alpha {alpha} has {len(alpha)} entries, domain n={domain.n}")
            if any(a < 0 for a in alpha):
                raise ValueError(f"negative exponent in {alpha}")
            vec = np.asarray(c, dtype=complex).reshape(-1)
            if vec.shape[0] != codomain.n:
                raise ValueError(f"coefficient for {alpha} has {vec.shape[0]} entries, codomain d={codomain.n}")
            if np.any(vec != 0):
                vec = vec.copy()
                vec.flags.writeable = False
                clean[alpha] = vec
        order = sorted(clean, key=_term_order)
        self._terms = MappingProxyType({a: clean[a] for a in order})
        if order:
            A = np.array(order, dtype=np.int64)
            C = np.array([clean[a] for a in order], dtype=complex)
        else:
            A = np.zeros((0, domain.n), dtype=np.int64)
            C = np.zeros((0, codomain.n), dtype=complex)
        A.flags.writeable = False
        C.flags.writeable = False
        self.exponents = A
        self.coefficients = C

    @property
    def terms(self) -> Mapping[tuple[int, ...], np.ndarray]:
        return self._terms

    @property
    def n(self) -> int:
        return self.domain.n

    @property
    def d(self) -> int:
        return self.codomain.n

    @property
    def is_zero(self) -> bool:
        return len(self._terms) == 0

    def degrees(self) -> set[int]:
        return {int(s) for s in self.exponents.sum(axis=1)}

    @property
    def homogeneous_degree(self) -> int | None:
        degs = self.degrees()
        return degs.pop() if len(degs) == 1 else None

    @property
    def active_variables(self) -> tuple[int, ...]:
        """0-based indices of variables that actually occur."""
        if self.is_zero:
            return ()
        return tuple(np.nonzero(self.exponents.any(axis=0))[0])

    def evaluate(self, z) -> np.ndarray:
        """sum_alpha c_alpha z^alpha with 0^0 = 1; returns a (d,) vector."""
        z = np.asarray(z, dtype=complex).reshape(-1)
        if z.shape[0] != self.n:
            raise ValueError(f"point has {z.shape[0]} entries, domain n={self.n}")
        if self.is_zero:
            return np.zeros(self.d, dtype=complex)
        return _monomials(z, self.exponents) @ self.coefficients

    def scale(self, s: complex) -> "VectorPolynomial":
        return VectorPolynomial(self.domain, self.codomain,
                                {a: s * c for a, c in self._terms.items()})

    def coefficient_norms(self, operator=None) -> np.ndarray:
        """||V(c_alpha)|| per stored term, identity if operator is None."""
        if operator is None:
            return np.array([lp_norm(c, self.codomain.p) for c in self.coefficients])
        return operator.image_norms(self.coefficients)

    def __eq__(self, other):
        if not isinstance(other, VectorPolynomial):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and self.exponents.shape == other.exponents.shape
                and np.array_equal(self.exponents, other.exponents)
                and np.array_equal(self.coefficients, other.coefficients))

    def __repr__(self):
        return (f"VectorPolynomial({self.domain.label()} -> {self.codomain.label()}, "
                f"{len(self._terms)} terms)")


def scalar_polynomial(p: float, n: int,
                      terms: Mapping[tuple[int, ...], complex]) -> VectorPolynomial:
    """Convenience constructor for C-valued polynomials on lp^n."""
    return VectorPolynomial(SpaceSpec(p, n), SpaceSpec(2.0, 1),
                            {a: [c] for a, c in terms.items()})


def majorant(P: VectorPolynomial, operator, r) -> float:
    """sum_alpha ||V(c_alpha)|| r^alpha at a nonnegative radius vector.

    Pure coefficient arithmetic; no optimization is involved.
    """
    r = np.asarray(r, dtype=float).reshape(-1)
    if r.shape[0] != P.n:
        raise ValueError(f"radius vector has {r.shape[0]} entries, domain n={P.n}")
    if np.any(r < 0):
        raise ValueError("radius vector must be entrywise nonnegative")
    if P.is_zero:
        return 0.0
    w = P.coefficient_norms(operator)
    return float(_monomials(r, P.exponents).real @ w)


# --- sup-norm brackets ------------------------------------------------------


def supnorm_lower(P: VectorPolynomial, restarts: int = 64, iters: int = 200,
                  seed: int = 0) -> tuple[float, np.ndarray]:
    """Certified lower bound on sup ||P(z)|| over the closed domain ball.

    Multistart projected ascent with phase optimization; the returned value
    is the best over all evaluated feasible points, hence always a true
    lower bound.  Deterministic under the seed.
    """
    if restarts < 1 or iters < 1:
        raise ValueError("budget must be >= 1")
    if P.is_zero:
        return 0.0, np.zeros(P.n, dtype=complex)
    return complex_poly_sup(P.exponents, P.coefficients, P.domain.p,
                            P.codomain.p, restarts, iters, seed,
                            extra_starts=_hoelder_starts(P))


def _hoelder_starts(P: VectorPolynomial) -> list[np.ndarray]:
    """Deterministic start at the Hoelder maximizer of the degree-1 part.

    For a scalar linear form the sup over the lp ball is ||c||_p', attained
    at the phase-aligned Hoelder point; seeding the ascent there makes the
    duality identity exact for linear forms and helps mixed series.
    """
    if P.d != 1:
        return []
    degs = P.exponents.sum(axis=1)
    idx = np.nonzero(degs == 1)[0]
    if idx.size == 0:
        return []
    p = P.domain.p
    c = np.zeros(P.n, dtype=complex)
    for t in idx:
        k = int(np.argmax(P.exponents[t]))
        c[k] = P.coefficients[t, 0]
    a = np.abs(c)
    if a.max() <= 0:
        return []
    phase = np.where(a > 0, np.conj(c) / np.where(a > 0, a, 1.0), 0.0)
    if p == INF:
        return [phase + (np.abs(phase) == 0)]
    if p == 1.0:
        x = np.zeros(P.n, dtype=complex)
        k = int(np.argmax(a))
        x[k] = phase[k]
        return [x]
    pd = dual_exponent(p)
    mag = a ** (pd / p)
    x = phase * mag / lp_norm(mag, p)
    return [x]


def supnorm_refined(P: VectorPolynomial, seed: int = 0, rtol: float = 1e-4,
                    restarts: int = 16, iters: int = 120, max_rounds: int = 6,
                    max_total_restarts: int = 512) -> float:
    """Ascent lower bound refined until successive rounds improve by less
    than ``rtol`` relatively (budget doubles each round, capped overall)."""
    best = 0.0
    spent = 0
    for round_ in range(max_rounds):
        v, _ = supnorm_lower(P, restarts, iters, derive_seed(seed, "refine", round_))
        spent += restarts
        if best > 0 and v <= best * (1.0 + rtol):
            return max(best, v)
        best = max(best, v)
        restarts *= 2
        if spent + restarts > max_total_restarts:
            break
    return best


def supnorm_upper(P: VectorPolynomial) -> float:
    """Coefficient-majorant upper bound on sup ||P(z)||.

    Per-term: ||c_alpha|| times the exact monomial maximum on the ball
    (constant terms contribute their norm).  Valid but in general loose;
    e.g. it reports 2 for z_1 - z_2 on the l1 ball whose true sup is 1.
    """
    if P.is_zero:
        return 0.0
    p = P.domain.p
    w = P.coefficient_norms(None)
    degs = P.exponents.sum(axis=1)
    total = 0.0
    for t, alpha in enumerate(P.exponents):
        if int(degs[t]) == 0:
            total += w[t]
        else:
            total += w[t] * monomial_max(alpha, p)
    return float(total)


# --- polarization -----------------------------------------------------------

_MAX_POLARIZATION_DEGREE = 10


@dataclass(frozen=True)
class SymmetricForm:
    """The unique symmetric m-linear form with diagonal P.

    Entries on basis vectors are read off the coefficients exactly,
    A(e_j1, ..., e_jm) = c_j / multiplicity(j); general arguments use the
    exhaustive 2^m-term sign average (degrees are capped at 10, exactness
    over speed).
    """

    polynomial: VectorPolynomial
    degree: int

    def __call__(self, *args) -> np.ndarray:
        m = self.degree
        if len(args) != m:
            raise ValueError(f"form takes {m} arguments, got {len(args)}")
        xs = [np.asarray(a, dtype=complex).reshape(-1) for a in args]
        for x in xs:
            if x.shape[0] != self.polynomial.n:
                raise ValueError("argument dimension mismatch")
        acc = np.zeros(self.polynomial.d, dtype=complex)
        for eps in product((1.0, -1.0), repeat=m):
            point = sum(e * x for e, x in zip(eps, xs))
            acc += math.prod(eps) * self.polynomial.evaluate(point)
        return acc / (2**m * math.factorial(m))

    def entry(self, j: Sequence[int]) -> np.ndarray:
        """A(e_{j_1}, ..., e_{j_m}) = c_j / |j| for a nondecreasing j."""
        j = tuple(j)
        if len(j) != self.degree:
            raise ValueError(f"index has length {len(j)}, degree is {self.degree}")
        from .multiindex import j_to_alpha
        alpha = j_to_alpha(j, self.polynomial.n)
        c = self.polynomial.terms.get(alpha)
        if c is None:
            return np.zeros(self.polynomial.d, dtype=complex)
        return c / multiplicity(j)


def polarize(P: VectorPolynomial) -> SymmetricForm:
    """Symmetric form for a homogeneous P of degree m >= 1."""
    m = P.homogeneous_degree
    if m is None or m < 1:
        raise ValueError("polarization requires a homogeneous polynomial of degree >= 1")
    if m > _MAX_POLARIZATION_DEGREE:
        raise ValueError(f"degree {m} exceeds the polarization cap {_MAX_POLARIZATION_DEGREE}")
    return SymmetricForm(P, m)


def multilinear_supnorm_lower(A: SymmetricForm, rounds: int = 8, seed: int = 0,
                              restarts: int = 4) -> float:
    """Lower bound on ||A|| over the m-fold product of domain unit balls.

    Alternating per-argument maximization from random starts: with all but
    one argument frozen the form is linear in the free one, so the scalar
    case updates by the exact Hoelder alignment and the vector case by a
    short ascent.  The diagonal maximizer of P seeds the search, so the
    bound never falls below the sup-norm lower bound of P.
    """
    P = A.polynomial
    m = A.degree
    n, d = P.n, P.d
    p = P.domain.p

    pv, zv = supnorm_lower(P, restarts=12, iters=80, seed=derive_seed(seed, "diag"))
    best = pv
    basis = np.eye(n, dtype=complex)

    def coeff_matrix(xs, i):
        return np.array([A(*[basis[k] if t == i else xs[t] for t in range(m)])
                         for k in range(n)])

    rng = generator(seed, "ml-starts")
    start_sets: list[list[np.ndarray]] = [[zv.copy() for _ in range(m)]]
    for _ in range(max(restarts - 1, 0)):
        xs = []
        for _ in range(m):
            g = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            xs.append(g / lp_norm(g, p))
        start_sets.append(xs)

    for s_idx, xs in enumerate(start_sets):
        val = lp_norm(A(*xs), P.codomain.p)
        for r in range(rounds):
            improved = False
            for i in range(m):
                G = coeff_matrix(xs, i)  # (n, d)
                if d == 1:
                    g = G[:, 0]
                    pd = dual_exponent(p)
                    ag = np.abs(g)
                    if ag.max() <= 0:
                        continue
                    phase = np.where(ag > 0, np.conj(g) / np.where(ag > 0, ag, 1.0), 0)
                    if p == INF:
                        x_new = phase
                    elif p == 1.0:
                        x_new = np.zeros(n, dtype=complex)
                        k = int(np.argmax(ag))
                        x_new[k] = phase[k]
                    else:
                        mag = ag ** (pd / p)
                        x_new = phase * mag / lp_norm(mag, p)
                    cand = x_new
                else:
                    ident = np.eye(n, dtype=np.int64)
                    _, cand = complex_poly_sup(ident, G, p, P.codomain.p,
                                               restarts=3, iters=40,
                                               seed=derive_seed(seed, "ml", s_idx, r, i),
                                               extra_starts=[xs[i]])
                new_xs = list(xs)
                new_xs[i] = cand
                new_val = lp_norm(A(*new_xs), P.codomain.p)
                if new_val > val:
                    xs, val = new_xs, new_val
                    improved = True
            if not improved:
                break
        best = max(best, val)
    return best


# --- random ensembles -------------------------------------------------------

ENSEMBLES = ("unimodular-signs", "complex-gaussian", "sparse")


def random_polynomial(m: int, n: int, d: int, ensemble: str, seed: int,
                      p: float = INF, q: float = 2.0,
                      density: float = 1.0) -> VectorPolynomial:
    """Random homogeneous polynomial of degree m in n variables.

    unimodular-signs: every c_alpha is a sign in {-1, +1} times a coordinate
    direction when d > 1.  complex-gaussian: standard complex normal entries.
    sparse: unimodular terms kept independently with probability ``density``;
    an empty draw is rejected.
    """
    if ensemble not in ENSEMBLES:
        raise ValueError(f"unknown ensemble {ensemble!r}; choose from {ENSEMBLES}")
    if m < 0 or n < 1 or d < 1:
        raise ValueError("invalid dimensions")
    rng = generator(seed, "poly", ensemble, m, n, d)
    terms: dict[tuple[int, ...], np.ndarray] = {}
    for alpha in enumerate_alpha(m, n):
        if ensemble == "sparse" and not (rng.random() < density):
            continue
        if ensemble == "complex-gaussian":
            c = (rng.standard_normal(d) + 1j * rng.standard_normal(d)) / math.sqrt(2.0)
        else:
            sign = float(rng.choice([-1.0, 1.0]))
            c = np.zeros(d, dtype=complex)
            c[int(rng.integers(0, d))] = sign
        terms[alpha] = c
    if not terms:
        raise ValueError("sparse draw produced the zero polynomial; raise the density")
    return VectorPolynomial(SpaceSpec(p, n), SpaceSpec(q, d), terms)


# --- JSON corpus form -------------------------------------------------------


def _exp_to_json(p: float):
    return "inf" if p == INF else p


def _exp_from_json(v) -> float:
    if isinstance(v, str):
        if v.lower() in ("inf", "infinity"):
            return INF
        return float(v)
    return float(v)


def poly_to_dict(P: VectorPolynomial) -> dict:
    """JSON-ready document; doubles survive a round trip exactly."""
    return {
        "domain": {"p": _exp_to_json(P.domain.p), "n": P.domain.n},
        "codomain": {"q": _exp_to_json(P.codomain.p), "d": P.codomain.n},
        "terms": [
            {"alpha": list(alpha), "re": [v.real for v in c], "im": [v.imag for v in c]}
            for alpha, c in P.terms.items()
        ],
    }


def poly_from_dict(doc: dict) -> VectorPolynomial:
    domain = SpaceSpec(_exp_from_json(doc["domain"]["p"]), int(doc["domain"]["n"]))
    codomain = SpaceSpec(_exp_from_json(doc["codomain"]["q"]), int(doc["codomain"]["d"]))
    terms = {}
    for t in doc["terms"]:
        alpha = tuple(int(a) for a in t["alpha"])
        terms[alpha] = np.array(t["re"], dtype=float) + 1j * np.array(t["im"], dtype=float)
    return VectorPolynomial(domain, codomain, terms)
