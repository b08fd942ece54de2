"""Finite-dimensional models of bounded operators between coefficient spaces.

An OperatorModel is a d'-by-d complex matrix read as a map lr^d -> lq^d',
tagged as identity, inclusion, diagonal or general.  Norm brackets pair an
ascent lower bound with a closed-form (exact where the kind allows) upper
bound; summing-constant estimates only ever report certified lower bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

import numpy as np

from .optimize import complex_poly_sup
from .seeding import derive_seed, generator
from .spaces import INF, SpaceSpec, dual_exponent, inv, lp_norm

KINDS = ("identity", "inclusion", "diagonal", "general")


@dataclass(frozen=True)
class OperatorModel:
    matrix: np.ndarray
    source: SpaceSpec
    target: SpaceSpec
    kind: str = "general"

    def __post_init__(self):
        M = np.asarray(self.matrix, dtype=complex)
        M.flags.writeable = False
        object.__setattr__(self, "matrix", M)
        if M.shape != (self.target.n, self.source.n):
            raise ValueError(f"matrix shape {M.shape} does not match "
                             f"{self.target.n}x{self.source.n}")
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == "identity":
            if self.source != self.target or not np.array_equal(M, np.eye(self.source.n)):
                raise ValueError("identity requires equal spaces and matrix I")
        if self.kind == "inclusion":
            if self.source.n != self.target.n or not np.array_equal(M, np.eye(self.source.n)):
                raise ValueError("inclusion requires equal dimensions and matrix I")

    @property
    def d_source(self) -> int:
        return self.source.n

    @property
    def d_target(self) -> int:
        return self.target.n

    def apply(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex).reshape(-1)
        if x.shape[0] != self.d_source:
            raise ValueError(f"vector has {x.shape[0]} entries, operator expects {self.d_source}")
        return self.matrix @ x

    def image_norms(self, vectors) -> np.ndarray:
        """||V c||_target for each row c of a (T, d) array."""
        V = np.asarray(vectors, dtype=complex)
        if V.ndim == 1:
            V = V[None, :]
        images = V @ self.matrix.T
        return np.array([lp_norm(row, self.target.p) for row in images])

    def label(self) -> str:
        if self.kind == "identity":
            return f"identity:{self.source.label()}"
        if self.kind == "inclusion":
            return f"inclusion:{self.source.label()}->{self.target.label()}"
        return f"{self.kind}:{self.source.label()}->{self.target.label()}"


def identity_operator(space: SpaceSpec) -> OperatorModel:
    return OperatorModel(np.eye(space.n), space, space, kind="identity")


def scalar_identity() -> OperatorModel:
    """Identity on C, modeled as l2^1."""
    return identity_operator(SpaceSpec(2.0, 1))


def inclusion_operator(r: float, q: float, d: int) -> OperatorModel:
    return OperatorModel(np.eye(d), SpaceSpec(r, d), SpaceSpec(q, d), kind="inclusion")


def diagonal_operator(diag: Sequence[complex], r: float, q: float) -> OperatorModel:
    diag = np.asarray(diag, dtype=complex)
    d = diag.shape[0]
    return OperatorModel(np.diag(diag), SpaceSpec(r, d), SpaceSpec(q, d), kind="diagonal")


def _exact_upper(V: OperatorModel) -> float | None:
    """Exact operator norm where the kind admits a closed form."""
    r, q = V.source.p, V.target.p
    d = V.d_source
    if V.kind == "identity":
        return 1.0
    if V.kind == "inclusion":
        if r <= q:
            return 1.0
        return d ** (inv(q) - inv(r))
    if V.kind == "diagonal":
        t = np.abs(np.diag(V.matrix))
        if r <= q:
            return float(t.max())
        s = 1.0 / (inv(q) - inv(r))
        return lp_norm(t, s)
    return None


def _factorization_upper(V: OperatorModel) -> float:
    """Upper bound for general matrices via l1 / linf / l2 factorizations."""
    M = V.matrix
    r, q = V.source.p, V.target.p
    d, dp = V.d_source, V.d_target
    col = max(lp_norm(M[:, j], q) for j in range(d))
    cand1 = d ** (1.0 - inv(r)) * col
    row = max(lp_norm(M[i, :], dual_exponent(r)) for i in range(dp))
    cand2 = (dp ** inv(q)) * row
    smax = float(np.linalg.svd(M, compute_uv=False)[0]) if min(M.shape) else 0.0
    cand3 = smax * d ** max(0.0, 0.5 - inv(r)) * dp ** max(0.0, inv(q) - 0.5)
    return min(cand1, cand2, cand3)


def operator_norm(V: OperatorModel, restarts: int = 24, iters: int = 120,
                  seed: int = 0) -> tuple[float, float]:
    """Certified bracket [lower, upper] for ||V: lr^d -> lq^d'||.

    Lower: ascent over the source ball (the image norm of a linear map is
    the sup norm of a degree-1 vector polynomial).  Upper: exact closed
    form for identity/inclusion/diagonal, factorization bound otherwise.
    """
    if restarts < 1 or iters < 1:
        raise ValueError("budget must be >= 1")
    d = V.d_source
    lower, _ = complex_poly_sup(np.eye(d, dtype=np.int64), V.matrix.T.copy(),
                                V.source.p, V.target.p, restarts, iters,
                                derive_seed(seed, "opnorm"))
    upper = _exact_upper(V)
    if upper is None:
        upper = _factorization_upper(V)
    if lower > upper:
        if lower <= upper * (1.0 + 1e-9):
            lower = upper
        else:
            raise AssertionError(f"ascent lower {lower} exceeds upper bound {upper}")
    return lower, upper


def operator_norm_maximizer(V: OperatorModel, restarts: int = 24, iters: int = 120,
                            seed: int = 0) -> np.ndarray:
    _, x = complex_poly_sup(np.eye(V.d_source, dtype=np.int64), V.matrix.T.copy(),
                            V.source.p, V.target.p, restarts, iters,
                            derive_seed(seed, "opnorm"))
    return x


# --- weak-l1 norm of a finite family ----------------------------------------


def weak_l1_upper(vectors: np.ndarray, space: SpaceSpec,
                  grid: int = 256) -> float:
    """Certified upper bound on sup over the dual ball of sum_j |phi(x_j)|.

    Exact for singletons (norming functionals), for one-dimensional spaces,
    for linf sources (the dual l1 ball has extreme points e^(i t) e_k), and
    for disjointly supported families.  Otherwise the minimum of the
    triangle bound, a Gram bound (p = 2), and for l1^d sources with d <= 3
    a phase-grid bound with Lipschitz slack.
    """
    X = np.asarray(vectors, dtype=complex)
    J, d = X.shape
    p = space.p
    if J == 1:
        return lp_norm(X[0], p)
    if d == 1:
        return float(np.abs(X[:, 0]).sum())
    if p == INF:
        # dual l1: extreme points are rotated basis vectors
        return float(np.abs(X).sum(axis=0).max())
    support = [set(np.nonzero(np.abs(x) > 0)[0]) for x in X]
    disjoint = all(not (support[i] & support[j])
                   for i in range(J) for j in range(i + 1, J))
    if disjoint:
        return lp_norm(np.array([lp_norm(x, p) for x in X]), p)
    candidates = [float(sum(lp_norm(x, p) for x in X))]
    if p == 2.0:
        G = X @ X.conj().T
        lam = float(np.linalg.eigvalsh(G)[-1].real)
        candidates.append(math.sqrt(max(lam, 0.0) * J))
    if p == 1.0 and d <= 3:
        # dual linf torus, global phase fixed; grid + Lipschitz slack
        axes = d - 1
        theta = np.linspace(0.0, 2.0 * math.pi, grid, endpoint=False)
        grids = np.meshgrid(*([theta] * axes), indexing="ij") if axes else []
        phases = np.ones((grid**axes if axes else 1, d), dtype=complex)
        for k in range(axes):
            phases[:, k + 1] = np.exp(1j * grids[k].ravel())
        vals = np.abs(phases @ X.T).sum(axis=1)
        h = 2.0 * math.pi / grid
        slack = sum(float(np.abs(X[:, k + 1]).sum()) * h / 2.0 for k in range(axes))
        candidates.append(float(vals.max()) + slack)
    return min(candidates)


def summing_lower(V: OperatorModel, r: float, trials: int = 64,
                  seed: int = 0, family_limit: int = 6) -> float:
    """Statistical lower bound on the (r,1)-summing constant of V.

    Maximizes (sum_j ||V x_j||^r)^(1/r) / w over sampled finite families,
    where w is the weak-l1 norm of the family.  The denominator is replaced
    by a certified upper bound wherever it has no closed form, so every
    reported ratio is a true lower bound.  Singleton families at the
    operator-norm maximizer are always included.
    """
    if r < 1.0:
        raise ValueError(f"summing exponent must be >= 1, got {r}")
    if trials < 1:
        raise ValueError("trials must be >= 1")

    def ratio(family: np.ndarray) -> float:
        w = weak_l1_upper(family, V.source)
        if w <= 0:
            return 0.0
        norms = V.image_norms(family)
        num = lp_norm(norms, r)
        return num / w

    d = V.d_source
    best = 0.0
    xstar = operator_norm_maximizer(V, seed=derive_seed(seed, "opmax"))
    if lp_norm(xstar, V.source.p) > 0:
        best = max(best, ratio(xstar[None, :]))
    for k in range(d):
        e = np.zeros((1, d), dtype=complex)
        e[0, k] = 1.0
        best = max(best, ratio(e))
    # disjointly supported scaled basis families have an exact denominator
    rng = generator(seed, "summing")
    for t in range(trials):
        design = t % 3
        J = int(rng.integers(1, min(family_limit, max(d, 2)) + 1))
        if design == 0:
            J = min(J, d)
            coords = rng.permutation(d)[:J]
            scales = rng.random(J) + 0.25
            fam = np.zeros((J, d), dtype=complex)
            fam[np.arange(J), coords] = scales
        elif design == 1:
            fam = rng.standard_normal((J, d)).astype(complex)
        else:
            fam = (xstar[None, :] * (rng.random((J, 1)) + 0.25)).astype(complex)
        best = max(best, ratio(fam))
    return best


# --- exponent formulas -------------------------------------------------------


def kwapien_exponent(q: float) -> float:
    """r with 1/r = 1 - |1/q - 1/2| for operators out of l1 into lq."""
    if not (1.0 <= q < INF):
        raise ValueError(f"q must lie in [1, inf), got {q}")
    return 1.0 / (1.0 - abs(1.0 / q - 0.5))


def bennett_carl_exponent(r: float, q: float) -> float:
    """s with 1/s = 1/2 + 1/r - max(1/q, 1/2) for the inclusion lr -> lq."""
    if not (1.0 <= r < q < INF):
        raise ValueError(f"need 1 <= r < q < inf, got r={r}, q={q}")
    return 1.0 / (0.5 + 1.0 / r - max(1.0 / q, 0.5))


# --- JSON wire form ----------------------------------------------------------


def _exp_to_json(p: float):
    return "inf" if p == INF else p


def _exp_from_json(v) -> float:
    if isinstance(v, str) and v.lower() in ("inf", "infinity"):
        return INF
    return float(v)


def op_to_dict(V: OperatorModel) -> dict:
    doc = {
        "kind": V.kind,
        "source": {"p": _exp_to_json(V.source.p), "d": V.source.n},
        "target": {"p": _exp_to_json(V.target.p), "d": V.target.n},
    }
    if V.kind == "diagonal":
        diag = np.diag(V.matrix)
        doc["diag"] = [[v.real, v.imag] for v in diag]
    elif V.kind == "general":
        doc["matrix"] = [[[v.real, v.imag] for v in row] for row in V.matrix]
    return doc


def op_from_dict(doc: dict) -> OperatorModel:
    source = SpaceSpec(_exp_from_json(doc["source"]["p"]), int(doc["source"]["d"]))
    target = SpaceSpec(_exp_from_json(doc["target"]["p"]), int(doc["target"]["d"]))
    kind = doc["kind"]
    if kind == "identity":
        return identity_operator(source)
    if kind == "inclusion":
        return inclusion_operator(source.p, target.p, source.n)
    if kind == "diagonal":
        diag = np.array([complex(re, im) for re, im in doc["diag"]])
        return OperatorModel(np.diag(diag), source, target, kind="diagonal")
    M = np.array([[complex(re, im) for re, im in row] for row in doc["matrix"]])
    return OperatorModel(M, source, target, kind="general")
