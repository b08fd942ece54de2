"""Projected-ascent search routines shared by the norm estimators.

Both searches return the best value seen over evaluated feasible points,
which makes every output a certified lower bound of the corresponding
supremum.  All randomness is derived from an explicit seed.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .seeding import generator
from .spaces import INF, lp_norm


def _monomials(z: np.ndarray, A: np.ndarray) -> np.ndarray:
    """m_t = prod_j z_j^(A_tj) for one point z; 0^0 = 1."""
    return np.prod(np.power(z[None, :], A), axis=1)


def _monomial_jacobian(z: np.ndarray, A: np.ndarray) -> np.ndarray:
    """J[t, k] = d m_t / d z_k, zero-safe (no divisions by z_k)."""
    T, n = A.shape
    M = np.power(z[None, :], A)
    # prefix/suffix products around coordinate k avoid dividing by M[:, k]
    left = np.ones((T, n), dtype=M.dtype)
    right = np.ones((T, n), dtype=M.dtype)
    for k in range(1, n):
        left[:, k] = left[:, k - 1] * M[:, k - 1]
        right[:, n - 1 - k] = right[:, n - k] * M[:, n - k]
    zpow = np.power(z[None, :], np.maximum(A - 1, 0))
    return A * zpow * left * right


def _dual_weights(w: np.ndarray, q: float) -> np.ndarray:
    """Ascent weights for the target-norm objective ||w||_q."""
    aw = np.abs(w)
    if q == INF:
        out = np.zeros_like(w)
        k = int(np.argmax(aw))
        if aw[k] > 0:
            out[k] = w[k] / aw[k]
        return out
    if q == 2.0:
        return w
    phase = np.where(aw > 0, w / np.where(aw > 0, aw, 1.0), 0.0)
    return np.where(aw > 0, aw ** (q - 1.0), 0.0) * phase


# projections shrink by one ulp-scale factor so rounding can never push an
# "evaluated feasible point" outside the closed ball; lower bounds stay true
_SHRINK = 1.0 + 1e-13


def _project_domain(z: np.ndarray, p: float) -> np.ndarray:
    if p == INF:
        a = np.abs(z)
        out = np.where(a > 1e-14, z / np.where(a > 1e-14, a, 1.0), 1.0 + 0.0j)
        return out / _SHRINK
    nrm = lp_norm(z, p)
    return z / (nrm * _SHRINK) if nrm > 0 else z


def complex_poly_sup(A: np.ndarray, C: np.ndarray, p: float, q: float,
                     restarts: int, iters: int, seed: int,
                     extra_starts: Sequence[np.ndarray] = ()) -> tuple[float, np.ndarray]:
    """Lower bound on sup ||sum_t C_t z^(A_t)||_q over the closed lp^n ball.

    Multistart projected gradient ascent; for p = inf the iterates live on
    the torus (the maximum of a modulus over the closed polydisc is attained
    there) while raw candidate points are still credited, so boundary
    candidates such as basis vectors are never lost.
    """
    A = np.asarray(A, dtype=np.int64)
    C = np.asarray(C, dtype=complex)
    T, n = A.shape
    if T == 0:
        return 0.0, np.zeros(n, dtype=complex)

    def value(z):
        return lp_norm(_monomials(z, A) @ C, q)

    starts: list[np.ndarray] = []
    for k in range(n):
        e = np.zeros(n, dtype=complex)
        e[k] = 1.0
        starts.append(e)
    uni = np.ones(n, dtype=complex)
    starts.append(uni if p == INF else uni * n ** (-1.0 / p))
    starts.extend(np.asarray(s, dtype=complex) for s in extra_starts)

    best_val = 0.0
    best_z = starts[0]
    for z0 in starts:
        # raw starts are credited only when verifiably inside the closed ball
        if lp_norm(z0, p) <= 1.0:
            v = value(z0)
            if v > best_val:
                best_val, best_z = v, z0.copy()

    rng = generator(seed, "complex-sup")
    for r in range(restarts):
        if r < len(starts):
            z = _project_domain(starts[r].copy(), p)
        else:
            g = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            z = _project_domain(g, p)
        v = value(z)
        if v > best_val:
            best_val, best_z = v, z.copy()
        eta = 0.5
        for _ in range(iters):
            w = _monomials(z, A) @ C
            J = _monomial_jacobian(z, A)
            d = np.conj(J.T @ C) @ _dual_weights(w, q)
            dn = np.abs(d).max()
            if dn < 1e-15:
                break
            moved = False
            for _ in range(20):
                z_new = _project_domain(z + eta * d / dn, p)
                v_new = value(z_new)
                if v_new > v:
                    z, v = z_new, v_new
                    eta = min(eta * 1.3, 2.0)
                    moved = True
                    break
                eta *= 0.5
                if eta < 1e-12:
                    break
            if not moved:
                break
            if v > best_val:
                best_val, best_z = v, z.copy()
    return best_val, best_z


def posynomial_sphere_max(weights: np.ndarray, A: np.ndarray, p: float,
                          restarts: int, iters: int, seed: int,
                          extra_starts: Sequence[np.ndarray] = (),
                          pool_size: int = 6) -> tuple[float, np.ndarray, list[np.ndarray]]:
    """Lower bound on max of g(u) = sum_t w_t u^(A_t) over the nonnegative
    part of the lp^n sphere, p < inf (for p = inf the maximum is at u = 1).

    Returns (value, argmax, pool) where pool holds the best distinct points
    found; callers reuse the pool as a fixed candidate set when the same
    posynomial is re-weighted (e.g. across bisection steps).
    """
    if p == INF:
        raise ValueError("p = inf has a closed-form maximum at u = (1,...,1)")
    w = np.asarray(weights, dtype=float)
    A = np.asarray(A, dtype=np.int64)
    T, n = A.shape

    def value(u):
        return float(_monomials(u, A).real @ w) if T else 0.0

    starts: list[np.ndarray] = [np.full(n, n ** (-1.0 / p))]
    for k in range(n):
        e = np.zeros(n)
        e[k] = 1.0
        starts.append(e)
    starts.extend(np.asarray(s, dtype=float) for s in extra_starts)

    evaluated: list[tuple[float, np.ndarray]] = []

    def credit(u, v):
        evaluated.append((v, u.copy()))

    rng = generator(seed, "posy-max")
    total = max(restarts, len(starts))
    for r in range(total):
        if r < len(starts):
            u = starts[r].copy()
        else:
            u = np.abs(rng.standard_normal(n))
        nrm = lp_norm(u, p)
        u = u / (nrm * _SHRINK) if nrm > 0 else np.full(n, n ** (-1.0 / p) / _SHRINK)
        v = value(u)
        credit(u, v)
        eta = 0.3
        for _ in range(iters):
            J = _monomial_jacobian(np.asarray(u, dtype=float), A)
            g = J.T.real @ w
            gn = np.abs(g).max()
            if gn < 1e-15:
                break
            moved = False
            for _ in range(20):
                u_new = np.maximum(u + eta * g / gn, 0.0)
                nn = lp_norm(u_new, p)
                if nn <= 0:
                    break
                u_new /= nn * _SHRINK
                v_new = value(u_new)
                if v_new > v:
                    u, v = u_new, v_new
                    eta = min(eta * 1.3, 1.0)
                    moved = True
                    break
                eta *= 0.5
                if eta < 1e-12:
                    break
            if not moved:
                break
        credit(u, v)

    evaluated.sort(key=lambda t: -t[0])
    pool: list[np.ndarray] = []
    for v, u in evaluated:
        if len(pool) >= pool_size:
            break
        if all(np.abs(u - q_).max() > 1e-9 for q_ in pool):
            pool.append(u)
    best_v, best_u = evaluated[0]
    return best_v, best_u, pool
