"""Corpus construction: the test functions radius estimates are taken over.

Default families:

* disk-automorphism atoms f_a(z) = (a - z_1)/(1 - a z_1), truncated at a
  configurable degree, lifted to n variables through z_1 and into a vector
  coefficient space through a unit direction.  Their sup norm is exactly 1
  and the discarded majorant mass has a recorded geometric tail bound.
* random homogeneous ensembles (unimodular signs by default).
* the linear family sum_k z_k x_k over coordinate directions x_k.

Which families to include is a research knob; estimates are labeled with
the member that attained them so corpora can be grown safely (the corpus
minimum only ever decreases).
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Sequence

import numpy as np

from .polynomials import (VectorPolynomial, poly_from_dict, poly_to_dict,
                          random_polynomial, supnorm_refined)
from .radii import CorpusFunction
from .seeding import derive_seed
from .spaces import INF, SpaceSpec, dual_exponent, lp_norm


def moebius_atom(a: float, truncation: int = 60, n: int = 1, p: float = INF,
                 codomain: SpaceSpec | None = None,
                 direction: int = 0) -> CorpusFunction:
    """Truncated disk automorphism (a - z_1)/(1 - a z_1) lifted to lp^n.

    Series: a - (1-a^2) sum_{k>=1} a^(k-1) z_1^k.  The sup norm of the full
    function is exactly 1 (boundary modulus of a disk automorphism), which
    is stored; the majorant mass dropped by truncation is bounded by the
    geometric tail (1-a^2) a^K r^(K+1) / (1 - a r), recorded per radius.
    """
    if not (0.0 < a < 1.0):
        raise ValueError(f"parameter must lie in (0, 1), got {a}")
    if truncation < 1:
        raise ValueError("truncation degree must be >= 1")
    codomain = codomain or SpaceSpec(2.0, 1)
    e = np.zeros(codomain.n, dtype=complex)
    e[direction] = 1.0
    terms = {(0,) * n: a * e}
    for k in range(1, truncation + 1):
        alpha = tuple(k if i == 0 else 0 for i in range(n))
        terms[alpha] = -(1.0 - a * a) * a ** (k - 1) * e
    K = truncation

    def tail(r: float) -> float:
        if r >= 1.0 / a:
            return math.inf
        return (1.0 - a * a) * a**K * r ** (K + 1) / (1.0 - a * r)

    return CorpusFunction(
        id=f"moebius_a={a:g}",
        poly=VectorPolynomial(SpaceSpec(p, n), codomain, terms),
        norm_lower=1.0, norm_source="exact-disk-automorphism", tail_bound=tail)


def moebius_corpus(a_values: Sequence[float], truncation: int = 60, n: int = 1,
                   p: float = INF, codomain: SpaceSpec | None = None) -> list[CorpusFunction]:
    return [moebius_atom(a, truncation, n, p, codomain) for a in a_values]


def disk_grid(start: float = 0.10, stop: float = 0.99, step: float = 0.01) -> list[float]:
    """The parameter grid {start, start+step, ..., stop} rounded to cents."""
    count = int(round((stop - start) / step)) + 1
    return [round(start + i * step, 10) for i in range(count)]


def linear_family(n: int, p: float, codomain: SpaceSpec | None = None,
                  seed: int = 0) -> CorpusFunction:
    """f(z) = sum_k z_k x_k with x_k cycling through coordinate directions.

    For scalar coefficients the sup norm is exactly ||(1,...,1)||_p' by
    duality; vector targets fall back to the refined ascent bound.
    """
    codomain = codomain or SpaceSpec(2.0, 1)
    d = codomain.n
    terms = {}
    for k in range(n):
        alpha = tuple(1 if i == k else 0 for i in range(n))
        e = np.zeros(d, dtype=complex)
        e[k % d] = 1.0
        terms[alpha] = e
    poly = VectorPolynomial(SpaceSpec(p, n), codomain, terms)
    if d == 1:
        norm = lp_norm(np.ones(n), dual_exponent(p))
        return CorpusFunction(id="linear-basis", poly=poly, norm_lower=norm,
                              norm_source="exact-hoelder")
    norm = supnorm_refined(poly, seed=derive_seed(seed, "linear-norm"))
    return CorpusFunction(id="linear-basis", poly=poly, norm_lower=norm)


def random_corpus(degrees: Sequence[int], per_degree: int, n: int, p: float,
                  codomain: SpaceSpec | None = None,
                  ensemble: str = "unimodular-signs", seed: int = 0,
                  norm_rtol: float = 1e-3) -> list[CorpusFunction]:
    """Random homogeneous members with norms resolved once at construction.

    The resolved norm is an ascent lower bound at ``norm_rtol`` refinement;
    the budget shrinks with dimension to keep large-n corpora tractable.
    """
    codomain = codomain or SpaceSpec(2.0, 1)
    restarts = max(6, 32 // max(n // 4, 1))
    out = []
    for m in degrees:
        for i in range(per_degree):
            s = derive_seed(seed, "corpus", ensemble, m, i)
            poly = random_polynomial(m, n, codomain.n, ensemble, s,
                                     p=p, q=codomain.p)
            norm = supnorm_refined(poly, seed=derive_seed(s, "norm"), rtol=norm_rtol,
                                   restarts=restarts, max_total_restarts=8 * restarts)
            out.append(CorpusFunction(id=f"{ensemble}_m={m}_i={i}", poly=poly,
                                      norm_lower=norm))
    return out


def default_corpus(n: int, p: float, codomain: SpaceSpec | None = None,
                   seed: int = 0, truncation: int = 60,
                   a_values: Sequence[float] = (0.3, 0.6, 0.9, 0.99),
                   random_degrees: Sequence[int] = (2, 3),
                   random_per_degree: int = 2) -> list[CorpusFunction]:
    """The default mixed corpus for grid experiments."""
    corpus = moebius_corpus(a_values, truncation, n, p, codomain)
    corpus.append(linear_family(n, p, codomain, seed=seed))
    if n >= 2:
        corpus.extend(random_corpus(random_degrees, random_per_degree, n, p,
                                    codomain, seed=seed))
    return corpus


def homogeneous_corpus(m: int, n: int, p: float, codomain: SpaceSpec | None = None,
                       count: int = 4, ensemble: str = "unimodular-signs",
                       seed: int = 0) -> list[CorpusFunction]:
    """Degree-m members for K_m estimation: random draws plus the top-degree
    monomial z_1^m (whose ratio is exactly 1 on every ball)."""
    codomain = codomain or SpaceSpec(2.0, 1)
    corpus = random_corpus([m], count, n, p, codomain, ensemble, seed)
    e = np.zeros(codomain.n, dtype=complex)
    e[0] = 1.0
    alpha = tuple(m if i == 0 else 0 for i in range(n))
    mono = VectorPolynomial(SpaceSpec(p, n), codomain, {alpha: e})
    corpus.append(CorpusFunction(id=f"monomial_z1^{m}", poly=mono,
                                 norm_lower=1.0, norm_source="exact-monomial"))
    return corpus


# --- corpus files -------------------------------------------------------------


def save_corpus(corpus: Sequence[CorpusFunction], path: str | Path) -> None:
    docs = []
    for f in corpus:
        doc = poly_to_dict(f.poly)
        doc["id"] = f.id
        if f.norm_lower is not None:
            doc["norm_lower"] = f.norm_lower
            doc["norm_source"] = f.norm_source
        docs.append(doc)
    Path(path).write_text(json.dumps(docs, indent=1))


def load_corpus(path: str | Path) -> list[CorpusFunction]:
    docs = json.loads(Path(path).read_text())
    out = []
    for i, doc in enumerate(docs):
        out.append(CorpusFunction(
            id=doc.get("id", f"f{i}"), poly=poly_from_dict(doc),
            norm_lower=doc.get("norm_lower"),
            norm_source=doc.get("norm_source", "ascent-refined")))
    return out
