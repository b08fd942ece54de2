"""Experiment orchestration: grids, corpora, verification suites, CSV.

Every run is a pure function of (config, root seed): corpora are built
sequentially up front, grid points are estimated (optionally on a thread
pool), and rows are written in grid order, so output is byte-identical at
any worker count.  CSV headers carry a schema tag that downstream readers
check before trusting the columns.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from . import bounds as bnd
from .arithmetic import constructive_lower, feasible, maximize_mean
from .corpus import default_corpus, disk_grid, homogeneous_corpus, load_corpus, moebius_corpus
from .multiindex import count_Jm1, enumerate_J, enumerate_alpha, j_to_alpha, multiplicity
from .operators import (OperatorModel, identity_operator, inclusion_operator,
                        diagonal_operator, op_from_dict, operator_norm, scalar_identity)
from .polynomials import random_polynomial, supnorm_refined, supnorm_upper, polarize
from .radii import RadiusEstimate, estimate_K_upper, estimate_Km_upper, sandwich_check
from .seeding import derive_seed
from .spaces import INF, SpaceSpec, dual_exponent

RESULTS_SCHEMA = "bohrlab.results/1"
ARITHMETIC_SCHEMA = "bohrlab.arithmetic/1"
BOUNDS_SCHEMA = "bohrlab.bounds/1"

RESULTS_COLUMNS = ("quantity", "p", "n", "m", "lambda", "operator", "lower",
                   "lower_source", "upper", "upper_source", "tol", "capped", "seed")
ARITHMETIC_COLUMNS = ("p", "n", "lambda", "operator", "mean_lower", "method",
                      "capped_coords", "seed")
BOUNDS_COLUMNS = ("theorem", "direction", "p", "n", "m", "lambda", "q", "r",
                  "opnorm", "value", "constants_used")


def fmt_exp(p: float) -> str:
    if p == INF:
        return "inf"
    if float(p).is_integer():
        return str(int(p))
    return repr(float(p))


def parse_exp(s: str) -> float:
    s = str(s).strip().lower()
    return INF if s in ("inf", "infinity") else float(s)


def fmt_value(v) -> str:
    if v is None or v == "":
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_csv(path: str | Path, schema: str, columns: Sequence[str],
              rows: Sequence[Sequence]) -> None:
    lines = [f"# schema={schema}", ",".join(columns)]
    for row in rows:
        lines.append(",".join(fmt_value(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


# --- operator descriptors -----------------------------------------------------


def parse_operator(spec: str) -> OperatorModel:
    """Parse a compact operator descriptor or a JSON file path.

    identity:<p>:<d> | inclusion:<r>:<q>:<d> | diagonal:<r>:<q>:<v1,v2,...>
    ('scalar' abbreviates identity on C).
    """
    if spec == "scalar":
        return scalar_identity()
    path = Path(spec)
    if path.suffix == ".json" and path.exists():
        return op_from_dict(json.loads(path.read_text()))
    parts = spec.split(":")
    kind = parts[0]
    if kind == "identity" and len(parts) == 3:
        return identity_operator(SpaceSpec(parse_exp(parts[1]), int(parts[2])))
    if kind == "inclusion" and len(parts) == 4:
        return inclusion_operator(parse_exp(parts[1]), parse_exp(parts[2]), int(parts[3]))
    if kind == "diagonal" and len(parts) == 4:
        diag = [float(x) for x in parts[3].split(",")]
        return diagonal_operator(diag, parse_exp(parts[1]), parse_exp(parts[2]))
    raise ValueError(f"cannot parse operator descriptor {spec!r}")


# --- formula lower bounds -----------------------------------------------------


def formula_lower_candidates(p: float, n: int, lam: float, operator: OperatorModel,
                             cotype_constant: float = 1.0) -> list[tuple[str, float]]:
    """Every implemented closed-form lower bound applicable at a grid point."""
    out: list[tuple[str, float]] = []
    if operator.kind == "identity":
        if lam > 1.0:
            out.append(("corollary-identity",
                        bnd.lower_bound_general(p, n, lam, 1.0, identity=True)))
        if n == 1 and operator.source.n == 1 and 1.0 <= lam <= bnd.SQRT2 + 1e-12:
            out.append(("disk-closed-form", bnd.bombieri_closed_form(lam)))
        q = operator.source.cotype
        if q < INF and lam > 1.0:
            val = bnd.cotype_bounds(p, n, lam, q, C_q=cotype_constant, direction="lower")
            out.append((f"cotype-q{q:g};C_q={cotype_constant:g}", val))
    else:
        opn_lower, opn_upper = operator_norm(operator, seed=0)
        # the constant B decreases in ||V||, so the exact/upper norm is the
        # sound choice
        if opn_upper < lam:
            out.append((f"prop22;opnorm={opn_upper:g}",
                        bnd.lower_bound_general(p, n, lam, opn_upper)))
    if not out:
        out.append(("trivial", 0.0))
    return out


def best_formula_lower(p, n, lam, operator, cotype_constant=1.0) -> tuple[str, float]:
    cands = formula_lower_candidates(p, n, lam, operator, cotype_constant)
    name, val = max(cands, key=lambda t: t[1])
    return name, val


# --- experiment config and runner ---------------------------------------------


@dataclass(frozen=True)
class ExperimentConfig:
    ps: tuple[float, ...] = (INF,)
    ns: tuple[int, ...] = (1,)
    lams: tuple[float, ...] = (1.0,)
    ms: tuple[int, ...] = ()
    operators: tuple[str, ...] = ("scalar",)
    corpus: str = "default"        # default | moebius | <path>.json
    truncation: int = 60
    a_values: tuple[float, ...] = (0.3, 0.6, 0.9, 0.99)
    seed: int = 0
    tol: float = 1e-9
    budget: int = 12
    r_cap: float = 1.0
    workers: int = 1
    cotype_constant: float = 1.0
    arithmetic: bool = False
    envelopes: bool = False
    out: str | None = None

    @classmethod
    def from_json(cls, path: str | Path) -> "ExperimentConfig":
        doc = json.loads(Path(path).read_text())
        if "ps" in doc:
            doc["ps"] = tuple(parse_exp(x) for x in doc["ps"])
        for key in ("ns", "lams", "ms", "operators", "a_values"):
            if key in doc:
                doc[key] = tuple(doc[key])
        return cls(**doc)


@dataclass
class ExperimentResult:
    rows: list[tuple]
    violations: list[str]
    csv_path: str | None

    @property
    def passed(self) -> bool:
        return not self.violations


def _build_corpus(config: ExperimentConfig, n: int, p: float,
                  codomain: SpaceSpec) -> list:
    seed = derive_seed(config.seed, "corpus", fmt_exp(p), n, codomain.label())
    if config.corpus == "default":
        return default_corpus(n, p, codomain, seed=seed, truncation=config.truncation,
                              a_values=config.a_values)
    if config.corpus == "moebius":
        return moebius_corpus(config.a_values, config.truncation, n, p, codomain)
    return load_corpus(config.corpus)


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Evaluate the whole grid: formula bounds, corpus estimates, invariants.

    Emits one K row per grid point (best formula lower vs corpus upper),
    K_m rows for each requested degree, arithmetic rows and envelope rows
    when enabled.  Any ordering violation (a certified lower exceeding a
    certified upper) is recorded and makes the run fail.
    """
    operators = [(spec, parse_operator(spec)) for spec in config.operators]
    points = [(p, n, lam, spec, op)
              for p in config.ps for n in config.ns for lam in config.lams
              for (spec, op) in operators]

    corpora: dict[tuple, list] = {}
    for p, n, lam, spec, op in points:
        key = (p, n, op.source.label())
        if key not in corpora:
            corpora[key] = _build_corpus(config, n, p, op.source)
    km_corpora: dict[tuple, list] = {}
    if config.ms:
        for p, n, lam, spec, op in points:
            for m in config.ms:
                key = (p, n, op.source.label(), m)
                if key not in km_corpora:
                    km_corpora[key] = homogeneous_corpus(
                        m, n, p, op.source,
                        seed=derive_seed(config.seed, "km-corpus", fmt_exp(p), n, m))

    def run_point(point):
        p, n, lam, spec, op = point
        rows: list[tuple] = []
        violations: list[str] = []
        corpus = corpora[(p, n, op.source.label())]
        est = estimate_K_upper(corpus, op, lam, config.tol, r_cap=config.r_cap,
                               budget=config.budget,
                               seed=derive_seed(config.seed, "K", fmt_exp(p), n, lam, spec))
        lname, lval = best_formula_lower(p, n, lam, op, config.cotype_constant)
        if lval > est.upper + 1e-12:
            violations.append(
                f"K ordering violated at p={fmt_exp(p)} n={n} lam={lam} op={spec}: "
                f"{lname}={lval} > upper={est.upper} ({est.upper_source})")
        rows.append(("K", fmt_exp(p), n, "", lam, spec, lval, lname,
                     est.upper, est.upper_source, config.tol, est.capped, config.seed))
        for m in config.ms:
            kme = estimate_Km_upper(km_corpora[(p, n, op.source.label(), m)], op, lam,
                                    budget=config.budget,
                                    seed=derive_seed(config.seed, "Km", fmt_exp(p), n, lam, spec, m))
            rows.append(("K_m", fmt_exp(p), n, m, lam, spec, 0.0, "trivial",
                         kme.upper, kme.upper_source, 0.0, kme.capped, config.seed))
        if config.arithmetic:
            mm = maximize_mean(corpus, op, lam, budget=4,
                               seed=derive_seed(config.seed, "A", fmt_exp(p), n, lam, spec),
                               r_cap=config.r_cap)
            mean = mm.mean
            method = mm.method if mm.status == "ok" else mm.status
            if est.upper > config.tol:
                cl = constructive_lower(max(est.upper - config.tol, 1e-12), p, n)
                if mm.mean < cl.mean - 1e-9:
                    violations.append(
                        f"A lemma violated at p={fmt_exp(p)} n={n} lam={lam} op={spec}: "
                        f"mean {mm.mean} < constructive {cl.mean}")
            rows.append(("A", fmt_exp(p), n, "", lam, spec, mean,
                         f"corpus-proxy;{method};capped_coords={mm.capped_coords}",
                         config.r_cap, "cap", config.tol, mm.capped_coords > 0,
                         config.seed))
        if config.envelopes and n >= 2:
            q = op.target.p if op.target.p < INF else None
            env_rows = [
                ("env:main_lower", bnd.envelope(p, n, lam, "main_lower"), "lower"),
                ("env:main_upper", bnd.envelope(p, n, lam, "main_upper"), "upper"),
                ("env:arithmetic_upper", bnd.envelope(p, n, lam, "arithmetic_upper"), "upper"),
            ]
            if q is not None:
                env_rows.append(("env:operator_theorem12",
                                 bnd.envelope(p, n, lam, "operator_theorem12", q=q), "lower"))
            for name, val, direction in env_rows:
                lower = val if direction == "lower" else ""
                upper = val if direction == "upper" else ""
                rows.append((name, fmt_exp(p), n, "", lam, spec, lower,
                             f"envelope;C=1" if direction == "lower" else "",
                             upper, f"envelope;B=1" if direction == "upper" else "",
                             0.0, False, config.seed))
        return rows, violations

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(run_point, points))
    else:
        results = [run_point(pt) for pt in points]

    all_rows: list[tuple] = []
    all_violations: list[str] = []
    for rows, violations in results:
        all_rows.extend(rows)
        all_violations.extend(violations)

    csv_path = None
    if config.out:
        write_csv(config.out, RESULTS_SCHEMA, RESULTS_COLUMNS, all_rows)
        csv_path = config.out
    return ExperimentResult(all_rows, all_violations, csv_path)


def run_arithmetic(config: ExperimentConfig) -> ExperimentResult:
    """Arithmetic-radius grid with the dedicated CSV schema."""
    operators = [(spec, parse_operator(spec)) for spec in config.operators]
    rows: list[tuple] = []
    violations: list[str] = []
    for p in config.ps:
        for n in config.ns:
            for lam in config.lams:
                for spec, op in operators:
                    corpus = _build_corpus(config, n, p, op.source)
                    mm = maximize_mean(corpus, op, lam, budget=4,
                                       seed=derive_seed(config.seed, "A", fmt_exp(p), n, lam, spec),
                                       r_cap=config.r_cap)
                    rows.append((fmt_exp(p), n, lam, spec, mm.mean,
                                 mm.method if mm.status == "ok" else mm.status,
                                 mm.capped_coords, config.seed))
    csv_path = None
    if config.out:
        write_csv(config.out, ARITHMETIC_SCHEMA, ARITHMETIC_COLUMNS, rows)
        csv_path = config.out
    return ExperimentResult(rows, violations, csv_path)


def bounds_table(ps, ns, lams, *, qs=(2.0,), opnorm: float | None = None,
                 cotype_constant: float = 1.0) -> list[tuple]:
    """Rows of every closed-form bound over a parameter grid."""
    rows: list[tuple] = []

    def add(theorem, direction, p, n, m, lam, q, r, opn, value, consts):
        rows.append((theorem, direction, fmt_exp(p) if p is not None else "",
                     n if n is not None else "", m if m is not None else "",
                     lam if lam is not None else "",
                     fmt_exp(q) if q is not None else "",
                     fmt_exp(r) if r is not None else "",
                     opn if opn is not None else "", value, consts))

    for lam in lams:
        if 1.0 <= lam <= bnd.SQRT2:
            add("bombieri", "exact", 1.0, 1, None, lam, None, None, None,
                bnd.bombieri_closed_form(lam), "none")
    for p in ps:
        for n in ns:
            for lam in lams:
                if lam > 1.0:
                    add("corollary-identity", "lower", p, n, None, lam, None, None, 1.0,
                        bnd.lower_bound_general(p, n, lam, 1.0, identity=True), "none")
                if opnorm is not None and 0.0 < opnorm < lam:
                    add("prop22", "lower", p, n, None, lam, None, None, opnorm,
                        bnd.lower_bound_general(p, n, lam, opnorm), "none")
                for q in qs:
                    if lam > 1.0:
                        add(f"cotype", "lower", p, n, None, lam, q, None, None,
                            bnd.cotype_bounds(p, n, lam, q, cotype_constant, "lower"),
                            f"C_q={cotype_constant:g}")
                    add(f"cotype", "upper", p, n, None, lam, q, None, None,
                        bnd.cotype_bounds(p, n, lam, q, cotype_constant, "upper"), "none")
                if n >= 2:
                    add("main-envelope", "lower", p, n, None, lam, None, None, None,
                        bnd.envelope(p, n, lam, "main_lower"), "C=1")
                    add("main-envelope", "upper", p, n, None, lam, None, None, None,
                        bnd.envelope(p, n, lam, "main_upper"), "B=1")
                    add("arithmetic-envelope", "upper", p, n, None, lam, None, None, None,
                        bnd.envelope(p, n, lam, "arithmetic_upper"), "B=1")
    return rows


# --- verification suites ------------------------------------------------------


def _suite_report(suite: str, failures: list[str], checks: int) -> dict:
    return {"suite": suite, "passed": not failures, "checks": checks,
            "failures": failures}


def suite_combinatorics(max_mn: int = 6, max_card: int = 8,
                        max_envelope: int = 20, seed: int = 0) -> dict:
    failures: list[str] = []
    checks = 0
    for m in range(0, max_card + 1):
        for n in range(1, max_card + 1):
            checks += 1
            if len(enumerate_J(m, n)) != math.comb(n + m - 1, m):
                failures.append(f"card J({m},{n}) != binomial")
    for m in range(0, max_mn + 1):
        for n in range(1, max_mn + 1):
            checks += 1
            if sum(multiplicity(j) for j in enumerate_J(m, n)) != n**m:
                failures.append(f"sum of multiplicities != {n}^{m}")
    for m in range(0, 4):
        for n in range(1, 4):
            for alpha in enumerate_alpha(m, n):
                checks += 1
                from .multiindex import alpha_to_j
                if j_to_alpha(alpha_to_j(alpha), n) != alpha:
                    failures.append(f"roundtrip failed at {alpha}")
    for m in range(1, max_envelope + 1):
        for n in range(1, max_envelope + 1):
            checks += 1
            exact, envelope = count_Jm1(m, n)
            if exact > envelope * (1 + 1e-12):
                failures.append(f"count envelope violated at m={m} n={n}")
    return _suite_report("combinatorics", failures, checks)


def suite_lemma31(instances: int = 500, seed: int = 0, rel_slack: float = 1e-6,
                  norm_rtol: float = 1e-4) -> dict:
    """Coefficient-summability of scalar polynomials against the sup norm.

    For each degree-(m-1) index j the p'-norm of the coefficient slice
    c_(j, k), k >= last(j), must stay below
    m e^(1+(m-1)/p) |j|^(1/p) ||P||.  A numerical check, not a proof: the
    sup norm is an ascent lower bound refined to ``norm_rtol``.
    """
    failures: list[str] = []
    checks = 0
    ps = (1.0, 2.0, INF)
    for i in range(instances):
        s = derive_seed(seed, "lemma31", i)
        rng_m = 1 + (i % 4)
        rng_n = 1 + ((i // 4) % 4)
        p = ps[i % 3]
        poly = random_polynomial(rng_m, rng_n, 1, "unimodular-signs", s, p=p)
        norm = supnorm_refined(poly, seed=derive_seed(s, "norm"), rtol=norm_rtol)
        coeffs = {alpha: poly.terms[alpha][0] for alpha in poly.terms}
        m, n = rng_m, rng_n
        pd = dual_exponent(p)
        inv_p = 0.0 if p == INF else 1.0 / p
        for j in enumerate_J(m - 1, n):
            last = j[-1] if j else 1
            slice_abs = []
            for k in range(last, n + 1):
                alpha = j_to_alpha(tuple(list(j) + [k]), n)
                c = coeffs.get(alpha)
                if c is not None:
                    slice_abs.append(abs(c))
            if not slice_abs:
                continue
            checks += 1
            arr = np.array(slice_abs)
            lhs = float(arr.max()) if pd == INF else float((arr**pd).sum() ** (1 / pd))
            rhs = m * math.exp(1.0 + (m - 1) * inv_p) * multiplicity(j) ** inv_p * norm
            if lhs > rhs * (1.0 + rel_slack):
                failures.append(
                    f"instance {i} (m={m}, n={n}, p={fmt_exp(p)}), j={j}: "
                    f"lhs={lhs:.6g} > rhs={rhs:.6g}")
    return _suite_report("lemma31", failures, checks)


def suite_bombal(seed: int = 0, tol: float = 1e-9) -> dict:
    """Square-sum of symmetric-form entries against the polarization bound.

    For Hilbert coefficient spaces (cotype-2 constant 1) the entry l2 sum
    (sum over all ordered index tuples) must stay below (m^m/m!) times the
    coefficient-majorant upper bound of ||P||; both sides are certified in
    that direction.  Checked on l2 and polydisc domains (the inequality is
    used there; smaller domains are not asserted).
    """
    failures: list[str] = []
    checks = 0
    for p in (2.0, INF):
        for m in (1, 2, 3):
            for n in (2, 3):
                for d in (1, 2, 3):
                    for ens in ("unimodular-signs", "complex-gaussian"):
                        s = derive_seed(seed, "bombal", fmt_exp(p), m, n, d, ens)
                        poly = random_polynomial(m, n, d, ens, s, p=p, q=2.0)
                        lhs_sq = 0.0
                        for alpha, c in poly.terms.items():
                            from .multiindex import alpha_to_j
                            mult = multiplicity(alpha_to_j(alpha))
                            lhs_sq += float(np.sum(np.abs(c) ** 2)) / mult
                        lhs = math.sqrt(lhs_sq)
                        rhs = m**m / math.factorial(m) * supnorm_upper(poly)
                        checks += 1
                        if lhs > rhs * (1.0 + tol):
                            failures.append(
                                f"p={fmt_exp(p)} m={m} n={n} d={d} {ens}: "
                                f"lhs={lhs:.6g} > rhs={rhs:.6g}")
    return _suite_report("bombal", failures, checks)


def suite_sandwich(seed: int = 0) -> dict:
    """Formula-derived K lower bounds against small-corpus upper estimates."""
    failures: list[str] = []
    checks = 0
    for p in (2.0, INF):
        for n in (1, 2, 4):
            for lam in (1.5, 2.0):
                corpus = moebius_corpus((0.3, 0.6, 0.9, 0.99), 60, n, p)
                est = estimate_K_upper(corpus, scalar_identity(), lam, 1e-9,
                                       seed=derive_seed(seed, "sandwich", fmt_exp(p), n, lam))
                # strip the (lam-1)/lam reduction off the cotype K bound to
                # recover the underlying inf_m K_m lower bound (1/e branch)
                km_val = (bnd.cotype_bounds(p, n, lam, 2.0, 1.0, "lower")
                          * lam / (lam - 1.0)) if lam > 1 else 0.0
                km_lowers = {"cotype-q2-infm": km_val}
                report = sandwich_check(est, km_lowers, 1.0, lam)
                checks += len(report.entries)
                if not report.passed:
                    failures.append(f"sandwich failed at p={fmt_exp(p)} n={n} lam={lam}: "
                                    f"{report.entries}")
    return _suite_report("sandwich", failures, checks)


def suite_arithmetic_lemma(seed: int = 0, tol: float = 1e-9) -> dict:
    """maximize_mean against the constructive uniform vector, plus the n=1
    coincidence of the arithmetic estimate with the K estimate."""
    failures: list[str] = []
    checks = 0
    op = scalar_identity()
    for p in (2.0, INF):
        for n in (1, 2, 3):
            for lam in (1.0, 1.5):
                corpus = default_corpus(n, p, seed=derive_seed(seed, "al-corpus", fmt_exp(p), n))
                est = estimate_K_upper(corpus, op, lam, tol,
                                       seed=derive_seed(seed, "al-K", fmt_exp(p), n, lam))
                mm = maximize_mean(corpus, op, lam, budget=4,
                                   seed=derive_seed(seed, "al-A", fmt_exp(p), n, lam))
                checks += 1
                if est.upper > tol:
                    cl = constructive_lower(max(est.upper - tol, 1e-12), p, n,
                                            corpus=corpus, operator=op, lam=lam)
                    if mm.mean < cl.mean - 1e-9:
                        failures.append(f"p={fmt_exp(p)} n={n} lam={lam}: mean "
                                        f"{mm.mean} < constructive {cl.mean}")
                if n == 1:
                    checks += 1
                    if abs(mm.mean - est.upper) > 1e-6:
                        failures.append(f"n=1 mismatch at p={fmt_exp(p)} lam={lam}: "
                                        f"A={mm.mean} vs K={est.upper}")
    return _suite_report("arithmetic_lemma", failures, checks)


SUITES = {
    "combinatorics": suite_combinatorics,
    "lemma31": suite_lemma31,
    "bombal": suite_bombal,
    "sandwich": suite_sandwich,
    "arithmetic_lemma": suite_arithmetic_lemma,
}


def verify_suite(suite: str, seed: int = 0, **kwargs) -> dict:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; known: {sorted(SUITES)}")
    return SUITES[suite](seed=seed, **kwargs)
