"""bohrlab: a numerical laboratory for multidimensional Bohr radii.

Computes, estimates, and cross-validates Bohr radii and arithmetic Bohr
radii of vector-valued polynomials and truncated power series on lp^n
balls: exact index-set combinatorics, certified sup-norm brackets,
per-function radii by bisection, corpus-driven upper estimates, closed-form
theorem bounds, and reproducible grid experiments.
"""

from .arithmetic import (FeasibilityReport, MeanResult, RadiusVector,
                         constructive_lower, feasible, maximize_mean)
from .bounds import (BoundSpec, arithmetic_embedding_bounds, bombieri_closed_form,
                     cotype_bounds, embedding_bounds, envelope,
                     homogeneous_reduction_factor, km_polydisc_lower,
                     lower_bound_general, prop22_constant, rho_exponent)
from .corpus import (default_corpus, disk_grid, homogeneous_corpus, linear_family,
                     load_corpus, moebius_atom, moebius_corpus, random_corpus,
                     save_corpus)
from .harness import (ExperimentConfig, ExperimentResult, bounds_table,
                      parse_operator, run_arithmetic, run_experiment, verify_suite)
from .multiindex import (MultiIndex, alpha_to_j, count_Jm1, enumerate_J,
                         enumerate_alpha, j_to_alpha, multiplicity, reduced_star)
from .operators import (OperatorModel, bennett_carl_exponent, diagonal_operator,
                        identity_operator, inclusion_operator, kwapien_exponent,
                        op_from_dict, op_to_dict, operator_norm, scalar_identity,
                        summing_lower, weak_l1_upper)
from .polynomials import (SymmetricForm, VectorPolynomial, majorant,
                          multilinear_supnorm_lower, polarize, poly_from_dict,
                          poly_to_dict, random_polynomial, scalar_polynomial,
                          supnorm_lower, supnorm_refined, supnorm_upper)
from .radii import (CorpusFunction, FunctionRadius, MajorantOracle, RadiusEstimate,
                    SandwichReport, estimate_K_upper, estimate_Km_upper,
                    function_bohr_radius, sandwich_check)
from .seeding import derive_seed, generator
from .spaces import (INF, GeometryConstants, SpaceSpec, default_geometry,
                     dual_exponent, estimate_cotype_constant, lp_norm,
                     monomial_max, rademacher_average)

__version__ = "0.1.0"
