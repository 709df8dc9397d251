"""Symbolic-numeric construction and verification of Lagrangians for
linear second-order equations solved by special functions."""

from .errors import (AccuracyError, DeterminantZeroError, DomainError,
                     ExprSyntaxError, GuardViolation, NotTotalDerivative,
                     SingularEvaluation, UnboundNameError, VarlagrError)
from .expr import Expr, diff, eval_expr, integral_of_B, parse_expr, to_text
from .odes import (LinearODE2, dhat_apply, make_airy, make_bessel,
                   make_caldirola_kanai, make_custom, make_hermite,
                   make_legendre)
from .paths import TrialPath, bump_path, from_polynomial, random_smooth_paths
from .special import (SolutionBasis, Superposition, airy_ai, airy_bi,
                      assoc_p, assoc_q, basis_for, bessel_i, bessel_j,
                      bessel_k, bessel_y, denominator_guarded_grid,
                      guarded_solution_grid, hermite_he, legendre_p,
                      legendre_q, rk_integrate, second_solution_reduction,
                      spherical_i, spherical_j, spherical_k, spherical_y,
                      wronskian)
from .lagrangians import (GaugeFunction, Lagrangian, combined_lagrangian,
                          fg_from_vbar, fg_paths_from_vbar, gauge_from_null,
                          generic_nsl_el_coefficients, hns_corollary6,
                          hns_direct, mixed_lagrangian, nonstandard_lagrangian,
                          null_lagrangian_b0, paper_stated_gauge,
                          riccati_residual, riccati_scale,
                          standard_lagrangian, u_from_vbar,
                          u_path_from_vbar)
from .variational import (ELResidualReport, action, el_nonstandard_ratio,
                          el_residual, el_wrt_vbar_obstruction,
                          recover_original, stationarity_probe,
                          verify_ml_annihilation)
from .helmholtz import (HelmholtzReport, ResidualForm, helmholtz_check,
                        nsl_subset_residual, vbar_ansatz_check)
from .kernels import HAVE_COMPILED

__version__ = "0.1.0"
