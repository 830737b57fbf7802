"""Extended-precision orthogonal polynomials for |x|^(2 lambda + 1) exp(-x^4 + t x^2)."""

from .core import (Params, PrecisionContext, PrecisionExhausted, ResidualReport,
                   central_diff, combine, default_context)
from .determinants import HnValue, TauValue, hn, hn_trace, log_tau, sigma_residual, tau
from .laguerre import (LaguerrePolySet, kernel_gram, kernel_polys, laguerre_recurrence,
                       painleve_alpha_beta, quadratic_map_residual, symmetrization_check)
from .moments import MomentSequence, moment, moment_oracle, moment_sequence, mu0
from .polynomials import (MonicPoly, NormTable, Poly, closed_form_polys, closed_form_residual,
                          gauss_rule, generate, gram_check, norms, norms_oracle,
                          orthogonal_polys, zeros)
from .recurrence import (METHODS, BetaTable, backlund_residual, beta_asymptotic, beta_closed,
                         beta_dp1, beta_hankel, beta_table, beta_tau, dp1_residual,
                         beta_expansion, doubling_exponent, hankel_betas, hn_asymptotic,
                         hn_from_betas, leading_omitted_order, pIV_residual,
                         string_equation_residual)
from .special import (PhiExpansion, big_phi, erfc, gamma, pcf_d, pcf_d_integral, phi_expansion,
                      riccati_residual)
from .structure import (LadderPair, OdeCoeffs, ShohatCoeffs, decide_b_offset_sign, dde_residual,
                        ladder, ladder_oracle, lemma_b_sum_residual, ode_coeffs, ode_residual,
                        shohat, shohat_integrals, shohat_ladder, shohat_residual)
from .verify import IDENTITIES, run_suite

__version__ = "0.1.0"
