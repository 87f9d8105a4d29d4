"""Exact p-adic arithmetic, Volkenborn integration, and integral linear forms in p-adic L-values."""

from .arith import (bernoulli_number, bernoulli_poly, binom_padic_data,
                    factorial_valuation, lcm_upto, multinomial_packed, vp)
from .characters import (ChiPadicData, DirichletCharacter, char_make,
                         character_from_spec, chi_padic_data, gen_bernoulli,
                         quadratic_character, trivial_character)
from .cyclotomic import CyclotomicElement, PadicEmbedding, cyclo_norm
from .errors import (DegreeError, DeltaRuleError, DomainError, EmbeddingError,
                     IntegralityError, NonSplitDenominator, PrecisionError)
from .forms import (FormParameters, LinearFormOverK, PartialFractionTable,
                    RnFunction, build_rn, choose_params, evaluate_form_identity,
                    hurwitz_params, hurwitz_variant_form, lambda_form,
                    partial_fractions, per_x_identity, rho_higher, rho_zero)
from .hurwitz import (HurwitzArg, OmegaSplit, lp_value, reduce_to_unit_interval,
                      zeta_p_nonpos, zeta_p_pos, zeta_p_shift)
from .padic import Padic, angle, teichmuller, teichmuller_ext, teichmuller_rational
from .polynomials import Poly, RationalFunction, parse_rational_function
from .volkenborn import (PoleData, WaveletExpansion, integral_mahler,
                         integral_riemann, integral_wavelet, translate_integral,
                         vdp_data, wavelet_coeffs)

__version__ = "0.1.0"
