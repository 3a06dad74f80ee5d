"""Exact closed forms and brute-force audits for powers of second-order recurrences."""

from .qfield import (DegenerateSpecError, NotRationalError, QuadElem, Rational,
                     RecurrenceSpec, binet_coeffs, conjugate, invert,
                     is_perfect_square, rationalize, roots)
from .polyrat import (EvalPoleError, Polynomial, PowerSeries, RationalFunction,
                      descend, lift, poly_gcd, poly_to_text, rf_to_latex,
                      rf_to_text)
from .seq import (SequenceHandle, companion, fibonacci, generalized_pell,
                  lucas, pell, pell_q, power_term, preset, term, term_fast,
                  terms)
from .gfpow import gf_oracle, gf_power, gf_power_claimed
from .partsum import (PartialSumQuery, horadam_direct, horadam_sums,
                      partial_sum_closed, partial_sum_direct,
                      partial_sum_general_b)
from .binsum import (binom_sum_closed, binom_sum_direct, binomial,
                     congruence_check, corollary_identity, fib_weighted_closed,
                     padic_valuation, root_power_collapse)
from .audit import (AuditResult, Claim, REGISTRY, UnknownClaimError, report,
                    run_audit)

__version__ = "0.1.0"
