#pragma once

#include <vector>

#include "qmoment/complex_core.hpp"

namespace qm {

// coeff * pi^{pi_exp} * 2^{two_exp} * prod Gamma(num) / prod Gamma(den)
struct GammaTerm {
  cplx coeff{1.0, 0.0};
  cplx pi_exp{0.0, 0.0};
  cplx two_exp{0.0, 0.0};
  std::vector<cplx> num;
  std::vector<cplx> den;
};

struct MpSumResult {
  cplx value;
  double max_term;  // largest |term| in the sum, for cancellation accounting
  int digits;
};

// Evaluates sum of GammaTerms with MPFR at the given decimal precision.
// Inputs are taken as exact binary64 numbers. Reciprocal Gamma at a pole is 0.
MpSumResult gamma_term_sum_mp(const std::vector<GammaTerm>& terms, int digits);

// Same, raising precision until the result is resolved to rel_target.
MpSumResult gamma_term_sum_adaptive(const std::vector<GammaTerm>& terms, double rel_target);

}  // namespace qm
