#pragma once

#include <string>
#include <vector>

#include "qmoment/complex_core.hpp"

namespace qm {

enum class PiConvention { half, full };

// L_inf(s) = pi^{-d s / 2} prod Gamma((s + mu_i) / 2)   (half)
//          = pi^{-d s} prod Gamma(s + mu_i)             (full)
struct ArchimedeanFactor {
  std::vector<cplx> mu;
  PiConvention convention = PiConvention::half;
  std::string label;

  int degree() const { return int(mu.size()); }
  cplx log_value(cplx s) const;
  cplx value(cplx s) const;
  // log L_inf(s) - log L_inf(s0)
  cplx log_ratio(cplx s, cplx s0) const;
  // d/ds log L_inf at s
  cplx log_derivative(cplx s) const;
  // prod_i (max(|mu_i|, 1) / (2 pi))^{1/2}, or the same with (...)^1 under the full convention
  double conductor() const;
  // mu closed under negation (as a multiset, to 1e-12)
  bool self_dual() const;
  // Smallest distance of (s + mu_i)/2 (or s + mu_i) to a Gamma pole.
  double pole_distance_at(cplx s) const;
};

ArchimedeanFactor arch_zeta();
ArchimedeanFactor arch_gl2(double t);
ArchimedeanFactor arch_sym2(double T);
// Sym^2 phi x phi_j: shifts {+-i t_j, 2iT +- i t_j, -2iT +- i t_j}
ArchimedeanFactor arch_sym2_gl2(double T, double tj);
// phi_k x phi x phi_j: shifts i(+-t_k +- T +- t_j)
ArchimedeanFactor arch_triple(double tk, double T, double tj);

}  // namespace qm
