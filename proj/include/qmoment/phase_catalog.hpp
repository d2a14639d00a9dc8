#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "qmoment/oscillatory.hpp"

namespace qm {

using PhaseParams = std::map<std::string, double>;

struct PhaseCatalogEntry {
  std::string name;
  PhaseParams params;
  PhaseFunction phase;
  double lo = 0.0;  // open domain (lo, hi) of the variable
  double hi = 0.0;
  // exact stationary point and phase value there, when a closed form exists for these params
  std::optional<std::function<double()>> stationary_closed_form;
  std::optional<std::function<double()>> value_at_stationary;
  // truncated expansion of the stationary point (h6: eta_0 + eta_1 + eta_2) and its error scale
  std::optional<std::function<double()>> stationary_expansion;
  double expansion_error_scale = 0.0;
};

// Parameters (sign = +1 / -1 selects the upper / lower of +-):
//   h1: b, tau                                   cycles   b xi + (tau/pi) log xi
//   h2: b, T, N, y, sign (sgn b = sign)          radians  b xi log(|b|(b^2 xi^2 - 4T^2)/(8 pi e N y xi)) - 2T log((|b|xi -+ 2T)/(|b|xi +- 2T))
//   h3: n, r, M, Xi, T, sign, sigma2             cycles   +-(3n/(r M^2)) Xi^2 xi^2 + sigma2 (T/(pi M)) Xi xi
//   h4: T, r, N, tau, sign                       cycles   -+(37 T^2 r/(12 pi^2 sqrt N)) xi - (tau/2pi) log xi
//   h5: T, r, N, n, sign                         radians  Y = 37 T^2 r/(6 pi sqrt N)
//   h6: Upsilon, T, N, xi, x, sign               radians  variable eta
// Throws DomainError for a missing parameter or unknown name, RegimeError outside the validity region.
PhaseCatalogEntry phase_catalog(const std::string& name, const PhaseParams& params);

}  // namespace qm
