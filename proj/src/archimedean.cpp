#include "qmoment/archimedean.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qm {

namespace {

cplx arg_of(const ArchimedeanFactor& a, cplx s, cplx mu) {
  return a.convention == PiConvention::half ? 0.5 * (s + mu) : s + mu;
}

double pi_scale(const ArchimedeanFactor& a) {
  return a.convention == PiConvention::half ? 0.5 * a.degree() : double(a.degree());
}

}  // namespace

cplx ArchimedeanFactor::log_value(cplx s) const {
  cplx r = -pi_scale(*this) * s * kLogPi;
  for (cplx m : mu) r += log_gamma(arg_of(*this, s, m));
  return r;
}

cplx ArchimedeanFactor::value(cplx s) const { return checked(std::exp(log_value(s)), "L_inf"); }

cplx ArchimedeanFactor::log_ratio(cplx s, cplx s0) const {
  cplx r = -pi_scale(*this) * (s - s0) * kLogPi;
  for (cplx m : mu) r += log_gamma(arg_of(*this, s, m)) - log_gamma(arg_of(*this, s0, m));
  return r;
}

cplx ArchimedeanFactor::log_derivative(cplx s) const {
  const double f = convention == PiConvention::half ? 0.5 : 1.0;
  cplx r = -pi_scale(*this) * kLogPi;
  for (cplx m : mu) r += f * digamma(arg_of(*this, s, m));
  return r;
}

double ArchimedeanFactor::conductor() const {
  double lc = 0.0;
  const double p = convention == PiConvention::half ? 0.5 : 1.0;
  for (cplx m : mu) lc += p * std::log(std::max(std::abs(m), 1.0) / (2.0 * kPi));
  return std::exp(lc);
}

bool ArchimedeanFactor::self_dual() const {
  std::vector<bool> used(mu.size(), false);
  for (size_t i = 0; i < mu.size(); ++i) {
    bool found = false;
    for (size_t j = 0; j < mu.size(); ++j) {
      if (!used[j] && std::abs(mu[i] + mu[j]) <= 1e-12 * (1.0 + std::abs(mu[i]))) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

double ArchimedeanFactor::pole_distance_at(cplx s) const {
  double d = std::numeric_limits<double>::infinity();
  for (cplx m : mu) d = std::min(d, pole_distance(arg_of(*this, s, m)));
  return d;
}

ArchimedeanFactor arch_zeta() { return {{0.0}, PiConvention::half, "zeta"}; }

ArchimedeanFactor arch_gl2(double t) {
  return {{cplx(0, t), cplx(0, -t)}, PiConvention::half, "gl2"};
}

ArchimedeanFactor arch_sym2(double T) {
  return {{cplx(0, -2 * T), 0.0, cplx(0, 2 * T)}, PiConvention::half, "sym2"};
}

ArchimedeanFactor arch_sym2_gl2(double T, double tj) {
  ArchimedeanFactor a;
  a.label = "sym2xgl2";
  for (double c : {0.0, 2 * T, -2 * T})
    for (double e : {1.0, -1.0}) a.mu.push_back(cplx(0, c + e * tj));
  return a;
}

ArchimedeanFactor arch_triple(double tk, double T, double tj) {
  ArchimedeanFactor a;
  a.label = "triple";
  for (double e1 : {1.0, -1.0})
    for (double e2 : {1.0, -1.0})
      for (double e3 : {1.0, -1.0}) a.mu.push_back(cplx(0, e1 * tk + e2 * T + e3 * tj));
  return a;
}

}  // namespace qm
