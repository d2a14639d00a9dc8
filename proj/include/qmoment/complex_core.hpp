#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "qmoment/errors.hpp"

namespace qm {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kLogPi = 1.14472988584940017414342735135305871;
inline constexpr double kLog2Pi = 1.83787706640934548356065947281123527;
inline constexpr double kLn2 = 0.693147180559945309417232121458176568;

// Throws DomainError on NaN/inf components.
cplx checked(cplx z, const char* where);

// sin(pi x), cos(pi x) with exact argument reduction; exact zeros at
// (half-)integers.
double sinpi(double x);
double cospi(double x);

// e(x) = exp(2 pi i x) for complex x.
cplx e_of(cplx x);

// Nearest non-positive integer distance, or +inf if Re z > 0.5.
double pole_distance(cplx z);

struct StirlingExpansion {
  int order = 3;
  // B_{2k} / (2k (2k-1)) as (numerator, denominator), k = 1..order
  std::vector<std::pair<long long, long long>> coefficients;
};

StirlingExpansion stirling_expansion(int J);

// Principal branch log Gamma.
cplx log_gamma(cplx z);

cplx digamma(cplx z);

// z log z - z + log(2 pi / z)/2 + sum_{k<=J} B_{2k}/(2k(2k-1) z^{2k-1}).
// Requires |z| >= 2 and |arg z| <= 3 pi / 4.
cplx stirling_log_gamma(cplx z, int J);

cplx zeta(cplx s);

// theta(s) = pi^{-s} Gamma(s) zeta(2s)
cplx completed_zeta_theta(cplx s);
// Same quantity assembled from log pieces: -s log pi + log Gamma(s) + log zeta(2s).
cplx completed_zeta_theta_logspace(cplx s);
// phi(s) = theta(1-s) / theta(s)
cplx scattering_phi(cplx s);

// Compensated complex accumulator.
class KahanSum {
 public:
  void add(cplx x) {
    cplx y = x - c_;
    cplx t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  cplx value() const { return s_; }

 private:
  cplx s_{0.0, 0.0};
  cplx c_{0.0, 0.0};
};

}  // namespace qm
