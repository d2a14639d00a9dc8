#include <doctest.h>

#include <cmath>

#include "qmoment/afe.hpp"

using namespace qm;

namespace {

// trapezoid on Re s = c, |Im s| <= U
double V_line(double y, const AfeInstance& inst, double c) {
  const double h = 0.02;
  const cplx l0 = inst.arch.log_value(0.5);
  cplx sum = 0.0;
  for (double tau = -inst.U; tau <= inst.U + 1e-12; tau += h) {
    const cplx s(c, tau);
    const double wgt = std::abs(std::abs(tau) - inst.U) < 1e-9 ? 0.5 : 1.0;
    sum += wgt * std::exp(inst.arch.log_value(0.5 + s) - l0 - s * std::log(y) + s * s) / s;
  }
  return (sum * h / (2.0 * kPi)).real();
}

}  // namespace

TEST_SUITE("afe-engine") {

TEST_CASE("V against independent contour integrals") {
  const double T = 10.0;
  AfeInstance inst = make_afe_instance(arch_sym2(T), T);
  const double q = inst.conductor();
  for (int k = -3; k <= 2; ++k) {
    const double y = q * std::pow(10.0, k);
    const double oracle = k < 0 ? 1.0 + V_line(y, inst, -0.25) : V_line(y, inst, 1.0);
    VValue v = afe_weight_V(y, inst);
    CHECK(std::abs(v.value.real() - oracle) <= 1e-9);
    CHECK(std::abs(v.value.imag()) <= 1e-12);
  }
  CHECK(std::abs(afe_weight_V(1e3 * q, inst).value) <= 1e-6);
}

TEST_CASE("V is insensitive to the contour cut") {
  AfeInstance a = make_afe_instance(arch_sym2(10.0), 10.0), b = a;
  b.U = 2.0 * a.U;
  for (double y : {0.1, 3.0, 50.0}) CHECK(std::abs(afe_weight_V(y, a).value - afe_weight_V(y, b).value) <= 1e-12);
}

TEST_CASE("Chebyshev table of V") {
  AfeInstance inst = make_afe_instance(arch_sym2(10.0), 10.0);
  AfeWeightTable tab(inst, 1.0, 1e4, 1e-13);
  for (double y : {1.0, 2.5, 37.0, 911.0, 9999.0})
    CHECK(std::abs(tab(y) - afe_weight_V(y, inst).value.real()) <= 1e-12);
}

TEST_CASE("second-order Stirling corrections") {
  auto resid = [](cplx s, double t, bool with_p4) {
    const cplx lhs = log_gamma(0.5 * (0.5 + s + cplx(0, t))) + log_gamma(0.5 * (0.5 + s - cplx(0, t))) -
                     log_gamma(0.5 * cplx(0.5, t)) - log_gamma(0.5 * cplx(0.5, -t));
    const cplx corr = 1.0 + stirling_P2(s) / (t * t) + (with_p4 ? stirling_P4(s) / std::pow(t, 4) : 0.0);
    return std::abs(std::exp(lhs - 0.5 * s * std::log(t * t / 4.0)) - corr);
  };
  for (cplx s : {cplx(0.3, 0.2), cplx(-0.4, 1.0), cplx(1.0, 0.0)}) {
    const double r6 = resid(s, 20.0, true) / resid(s, 40.0, true);
    CHECK(r6 >= 40.0);
    CHECK(r6 <= 100.0);
    const double r4 = resid(s, 20.0, false) / resid(s, 40.0, false);
    CHECK(r4 >= 12.0);
    CHECK(r4 <= 20.0);
  }
  CHECK(std::abs(stirling_P2(0.0)) == 0.0);
  CHECK(std::abs(stirling_P4(0.0)) == 0.0);
}

TEST_CASE("central value of the surrogate") {
  const double T = 5.0;
  AfeInstance inst = make_afe_instance(arch_sym2(T), T);
  GL3Coefficients A = surrogate_gl3_eisenstein(T, 1, 65536);
  CentralValueResult r = afe_central_value(A, inst, 1e-10);
  const cplx oracle = zeta(cplx(0.5, -2.0 * T)) * zeta(0.5) * zeta(cplx(0.5, 2.0 * T));
  CHECK(std::abs(r.value - oracle) <= 1e-8 * std::abs(oracle));
  CHECK(std::abs(r.polar_correction) > 0.0);
  CHECK(r.truncation_n_max <= 65536);

  GL3Coefficients Z = A;
  for (auto& c : Z.a) c = 0.0;
  Z.polar_caveat = false;
  CHECK(std::abs(afe_central_value(Z, inst, 1e-10).value) == 0.0);

  GL3Coefficients small = surrogate_gl3_eisenstein(T, 1, 8);
  CHECK_THROWS_AS(afe_central_value(small, inst, 1e-10), RangeError);
}

TEST_CASE("truncation profile") {
  TruncationProfile p = afe_truncation_profile(100.0, 0.05);
  CHECK(p.n_max == long(std::ceil(std::pow(100.0, 2.05))));
  CHECK(p.window == doctest::Approx(std::pow(100.0, 0.05)));
  long prev = 0;
  for (double T = 10.0; T <= 1e3; T *= 1.7) {
    long n = afe_truncation_profile(T, 0.05).n_max;
    CHECK(n > prev);
    prev = n;
  }
  CHECK_THROWS_AS(afe_truncation_profile(-1.0, 0.1), DomainError);
}

}
