#include <doctest.h>

#include <cmath>
#include <random>
#include <tuple>

#include "qmoment/errors.hpp"
#include "qmoment/watson.hpp"

using namespace qm;

namespace {

// log of pi^{-d s/2} prod Gamma((s + mu)/2) with purely imaginary shifts i*m
double log_L(double s, const std::vector<double>& m) {
  double l = -0.5 * double(m.size()) * s * kLogPi;
  for (double x : m) l += log_gamma(cplx(0.5 * s, 0.5 * x)).real();
  return l;
}

double log_H_direct(double tj, double T, double tk) {
  std::vector<double> tri;
  for (int a : {1, -1})
    for (int b : {1, -1})
      for (int c : {1, -1}) tri.push_back(a * tk + b * T + c * tj);
  const std::vector<double> gj = {tj, -tj};
  const std::vector<double> s2j = {tj, -tj, 2 * T + tj, 2 * T - tj, -2 * T + tj, -2 * T - tj};
  auto sym2 = [](double t) { return std::vector<double>{-2 * t, 0.0, 2 * t}; };
  return 0.5 * log_L(0.5, tri) + 0.5 * log_L(0.5, gj) + 0.5 * log_L(0.5, s2j) - 0.5 * log_L(1.0, sym2(tk)) -
         log_L(1.0, sym2(tj)) - 1.5 * log_L(1.0, sym2(T));
}

CompletedLValue finite_only(double v) {
  CompletedLValue c;
  c.finite_part = v;
  return c;
}

}  // namespace

TEST_SUITE("watson-weights") {

TEST_CASE("exponent Q examples") {
  CHECK(q_exponent({200.0, 100.0, 0.0}) == doctest::Approx(100.0));
  CHECK(q_exponent({100.0, 100.0, 1.0}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(q_exponent({100.5, 100.0, 1.0}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(q_exponent({150.0, 100.0, 10.0}) == doctest::Approx(40.0));
  CHECK(q_exponent({50.0, 100.0, 10.0}) == doctest::Approx(40.0));
  CHECK_THROWS_AS(q_exponent({50.0, 10.0, 10.0}), RegimeError);
}

TEST_CASE("Q: both forms agree, Q is continuous and nonnegative") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double T = 1.0 + 999.0 * u(rng), tk = 0.99 * T * u(rng), tj = 3.0 * T * u(rng);
    const TripleSpectralData d{tj, T, tk};
    double q = 0.0;
    REQUIRE_NOTHROW(q = q_exponent(d));
    REQUIRE(std::abs(q - q_exponent_piecewise(d)) <= 1e-9 * (1.0 + T));
    REQUIRE(q >= -1e-9 * T);
  }
  const double T = 100.0, tk = 7.0;
  for (double b : {T - tk, T + tk, 2 * T}) {
    const double lo = q_exponent_piecewise({b - 1e-9, T, tk}), hi = q_exponent_piecewise({b, T, tk});
    CHECK(std::abs(lo - hi) < 1e-6);
  }
}

TEST_CASE("archimedean weight H against direct Gamma products") {
  for (auto [tj, T, tk] : {std::tuple{100.0, 100.0, 1.0}, std::tuple{37.0, 50.0, 3.0}, std::tuple{260.0, 120.0, 9.0}}) {
    const double a = watson_arch_weight({tj, T, tk}), b = log_H_direct(tj, T, tk);
    CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)));
  }
  CHECK_THROWS_AS(watson_arch_weight({0.0, 10.0, 1.0}), DomainError);
}

TEST_CASE("H decays like exp(-pi Q / 2) away from the window") {
  const double T = 100.0, tk = 1.0;
  for (double tj : {130.0, 160.0, 60.0}) {
    const double d = watson_arch_weight({tj, T, tk}) - watson_arch_weight({T, T, tk});
    const double q = q_exponent({tj, T, tk});
    CHECK(d <= -0.5 * kPi * q + 10.0);
    CHECK(d >= -0.5 * kPi * q - 10.0);
  }
}

TEST_CASE("Watson quotient") {
  CHECK(watson_inner_product_sq(finite_only(1.0), finite_only(1.0), finite_only(1.0), finite_only(1.0)) == doctest::Approx(0.125));
  CHECK(watson_inner_product_sq(finite_only(3.0), finite_only(1.0), finite_only(2.0), finite_only(1.0)) == doctest::Approx(3.0 / 16.0));
  CHECK(watson_inner_product_sq(finite_only(0.0), finite_only(1.0), finite_only(1.0), finite_only(1.0)) == 0.0);
  CHECK_THROWS_AS(watson_inner_product_sq(finite_only(1.0), finite_only(0.0), finite_only(1.0), finite_only(1.0)), DomainError);
}

TEST_CASE("Rankin-Selberg inner products") {
  CHECK(std::abs(rankin_selberg_inner(InnerProductCase::cusp_eisenstein, {finite_only(2.0)}, 1.0, 1.0, finite_only(1.0)) - 1.0) <
        1e-15);
  CHECK(std::abs(rankin_selberg_inner(InnerProductCase::eisenstein_square, {finite_only(2.0), finite_only(3.0)}, 1.0, 0.5,
                                      finite_only(1.5)) - 1.0) < 1e-15);
  CHECK(rankin_selberg_inner(InnerProductCase::eisenstein_cusp, {finite_only(2.0)}, 0.0, 1.0, finite_only(1.0)) == 0.0);
  CHECK_THROWS_AS(rankin_selberg_inner(InnerProductCase::eisenstein_eisenstein, {finite_only(2.0)}, 1.0, 1.0, finite_only(1.0)),
                  DomainError);
  CHECK_THROWS_AS(rankin_selberg_inner(InnerProductCase::cusp_eisenstein, {finite_only(2.0), finite_only(1.0)}, 1.0, 1.0,
                                       finite_only(1.0)),
                  DomainError);
}

TEST_CASE("completed zeta and rho_t") {
  CHECK(std::abs(completed_zeta(2.0).log_value() - std::log(kPi / 6.0)) < 1e-14);
  const cplx s(0.5, 14.134725141734695);
  CHECK(std::abs(completed_zeta(s).finite_part) < 1e-12);
  CHECK(log_rho_t_sq(5.0) ==
        doctest::Approx(std::log(std::cosh(5.0 * kPi) / std::norm(zeta(cplx(1.0, 10.0))))).epsilon(1e-13));
  CHECK(log_rho_t_sq(-5.0) == log_rho_t_sq(5.0));
  CHECK(std::isfinite(log_rho_t_sq(400.0)));
}

}
