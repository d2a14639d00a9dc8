#include <doctest.h>

#include <cmath>
#include <random>

#include "qmoment/oscillatory.hpp"

using namespace qm;

namespace {

PhaseFunction quadratic(double lambda, double x0 = 0.0) {
  PhaseFunction h;
  h.units = PhaseUnits::radians;
  h.h = [=](double x) { return lambda * (x - x0) * (x - x0); };
  h.dh = [=](double x) { return 2.0 * lambda * (x - x0); };
  h.d2h = [=](double) { return 2.0 * lambda; };
  return h;
}

PhaseFunction zero_phase() {
  PhaseFunction h;
  h.h = [](double) { return 0.0; };
  h.dh = [](double) { return 0.0; };
  h.d2h = [](double) { return 0.0; };
  return h;
}

SmoothWeight gaussian_window(double half) {
  SmoothWeight w;
  w.lo = -half;
  w.hi = half;
  w.f = [](double x) -> cplx { return std::exp(-x * x); };
  return w;
}

}  // namespace

TEST_SUITE("oscillatory-engine") {

TEST_CASE("h = 0 with a polynomial bump") {
  SmoothWeight w;
  w.lo = -1.0;
  w.hi = 1.0;
  w.f = [](double x) -> cplx { return (1 - x * x) * (1 - x * x); };
  auto r = integrate_oscillatory(w, zero_phase(), 1e-12);
  CHECK(std::abs(r.value - 16.0 / 15.0) < 1e-12);
  CHECK(r.abs_err <= 1e-12);
}

TEST_CASE("Gaussian-windowed Fresnel integral") {
  // int e^{-x^2} e^{i lambda x^2} dx = sqrt(pi / (1 - i lambda)); the cut at |x| = 5 costs e^{-25}
  for (double lambda : {1e2, 1e3, 1e4}) {
    auto r = integrate_oscillatory(gaussian_window(5.0), quadratic(lambda), 1e-12);
    cplx exact = std::sqrt(kPi / cplx(1.0, -lambda));
    CHECK(std::abs(r.value - exact) < 1e-10);
    CHECK(std::abs(exact - std::sqrt(kPi / lambda) * std::polar(1.0, kPi / 4)) < 1.01 / lambda * std::abs(exact));
  }
}

TEST_CASE("monotone phase decays") {
  SmoothWeight w = bump_weight(0.0, 2.0);
  PhaseFunction h;
  h.units = PhaseUnits::radians;
  const double R = 2000.0;
  h.h = [=](double x) { return R * x + 0.3 * R * x * x / 4.0; };
  h.dh = [=](double x) { return R + 0.3 * R * x / 2.0; };
  h.d2h = [=](double) { return 0.3 * R / 2.0; };
  auto r = integrate_oscillatory(w, h, 1e-13);
  CHECK(std::abs(r.value) <= 1e-6 * w.amplitude * (w.hi - w.lo));
  CHECK(find_stationary_points(h, w.lo, w.hi).empty());
}

TEST_CASE("self-consistency, linearity and phase-shift covariance") {
  SmoothWeight w1 = bump_weight(0.2, 1.7), w2 = bump_weight(0.5, 2.5, 0.6);
  PhaseFunction h = quadratic(300.0, 1.1);
  auto a = integrate_oscillatory(w1, h, 1e-8), b = integrate_oscillatory(w1, h, 5e-9);
  CHECK(std::abs(a.value - b.value) <= std::max(a.abs_err, b.abs_err) + 1e-15);

  SmoothWeight sum;
  sum.lo = 0.2;
  sum.hi = 2.5;
  sum.f = [=](double x) { return w1(x) + w2(x); };
  auto s = integrate_oscillatory(sum, h, 1e-11);
  auto r1 = integrate_oscillatory(w1, h, 1e-11), r2 = integrate_oscillatory(w2, h, 1e-11);
  CHECK(std::abs(s.value - r1.value - r2.value) <= s.abs_err + r1.abs_err + r2.abs_err + 1e-13);

  const double c = 0.3721;
  auto sh = integrate_oscillatory(w1, shifted(h, c), 1e-13);
  auto base = integrate_oscillatory(w1, h, 1e-13);
  CHECK(std::abs(sh.value - base.value * std::polar(1.0, c)) < 1e-12);
}

TEST_CASE("budget exhaustion carries a partial value") {
  OscOptions opt;
  opt.max_panels = 10;
  try {
    integrate_panels([](double x) -> cplx { return std::sqrt(x); }, 0.0, 1.0, nullptr, 1e-15, {}, opt);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(std::isfinite(e.abs_err));
  }
  CHECK_THROWS_AS(integrate_oscillatory(gaussian_window(1.0), quadratic(1.0), 0.0), DomainError);
}

TEST_CASE("find_stationary_points") {
  PhaseFunction h = quadratic(1.0, 1.0);
  auto r = find_stationary_points(h, 0.0, 3.0);
  REQUIRE(r.size() == 1);
  CHECK(std::abs(r[0] - 1.0) < 1e-12);
  PhaseFunction cubic;
  cubic.h = [](double x) { return (x - 1) * (x - 1) * (x - 1); };
  cubic.dh = [](double x) { return 3 * (x - 1) * (x - 1); };
  cubic.d2h = [](double x) { return 6 * (x - 1); };
  CHECK_THROWS_AS(find_stationary_points(cubic, 0.0, 2.0), DomainError);
}

TEST_CASE("stationary phase leading term") {
  auto w = gaussian_window(5.0);
  auto h = quadratic(1e4);
  auto r = integrate_oscillatory(w, h, 1e-13);
  cplx lead = stationary_phase_leading(w, h, 0.0);
  CHECK(std::abs(lead - r.value) / std::abs(r.value) <= 0.02);
  CHECK_THROWS_AS(stationary_phase_leading(w, h, 7.0), DomainError);

  // relative deviation scales like 1/Y
  auto dev = [&](double Y) {
    PhaseFunction q = quadratic(Y);
    q.h = [Y](double x) { return Y * (x * x + 0.2 * x * x * x); };
    q.dh = [Y](double x) { return Y * (2 * x + 0.6 * x * x); };
    q.d2h = [Y](double x) { return Y * (2 + 1.2 * x); };
    SmoothWeight b = bump_weight(-0.8, 1.0);
    auto o = integrate_oscillatory(b, q, 1e-13);
    return std::abs(stationary_phase_leading(b, q, 0.0) - o.value) / std::abs(o.value);
  };
  double ratio = dev(1000.0) / dev(2000.0);
  CHECK(ratio >= 2.0 / 1.5);
  CHECK(ratio <= 2.0 * 1.5);

  // odd weight about the stationary point
  SmoothWeight odd;
  odd.lo = -1.0;
  odd.hi = 1.0;
  odd.f = [](double x) -> cplx { return x * (1 - x * x); };
  CHECK(std::abs(stationary_phase_leading(odd, quadratic(50.0), 0.0)) == 0.0);
}

TEST_CASE("randomized stationary-phase suite (Y/X^2 >= 1e3)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0, 1);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    double Y = std::pow(10, 3 + U(rng)), a = (U(rng) < 0.5 ? -1 : 1) * (0.5 + 1.5 * U(rng)), b = 0.25 * (2 * U(rng) - 1);
    double x0 = 5 * U(rng), V = 0.5 + 0.5 * U(rng), c = x0 + 0.5 * V * (2 * U(rng) - 1);
    SmoothWeight w = bump_weight(c - V, c + V);
    PhaseFunction h;
    h.units = PhaseUnits::radians;
    h.h = [=](double x) { double t = x - x0; return Y * (a * t * t / 2 + b * t * t * t / 6); };
    h.dh = [=](double x) { double t = x - x0; return Y * (a * t + b * t * t / 2); };
    h.d2h = [=](double x) { return Y * (a + b * (x - x0)); };
    auto sp = find_stationary_points(h, w.lo, w.hi);
    REQUIRE(sp.size() == 1);
    auto o = integrate_oscillatory(w, h, 1e-12);
    worst = std::max(worst, std::abs(stationary_phase_leading(w, h, sp[0]) - o.value) / std::abs(o.value));
  }
  CHECK(worst <= 0.05);
}

TEST_CASE("decay certificate") {
  CHECK(decay_certificate(1.0, 10.0, 1.0, 10.0, 1.0, 1.0) == doctest::Approx(2e-3));
  CHECK(decay_certificate(2.0, 5.0, 2.0, 10.0, 4.0, 3.0) == doctest::Approx(3 * 2 * 2e-3));
  const double a3 = decay_certificate(1.0, 10.0, 1.0, 10.0, 1.0, 1.0, 3.0);
  const double a6 = decay_certificate(1.0, 10.0, 1.0, 10.0, 1.0, 1.0, 6.0);
  CHECK(a6 < a3);
}

TEST_CASE("derivative consistency of a sample phase") {
  PhaseFunction h;
  h.h = [](double x) { return std::sin(3 * x) + x * x; };
  h.dh = [](double x) { return 3 * std::cos(3 * x) + 2 * x; };
  h.d2h = [](double x) { return -9 * std::sin(3 * x) + 2; };
  CHECK(derivative_consistency(h, {0.3, 1.1, 2.7}, 1.0) < 1e-5);
  PhaseFunction bad = h;
  bad.d2h = [](double x) { return -9 * std::sin(3 * x) + 2.1; };
  CHECK(derivative_consistency(bad, {0.3, 1.1, 2.7}, 1.0) > 1e-3);
}

}
