#include <doctest.h>

#include <cmath>
#include <random>

#include "qmoment/complex_core.hpp"
#include "qmoment/mp_gamma.hpp"

using namespace qm;

namespace {

// log Gamma(z) modulo 2 pi i from a 40-digit MPFR evaluation of Gamma(z)
cplx mp_log_gamma(cplx z) {
  GammaTerm g;
  g.num = {z};
  cplx v = gamma_term_sum_mp({g}, 40).value;
  return std::log(v);
}

double arg_gap(cplx a, cplx b) {
  double d = std::remainder((a - b).imag(), 2.0 * kPi);
  return std::hypot((a - b).real(), d);
}

// Euler-Maclaurin with explicit N terms and p Bernoulli corrections
cplx em_zeta(cplx s, int N, int p) {
  static const double B[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730,
                             7.0 / 6, -3617.0 / 510, 43867.0 / 798, -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730};
  cplx sum = 0.0;
  for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(double(n)));
  const double lN = std::log(double(N));
  sum += std::exp((1.0 - s) * lN) / (s - 1.0) + 0.5 * std::exp(-s * lN);
  cplx rising = s;
  double fact = 2.0;
  for (int k = 1; k <= p; ++k) {
    sum += B[k - 1] / fact * rising * std::exp((-s - double(2 * k - 1)) * lN);
    rising *= (s + double(2 * k - 1)) * (s + double(2 * k));
    fact *= double(2 * k + 1) * double(2 * k + 2);
  }
  return sum;
}

}  // namespace

TEST_SUITE("complex-core") {

TEST_CASE("log_gamma special values") {
  CHECK(std::abs(log_gamma(1.0)) < 1e-15);
  CHECK(std::abs(log_gamma(0.5) - 0.5 * kLogPi) < 1e-14);
  CHECK(std::abs(log_gamma(0.5).real() - 0.5723649429247001) < 1e-14);
  CHECK_THROWS_AS(log_gamma(-3.0), DomainError);
  CHECK_THROWS_AS(log_gamma(cplx(NAN, 0.0)), DomainError);
}

TEST_CASE("log_gamma against MPFR Gamma") {
  for (cplx z : {cplx(1, 10), cplx(0.25, -3), cplx(-2.5, 7), cplx(12, 150), cplx(0.5, 400)})
    CHECK(arg_gap(log_gamma(z), mp_log_gamma(z)) < 1e-11 * std::max(1.0, std::abs(log_gamma(z))));
}

TEST_CASE("log_gamma recurrence on random strip points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(0.05, 40.0), im(-200.0, 200.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    cplx z(re(rng), im(rng));
    worst = std::max(worst, std::abs(log_gamma(z + 1.0) - log_gamma(z) - std::log(z)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("reflection and conjugate symmetry") {
  for (double x : {0.13, 0.5, 0.77, 1.4, -0.3})
    for (double y : {0.0, 0.7, 3.0, 11.0}) {
      cplx z(x, y);
      cplx lhs = std::exp(log_gamma(z) + log_gamma(1.0 - z));
      cplx rhs = kPi / std::sin(kPi * z);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs));
      CHECK(std::abs(log_gamma(std::conj(z)) - std::conj(log_gamma(z))) < 1e-13 * std::max(1.0, std::abs(log_gamma(z))));
    }
}

TEST_CASE("Stirling coefficients and truncation") {
  auto e = stirling_expansion(3);
  REQUIRE(e.coefficients.size() == 3);
  CHECK(e.coefficients[0] == std::pair<long long, long long>(1, 12));
  CHECK(e.coefficients[1] == std::pair<long long, long long>(-1, 360));
  CHECK(e.coefficients[2] == std::pair<long long, long long>(1, 1260));
  CHECK(std::abs(stirling_log_gamma(10.0, 3) - log_gamma(10.0)) <= 1e-7);
  CHECK(stirling_log_gamma(25.0, 3).imag() == 0.0);
  CHECK_THROWS_AS(stirling_log_gamma(1.0, 3), PrecisionError);
}

TEST_CASE("Stirling modulus factor on the critical line") {
  // |Gamma(1/2 + it)| = sqrt(2 pi) e^{-pi t / 2} (1 + O(1/t))
  const double t = 100.0;
  double l = stirling_log_gamma(cplx(0.5, t), 3).real();
  CHECK(std::abs(l - (0.5 * kLog2Pi - 0.5 * kPi * t)) < 1e-3);
  CHECK(std::abs(l - log_gamma(cplx(0.5, t)).real()) < 1e-12);
}

TEST_CASE("Stirling remainder decays like |z|^{-(2J+1)}") {
  for (int J : {1, 2}) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (double r = 5.0; r <= 60.0; r *= 1.3) {
      cplx z = std::polar(r, 0.3);
      double rem = std::abs(stirling_log_gamma(z, J) - stirling_log_gamma(z, 10));
      double lx = std::log(r), ly = std::log(rem);
      sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly, ++n;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(std::abs(slope + (2 * J + 1)) <= 0.2);
  }
}

TEST_CASE("zeta") {
  CHECK(std::abs(zeta(2.0) - kPi * kPi / 6.0) < 1e-14);
  CHECK(std::abs(zeta(0.0) + 0.5) < 1e-14);
  CHECK(std::abs(zeta(0.5) + 1.4603545088095868) < 1e-13);
  CHECK_THROWS_AS(zeta(1.0), DomainError);
  cplx a = zeta(cplx(0.5, 25.0));
  CHECK(std::abs(a - em_zeta(cplx(0.5, 25.0), 120, 12)) < 1e-10 * std::abs(a));
  CHECK(std::abs(a - em_zeta(cplx(0.5, 25.0), 300, 8)) < 1e-10 * std::abs(a));
  // completed xi(s) = xi(1-s) off the line
  auto xi = [](cplx s) { return std::exp(-0.5 * s * kLogPi + log_gamma(0.5 * s)) * zeta(s); };
  cplx s(0.8, 25.0);
  CHECK(std::abs(xi(s) - xi(1.0 - s)) <= 1e-10 * std::abs(xi(s)));
  CHECK(std::abs(zeta(cplx(-3.0, 4.0)) - std::exp(log_gamma(cplx(4.0, -4.0)) + cplx(-3.0, 4.0) * std::log(2.0 * kPi)) *
                                        std::sin(0.5 * kPi * cplx(-3.0, 4.0)) * zeta(cplx(4.0, -4.0)) / kPi) < 1e-10);
}

TEST_CASE("theta and scattering phi") {
  CHECK(std::abs(completed_zeta_theta(1.0) - kPi / 6.0) < 1e-14);
  CHECK(std::abs(std::abs(scattering_phi(cplx(0.5, 5.0))) - 1.0) < 1e-10);
  cplx s(0.7, 12.0);
  CHECK(std::abs(completed_zeta_theta(s) - completed_zeta_theta_logspace(s)) <=
        1e-12 * std::abs(completed_zeta_theta(s)));
}

TEST_CASE("sinpi, cospi, e(x), Kahan") {
  CHECK(sinpi(3.0) == 0.0);
  CHECK(cospi(2.5) == 0.0);
  CHECK(std::abs(e_of(0.25) - cplx(0, 1)) < 1e-15);
  KahanSum k;
  k.add(1.0);
  for (int i = 0; i < 1000; ++i) k.add(1e-16);
  CHECK(std::abs(k.value().real() - (1.0 + 1e-13)) < 1e-16);
  CHECK(pole_distance(cplx(-2.1, 0.0)) == doctest::Approx(0.1));
}

}
