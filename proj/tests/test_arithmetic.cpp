#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include "qmoment/arithmetic.hpp"
#include "qmoment/errors.hpp"

using namespace qm;

namespace {

std::string fixture(const std::string& name) { return std::string(QM_DATA_DIR) + "/" + name; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("qmoment_test_" + name)).string();
}

double kloosterman_direct(long a, long b, long c) {
  double s = 0.0;
  for (long d = 0; d < c; ++d) {
    if (std::gcd(d, c) != 1) continue;
    long db = 1;
    while ((d * db) % c != 1 % c) ++db;
    s += std::cos(2.0 * kPi * double(((a * d + b * db) % c + c) % c) / double(c));
  }
  return s;
}

int divisor_count(long n) {
  int k = 0;
  for (long d = 1; d <= n; ++d) k += n % d == 0;
  return k;
}

}  // namespace

TEST_SUITE("arithmetic-data") {

TEST_CASE("fixtures load and satisfy the Hecke relations") {
  HeckeEigenvalues h = load_maass_data(fixture("synthetic_hecke.txt"));
  CHECK(h.R == 10.0);
  CHECK(h.parity == Parity::even);
  CHECK(h.n_max() == 1000);
  CHECK_NOTHROW(validate_hecke(h, 1e-4));
  HeckeEigenvalues e = load_maass_data(fixture("eisenstein_t5.txt"));
  CHECK_NOTHROW(validate_hecke(e, 1e-4));
  for (long n : {1L, 2L, 12L, 97L, 360L})
    CHECK(std::abs(e(n) - eta_divisor(n, 5.0).real()) < 1e-12);
  CHECK_THROWS_AS(h(1001), RangeError);
}

TEST_CASE("corrupted fixture names the first failing pair") {
  try {
    load_maass_data(fixture("corrupted_hecke.txt"));
    FAIL("expected HeckeViolation");
  } catch (const HeckeViolation& v) {
    CHECK(v.m == 2);
    CHECK(v.n == 3);
    CHECK(v.d == 1);
  }
  HeckeEigenvalues h = load_maass_data(fixture("synthetic_hecke.txt"));
  h.lambda[6] += 0.01;
  CHECK_THROWS_AS(validate_hecke(h, 1e-4), HeckeViolation);
  CHECK_NOTHROW(validate_hecke(h, 0.1));
  h.lambda[1] = 1.5;
  try {
    validate_hecke(h, 1e-4);
    FAIL("expected HeckeViolation");
  } catch (const HeckeViolation& v) {
    CHECK(v.m == 1);
    CHECK(v.n == 1);
  }
}

TEST_CASE("write and reload is bit-exact") {
  HeckeEigenvalues h = load_maass_data(fixture("synthetic_hecke.txt"));
  h.parity = Parity::odd;
  h.R = 13.779751351890738;
  const std::string p = temp_path("roundtrip.txt");
  write_maass_data(h, p);
  HeckeEigenvalues g = load_maass_data(p);
  std::filesystem::remove(p);
  CHECK(g.R == h.R);
  CHECK(g.parity == Parity::odd);
  REQUIRE(g.lambda.size() == h.lambda.size());
  for (size_t i = 1; i < h.lambda.size(); ++i) REQUIRE(g.lambda[i] == h.lambda[i]);
}

TEST_CASE("malformed files report line and column") {
  const std::string p = temp_path("bad.txt");
  {
    std::ofstream f(p);
    f << "# R 10\n# parity even\n1 1\n2 0.5x\n";
  }
  try {
    load_maass_data(p);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 4);
    CHECK(e.column > 1);
  }
  {
    std::ofstream f(p);
    f << "# parity even\n1 1\n";
  }
  CHECK_THROWS_AS(load_maass_data(p), ParseError);
  std::filesystem::remove(p);
  CHECK_THROWS_AS(load_maass_data(temp_path("does_not_exist.txt")), DomainError);
}

TEST_CASE("symmetric square coefficients") {
  HeckeEigenvalues h = load_maass_data(fixture("synthetic_hecke.txt"));
  GL3Coefficients A = sym_square_coeffs(h, 10, 60);
  const double l2 = h(2);
  CHECK(std::abs(A(1, 4) - (std::pow(l2, 4) - 3 * l2 * l2 + 2)) < 1e-10);
  CHECK(std::abs(A(1, 2) - h(4)) < 1e-12);
  CHECK(std::abs(A(3, 1) - A(1, 3)) < 1e-12);
  CHECK(gl3_hecke_defect(A) < 1e-8);
  CHECK_THROWS_AS(A(11, 1), RangeError);

  GL3Coefficients S = surrogate_gl3_eisenstein(0.0, 8, 64);
  CHECK(std::abs(S(1, 4) - 6.0) < 1e-12);
  CHECK(std::abs(S(1, 12) - 18.0) < 1e-12);
  CHECK(S.polar_caveat);
  CHECK(gl3_hecke_defect(surrogate_gl3_eisenstein(3.0, 12, 144)) < 1e-10);
}

TEST_CASE("Rankin-Selberg partial sums") {
  GL3Coefficients A = surrogate_gl3_eisenstein(2.0, 10, 100);
  CHECK(rs_partial_sum(A, 0.5) == 0.0);
  CHECK(rs_partial_sum(A, 1.0) == doctest::Approx(1.0));
  double direct = 0.0;
  for (long m = 1; m * m <= 100; ++m)
    for (long n = 1; m * m * n <= 100; ++n) direct += std::norm(A(m, n));
  CHECK(rs_partial_sum(A, 100.0) == doctest::Approx(direct).epsilon(1e-13));
  CHECK_THROWS_AS(rs_partial_sum(A, 1e4), RangeError);
}

TEST_CASE("divisor function eta_t") {
  CHECK(std::abs(eta_divisor(1, 3.0) - 1.0) < 1e-15);
  CHECK(std::abs(eta_divisor(7, 3.0) - 2.0 * std::cos(3.0 * std::log(7.0))) < 1e-14);
  CHECK(std::abs(eta_divisor(-12, 2.0) - eta_divisor(12, 2.0)) == 0.0);
  CHECK(std::abs(eta_divisor(15, 2.0) - eta_divisor(3, 2.0) * eta_divisor(5, 2.0)) < 1e-13);
  CHECK(std::abs(eta_divisor(12, 0.0) - 6.0) < 1e-13);
  CHECK_THROWS_AS(eta_divisor(0, 1.0), DomainError);
}

TEST_CASE("Kloosterman sums") {
  CHECK(kloosterman(1, 1, 2) == doctest::Approx(1.0));
  CHECK(kloosterman(1, 1, 3) == doctest::Approx(-1.0));
  CHECK(kloosterman(0, 0, 7) == doctest::Approx(6.0));
  CHECK(kloosterman(5, 3, 1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(kloosterman(1, 1, 0), DomainError);
  CHECK_THROWS_AS(kloosterman(1, 1, 200000), RangeError);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> ab(-50, 50), cc(1, 60);
  for (int i = 0; i < 50; ++i) {
    const long a = ab(rng), b = ab(rng), c = cc(rng);
    const double s = kloosterman(a, b, c);
    CHECK(std::abs(s - kloosterman_direct(a, b, c)) < 1e-9);
    CHECK(std::abs(s - kloosterman(b, a, c)) < 1e-9);
    const long g = std::gcd(std::gcd(std::labs(a), std::labs(b)), c);
    CHECK(std::abs(s) <= divisor_count(c) * std::sqrt(double(c) * double(g)) + 1e-9);
  }
  // twisted multiplicativity
  for (auto [c1, c2] : {std::pair{5L, 7L}, std::pair{8L, 9L}, std::pair{11L, 4L}}) {
    const long i2 = mod_inverse(c2, c1), i1 = mod_inverse(c1, c2);
    for (long a = 1; a <= 5; ++a) {
      const long b = 3 * a + 1;
      CHECK(std::abs(kloosterman(a, b, c1 * c2) -
                     kloosterman(a * i2 % c1, b * i2 % c1, c1) * kloosterman(a * i1 % c2, b * i1 % c2, c2)) < 1e-9);
    }
  }
}

TEST_CASE("Moebius and modular inverse") {
  CHECK(moebius(1) == 1);
  CHECK(moebius(30) == -1);
  CHECK(moebius(12) == 0);
  CHECK(mod_inverse(3, 7) == 5);
  CHECK_THROWS_AS(mod_inverse(4, 8), DomainError);
  for (long n = 2; n <= 200; ++n) {
    int s = 0;
    for (long d = 1; d <= n; ++d)
      if (n % d == 0) s += moebius(d);
    REQUIRE(s == 0);
  }
}

}
