#include "qmoment/complex_core.hpp"

#include <cmath>
#include <limits>

namespace qm {

namespace {

constexpr std::pair<long long, long long> kStirling[10] = {
    {1, 12},         {-1, 360},     {1, 1260},          {-1, 1680},
    {1, 1188},       {-691, 360360}, {1, 156},          {-3617, 122400},
    {43867, 244188}, {-174611, 125400}};

// B_{2k}, k = 1..10
constexpr double kB2k[10] = {1.0 / 6,       -1.0 / 30,     1.0 / 42,
                             -1.0 / 30,     5.0 / 66,      -691.0 / 2730,
                             7.0 / 6,       -3617.0 / 510, 43867.0 / 798,
                             -174611.0 / 330};

cplx stirling_series(cplx z, int J) {
  cplx w = 1.0 / z;
  cplx w2 = w * w;
  cplx sum = 0.0;
  cplx p = w;
  for (int k = 0; k < J; ++k) {
    sum += (double(kStirling[k].first) / double(kStirling[k].second)) * p;
    p *= w2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * kLog2Pi + sum;
}

bool is_gamma_pole(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace

cplx checked(cplx z, const char* where) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError(std::string(where) + ": non-finite value");
  return z;
}

double sinpi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0) r += 2.0;
  if (r > 1.0) r -= 2.0;  // r in (-1, 1]
  if (r == 0.0 || r == 1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == -0.5) return -1.0;
  if (r > 0.5) r = 1.0 - r;
  if (r < -0.5) r = -1.0 - r;
  return std::sin(kPi * r);
}

double cospi(double x) {
  double r = std::fmod(std::abs(x), 2.0);  // [0, 2)
  if (r == 0.5 || r == 1.5) return 0.0;
  if (r == 0.0) return 1.0;
  if (r == 1.0) return -1.0;
  if (r > 1.0) r = 2.0 - r;  // [0, 1]
  if (r > 0.5) return -std::sin(kPi * (r - 0.5));
  return std::sin(kPi * (0.5 - r));
}

cplx e_of(cplx x) {
  double mod = std::exp(-2.0 * kPi * x.imag());
  return {mod * cospi(2.0 * x.real()), mod * sinpi(2.0 * x.real())};
}

double pole_distance(cplx z) {
  if (z.real() > 0.5) return std::numeric_limits<double>::infinity();
  double n = std::round(z.real());
  if (n > 0) n = 0;
  return std::abs(z - n);
}

StirlingExpansion stirling_expansion(int J) {
  if (J < 1 || J > 10) throw DomainError("stirling_expansion: order must be in [1,10]");
  StirlingExpansion e;
  e.order = J;
  for (int k = 0; k < J; ++k) e.coefficients.push_back(kStirling[k]);
  return e;
}

cplx log_gamma(cplx z) {
  checked(z, "log_gamma");
  if (is_gamma_pole(z)) throw DomainError("log_gamma: pole at non-positive integer");
  cplx shift = 0.0;
  while (std::abs(z) < 16.0 || z.real() < 0.0) {
    shift += std::log(z);
    z += 1.0;
  }
  return stirling_series(z, 10) - shift;
}

cplx digamma(cplx z) {
  checked(z, "digamma");
  if (is_gamma_pole(z)) throw DomainError("digamma: pole at non-positive integer");
  cplx shift = 0.0;
  while (std::abs(z) < 16.0 || z.real() < 0.0) {
    shift += 1.0 / z;
    z += 1.0;
  }
  cplx w = 1.0 / z, w2 = w * w, p = w2;
  cplx r = std::log(z) - 0.5 * w;
  for (int k = 1; k <= 10; ++k) {
    r -= kB2k[k - 1] / (2.0 * k) * p;
    p *= w2;
  }
  return r - shift;
}

cplx stirling_log_gamma(cplx z, int J) {
  checked(z, "stirling_log_gamma");
  if (J < 1 || J > 10) throw DomainError("stirling_log_gamma: order must be in [1,10]");
  if (std::abs(z) < 2.0 || std::abs(std::arg(z)) > 0.75 * kPi) {
    double rem = std::numeric_limits<double>::infinity();
    if (!is_gamma_pole(z)) rem = std::abs(stirling_series(z, J) - log_gamma(z));
    throw PrecisionError("stirling_log_gamma: |z| < 2 or |arg z| > 3pi/4", rem);
  }
  return stirling_series(z, J);
}

cplx zeta(cplx s) {
  checked(s, "zeta");
  if (s == cplx(1.0, 0.0)) throw DomainError("zeta: pole at s = 1");
  if (s.real() < -1.0) {
    // functional equation
    cplx one_minus = 1.0 - s;
    cplx lg = log_gamma(one_minus);
    cplx sn = std::sin(0.5 * kPi * s);
    return std::exp(s * kLn2 + (s - 1.0) * kLogPi + lg) * sn * zeta(one_minus);
  }
  const int N = std::max(20, int(std::ceil(2.0 * std::abs(s.imag()))));
  KahanSum acc;
  for (int n = 1; n < N; ++n) acc.add(std::exp(-s * std::log(double(n))));
  const double logN = std::log(double(N));
  cplx Ns = std::exp(-s * logN);  // N^{-s}
  acc.add(Ns * double(N) / (s - 1.0));
  acc.add(0.5 * Ns);
  // sum_k B_2k/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
  cplx poch = s;
  cplx Npow = Ns / double(N);
  double fact = 2.0;
  for (int k = 1; k <= 10; ++k) {
    acc.add(kB2k[k - 1] / fact * poch * Npow);
    poch *= (s + double(2 * k - 1)) * (s + double(2 * k));
    Npow /= double(N) * double(N);
    fact *= double(2 * k + 1) * double(2 * k + 2);
  }
  return checked(acc.value(), "zeta");
}

cplx completed_zeta_theta(cplx s) {
  if (s == cplx(0.5, 0.0)) throw DomainError("theta: pole at s = 1/2");
  return checked(std::pow(cplx(kPi), -s) * std::exp(log_gamma(s)) * zeta(2.0 * s), "theta");
}

cplx completed_zeta_theta_logspace(cplx s) {
  if (s == cplx(0.5, 0.0)) throw DomainError("theta: pole at s = 1/2");
  return checked(std::exp(-s * kLogPi + log_gamma(s) + std::log(zeta(2.0 * s))), "theta");
}

cplx scattering_phi(cplx s) {
  auto ltheta = [](cplx u) { return -u * kLogPi + log_gamma(u) + std::log(zeta(2.0 * u)); };
  return checked(std::exp(ltheta(1.0 - s) - ltheta(s)), "scattering_phi");
}

}  // namespace qm
