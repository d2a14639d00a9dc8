#include "qmoment/phase_catalog.hpp"

#include <cmath>
#include <limits>

#include "qmoment/errors.hpp"

namespace qm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kE = 2.71828182845904523536028747135266250;

double need(const PhaseParams& p, const std::string& phase, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw DomainError(phase + ": missing parameter '" + key + "'");
  if (!std::isfinite(it->second)) throw DomainError(phase + ": parameter '" + key + "' is not finite");
  return it->second;
}

int need_sign(const PhaseParams& p, const std::string& phase, const std::string& key) {
  double s = need(p, phase, key);
  if (s != 1.0 && s != -1.0) throw DomainError(phase + ": '" + key + "' must be +1 or -1");
  return int(s);
}

void require(bool ok, const std::string& phase, const std::string& constraint) {
  if (!ok) throw RegimeError(phase + ": outside validity region, violated: " + constraint);
}

PhaseCatalogEntry h1(const PhaseParams& p) {
  const double b = need(p, "h1", "b"), tau = need(p, "h1", "tau");
  require(b != 0.0, "h1", "b != 0");
  require(tau != 0.0, "h1", "tau != 0");
  PhaseCatalogEntry e;
  e.phase.units = PhaseUnits::cycles;
  e.phase.h = [=](double x) { return b * x + tau / kPi * std::log(x); };
  e.phase.dh = [=](double x) { return b + tau / (kPi * x); };
  e.phase.d2h = [=](double x) { return -tau / (kPi * x * x); };
  e.lo = 0.0;
  e.hi = kInf;
  if ((tau > 0) != (b > 0)) {
    e.stationary_closed_form = [=] { return -tau / (kPi * b); };
    e.value_at_stationary = [=] { return tau / kPi * std::log(-tau / (kPi * kE * b)); };
  }
  return e;
}

PhaseCatalogEntry h2(const PhaseParams& p) {
  const double b = need(p, "h2", "b"), T = need(p, "h2", "T"), N = need(p, "h2", "N"), y = need(p, "h2", "y");
  const int s = need_sign(p, "h2", "sign");
  require(b != 0.0, "h2", "b != 0");
  require((b > 0 ? 1 : -1) == s, "h2", "sgn(b) = sign");
  require(T >= 0.0, "h2", "T >= 0");
  require(N > 0.0 && y > 0.0, "h2", "N > 0, y > 0");
  const double ab = std::abs(b);
  PhaseCatalogEntry e;
  e.phase.units = PhaseUnits::radians;
  e.phase.h = [=](double x) {
    double q = ab * (b * b * x * x - 4.0 * T * T) / (8.0 * kPi * kE * N * y * x);
    return b * x * std::log(q) - 2.0 * T * std::log((ab * x - s * 2.0 * T) / (ab * x + s * 2.0 * T));
  };
  e.phase.dh = [=](double x) {
    return b * std::log(ab * (b * b * x * x - 4.0 * T * T) / (8.0 * kPi * N * y * x));
  };
  e.phase.d2h = [=](double x) {
    const double c = 2.0 * T / ab;
    return b * (1.0 / (x - c) + 1.0 / (x + c) - 1.0 / x);
  };
  e.lo = 2.0 * T / ab;
  e.hi = kInf;
  auto xi0 = [=] {
    const double a = 4.0 * kPi * N * y / (ab * ab * ab);
    return a + std::sqrt(a * a + 4.0 * T * T / (b * b));
  };
  e.stationary_closed_form = xi0;
  e.value_at_stationary = [=] {
    const double x = xi0();
    return -b * x - 2.0 * T * std::log((ab * x - s * 2.0 * T) / (ab * x + s * 2.0 * T));
  };
  return e;
}

PhaseCatalogEntry h3(const PhaseParams& p) {
  const double n = need(p, "h3", "n"), r = need(p, "h3", "r"), M = need(p, "h3", "M"), Xi = need(p, "h3", "Xi"),
               T = need(p, "h3", "T");
  const int s = need_sign(p, "h3", "sign"), s2 = need_sign(p, "h3", "sigma2");
  require(n > 0.0, "h3", "n > 0");
  require(r >= 1.0, "h3", "r >= 1");
  require(M > 0.0 && Xi > 0.0, "h3", "M > 0, Xi > 0");
  require(T > 0.0, "h3", "T > 0");
  const double a = 3.0 * n / (r * M * M) * Xi * Xi, c = T / (kPi * M) * Xi;
  PhaseCatalogEntry e;
  e.phase.units = PhaseUnits::cycles;
  e.phase.h = [=](double x) { return s * a * x * x + s2 * c * x; };
  e.phase.dh = [=](double x) { return 2.0 * s * a * x + s2 * c; };
  e.phase.d2h = [=](double) { return 2.0 * s * a; };
  e.lo = -kInf;
  e.hi = kInf;
  if (s2 == -s) {
    e.stationary_closed_form = [=] { return r * T * M / (6.0 * kPi * n * Xi); };
    e.value_at_stationary = [=] { return -s * r * T * T / (12.0 * kPi * kPi * n); };
  }
  return e;
}

PhaseCatalogEntry h4(const PhaseParams& p) {
  const double T = need(p, "h4", "T"), r = need(p, "h4", "r"), N = need(p, "h4", "N"), tau = need(p, "h4", "tau");
  const int s = need_sign(p, "h4", "sign");
  require(T > 0.0 && N > 0.0 && r >= 1.0, "h4", "T > 0, N > 0, r >= 1");
  require(tau != 0.0, "h4", "tau != 0");
  const double K = 37.0 * T * T * r / (12.0 * kPi * kPi * std::sqrt(N));
  PhaseCatalogEntry e;
  e.phase.units = PhaseUnits::cycles;
  e.phase.h = [=](double x) { return -s * K * x - tau / (2.0 * kPi) * std::log(x); };
  e.phase.dh = [=](double x) { return -s * K - tau / (2.0 * kPi * x); };
  e.phase.d2h = [=](double x) { return tau / (2.0 * kPi * x * x); };
  e.lo = 0.0;
  e.hi = kInf;
  if ((tau > 0 ? 1 : -1) == -s) {
    e.stationary_closed_form = [=] { return -s * 6.0 * kPi * std::sqrt(N) * tau / (37.0 * T * T * r); };
    e.value_at_stationary = [=] {
      return tau / (2.0 * kPi) * std::log(kE * 37.0 * T * T * r / (6.0 * kPi * std::sqrt(N) * std::abs(tau)));
    };
  }
  return e;
}

PhaseCatalogEntry h5(const PhaseParams& p) {
  const double T = need(p, "h5", "T"), r = need(p, "h5", "r"), N = need(p, "h5", "N"), n = need(p, "h5", "n");
  const int s = need_sign(p, "h5", "sign");
  require(T > 0.0 && N > 0.0 && r >= 1.0, "h5", "T > 0, N > 0, r >= 1");
  require(n > 0.0, "h5", "n > 0");
  const double Y = 37.0 * T * T * r / (6.0 * kPi * std::sqrt(N));
  const double C = 8.0 * kPi * kPi * kPi * std::sqrt(N) * n;
  PhaseCatalogEntry e;
  e.phase.units = PhaseUnits::radians;
  e.phase.h = [=](double x) {
    const double u = Y * x;
    return -s * u * std::log(kE / x) - s * u * std::log(kPi * kPi * kPi * std::sqrt(N) * n) +
           (s * u - 2.0 * T) * std::log((2.0 * T - s * u) / (2.0 * kE)) +
           (s * u + 2.0 * T) * std::log((2.0 * T + s * u) / (2.0 * kE)) + s * u * std::log(u / (2.0 * kE));
  };
  e.phase.dh = [=](double x) {
    return s * Y * std::log(Y * x * x * (4.0 * T * T - Y * Y * x * x) / C);
  };
  e.phase.d2h = [=](double x) {
    return s * Y * (2.0 / x - 2.0 * Y * Y * x / (4.0 * T * T - Y * Y * x * x));
  };
  e.lo = 0.0;
  e.hi = 2.0 * T / Y;
  // Y^3 u^2 - 4 T^2 Y u + C = 0 in u = xi^2; smaller root
  const double disc = 16.0 * std::pow(T, 4) * Y * Y - 4.0 * std::pow(Y, 3) * C;
  if (disc >= 0.0) {
    auto xi0 = [=] {
      const double q = 4.0 * T * T * Y + std::sqrt(disc);
      return std::sqrt(2.0 * C / q);
    };
    e.stationary_closed_form = xi0;
    auto h = e.phase.h;
    e.value_at_stationary = [=] { return h(xi0()); };
  }
  return e;
}

PhaseCatalogEntry h6(const PhaseParams& p) {
  const double U = need(p, "h6", "Upsilon"), T = need(p, "h6", "T"), N = need(p, "h6", "N"),
               xi = need(p, "h6", "xi"), x = need(p, "h6", "x");
  const int s = need_sign(p, "h6", "sign");
  require(T > 0.0, "h6", "T > 0");
  require(U > 0.0 && U <= T, "h6", "0 < Upsilon <= T");
  require(N > 0.0 && xi > 0.0 && x > 0.0, "h6", "N, xi, x > 0");
  const double L = std::log(N * xi * x);
  const double c8 = 8.0 * kPi * kPi * kPi;
  PhaseCatalogEntry e;
  e.phase.units = PhaseUnits::radians;
  e.phase.h = [=](double t) {
    const double u = U * t;
    return -(2.0 * T - s * u) * std::log((2.0 * T - s * u) / kE) -
           (-s * u - 2.0 * T) * std::log((2.0 * T + s * u) / kE) + s * u * std::log(u / (c8 * kE)) - s * u * L;
  };
  e.phase.dh = [=](double t) {
    const double u = U * t;
    return s * U * (std::log(u * (4.0 * T * T - u * u) / c8) - L);
  };
  e.phase.d2h = [=](double t) {
    const double u = U * t;
    return s * U * (1.0 / t - 2.0 * U * u / (4.0 * T * T - u * u));
  };
  e.lo = 0.0;
  e.hi = 2.0 * T / U;
  const double e0 = 2.0 * kPi * kPi * kPi * N * xi * x / (T * T * U);
  e.stationary_expansion = [=] {
    const double k = U * U / (4.0 * T * T);
    return e0 + k * std::pow(e0, 3) + 3.0 * k * k * std::pow(e0, 5);
  };
  e.expansion_error_scale = 4.0 * (3.0 / 16.0) * std::pow(U / T, 6) * std::pow(e0, 7);
  return e;
}

}  // namespace

PhaseCatalogEntry phase_catalog(const std::string& name, const PhaseParams& params) {
  PhaseCatalogEntry e;
  if (name == "h1") e = h1(params);
  else if (name == "h2") e = h2(params);
  else if (name == "h3") e = h3(params);
  else if (name == "h4") e = h4(params);
  else if (name == "h5") e = h5(params);
  else if (name == "h6") e = h6(params);
  else throw DomainError("phase_catalog: unknown phase '" + name + "'");
  e.name = name;
  e.params = params;
  return e;
}

}  // namespace qm
