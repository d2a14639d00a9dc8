#include "qmoment/kuznetsov.hpp"

#include <cmath>

namespace qm {

namespace {

// First u >= u0 (stepping by du, doubling) where logmod(u) < -cut.
double tail_end(const std::function<double(double)>& logmod, double u0, double cut) {
  double du = 0.25;
  double u = u0;
  for (int i = 0; i < 200; ++i) {
    if (logmod(u) < -cut) return u;
    u += du;
    du *= 1.5;
  }
  return u;
}

cplx cexp_parts(double re, double im) {
  double m = std::exp(re);
  return {m * std::cos(im), m * std::sin(im)};
}

OscIntegralResult seg(const std::function<cplx(double)>& f, double a, double b,
                      const std::function<double(double)>& freq, double tol,
                      std::vector<double> breaks = {}) {
  if (!(b > a)) return {};
  return integrate_panels(f, a, b, freq, tol, std::move(breaks));
}

}  // namespace

bool SpectralWindow::paper_regime() const {
  return M >= std::cbrt(T) && M <= std::sqrt(T);
}

double KernelEvalConfig::t_half_width(const SpectralWindow& win) const {
  if (t_cutoff > 0.0) return t_cutoff * win.M;
  return 8.0 * win.M * std::sqrt(std::log(1.0 / tol));
}

double h_gaussian(double t, const SpectralWindow& win) {
  double a = (t - win.T) / win.M, b = (t + win.T) / win.M;
  return std::exp(-a * a) + std::exp(-b * b);
}

double kernel_H(const SpectralWindow& win, const KernelEvalConfig& cfg) {
  const double c = cfg.t_half_width(win);
  const double lo = std::max(0.0, win.T - c), hi = win.T + c;
  auto f = [&](double t) -> cplx { return h_gaussian(t, win) * std::tanh(kPi * t) * t; };
  std::vector<double> br;
  for (double t = lo; t < hi; t += 0.5 * win.M) br.push_back(t);
  auto r = integrate_panels(f, lo, hi, nullptr, cfg.tol * win.M * win.T, br);
  return 2.0 / kPi * r.value.real();
}

cplx bessel_J_scaled(cplx nu, double x, double tol) {
  if (!(x > 0.0)) throw DomainError("bessel_J: x must be positive");
  if (nu.imag() < 0.0) return std::conj(bessel_J_scaled(std::conj(nu), x, tol));
  const double al = nu.real(), be = nu.imag();
  const double cut = 60.0;
  const double U1 = std::asinh(0.5 * kPi * be / x);
  cplx total = 0.0;
  // S1: w = u - i pi, u from infinity down to 0
  {
    auto lm = [&](double u) { return -x * std::sinh(u) - al * u - 1.5 * kPi * be; };
    double ue = tail_end(lm, 0.0, cut);
    auto f = [&](double u) { return cexp_parts(lm(u), -be * u + kPi * al); };
    auto fr = [&](double) { return be; };
    total -= seg(f, 0.0, ue, fr, tol).value;
  }
  // S2: w = i theta, theta from -pi to pi/2
  {
    auto f = [&](double th) {
      return cplx(0.0, 1.0) * cexp_parts(be * (th - 0.5 * kPi), x * std::sin(th) - al * th);
    };
    auto fr = [&](double th) { return x * std::cos(th) - al; };
    std::vector<double> br;
    if (std::abs(al) <= x) {
      double th0 = std::acos(al / x);
      br = {-th0, th0};
    }
    total += seg(f, -kPi, 0.5 * kPi, fr, tol, br).value;
  }
  // S3: w = u + i pi/2, u from 0 to U1
  if (U1 > 0.0) {
    auto f = [&](double u) {
      return cexp_parts(-al * u, x * std::cosh(u) - be * u - 0.5 * kPi * al);
    };
    auto fr = [&](double u) { return x * std::sinh(u) - be; };
    std::vector<double> br = {std::asinh(be / x)};
    total += seg(f, 0.0, U1, fr, tol, br).value;
  }
  // S4: w = U1 + i theta, theta from pi/2 to pi
  {
    const double sh = std::sinh(U1), ch = std::cosh(U1);
    auto f = [&](double th) {
      return cplx(0.0, 1.0) * cexp_parts(x * sh * std::cos(th) - al * U1 + be * (th - 0.5 * kPi),
                                         x * ch * std::sin(th) - al * th - be * U1);
    };
    auto fr = [&](double th) { return x * ch * std::cos(th) - al; };
    total += seg(f, 0.5 * kPi, kPi, fr, tol).value;
  }
  // S5: w = u + i pi, u from U1 to infinity
  {
    auto lm = [&](double u) { return -x * std::sinh(u) - al * u + 0.5 * kPi * be; };
    double ue = tail_end(lm, U1, cut);
    auto f = [&](double u) { return cexp_parts(lm(u), -be * u - kPi * al); };
    auto fr = [&](double) { return be; };
    total += seg(f, U1, ue, fr, tol).value;
  }
  return total / cplx(0.0, 2.0 * kPi);
}

cplx bessel_K_scaled(cplx nu, double x, double tol) {
  if (!(x > 0.0)) throw DomainError("bessel_K: x must be positive");
  if (nu.imag() < 0.0) return std::conj(bessel_K_scaled(std::conj(nu), x, tol));
  const double al = nu.real(), be = nu.imag();
  const double cut = 60.0;
  const double U1 = std::acosh(std::max(1.0, 0.5 * kPi * be / x));
  cplx total = 0.0;
  // real-axis tails, |u| >= U1
  {
    auto lmr = [&](double u) { return -x * std::cosh(u) + al * u + 0.5 * kPi * be; };
    auto lml = [&](double u) { return -x * std::cosh(u) - al * u + 0.5 * kPi * be; };
    double ur = tail_end(lmr, U1, cut), ul = tail_end(lml, U1, cut);
    auto fr_ = [&](double u) { return cexp_parts(lmr(u), be * u); };
    auto fl_ = [&](double u) { return cexp_parts(lml(u), -be * u); };
    auto fq = [&](double) { return be; };
    total += seg(fr_, U1, ur, fq, tol).value;
    total += seg(fl_, U1, ul, fq, tol).value;
  }
  if (U1 > 0.0) {
    const double sh = std::sinh(U1), ch = std::cosh(U1);
    // left riser w = -U1 + i theta, theta 0 -> pi/2; right riser w = U1 + i theta, pi/2 -> 0
    auto fl = [&](double th) {
      return cplx(0.0, 1.0) * cexp_parts(-x * ch * std::cos(th) - al * U1 - be * th + 0.5 * kPi * be,
                                         x * sh * std::sin(th) + al * th - be * U1);
    };
    auto fr = [&](double th) {
      return cplx(0.0, -1.0) * cexp_parts(-x * ch * std::cos(th) + al * U1 - be * th + 0.5 * kPi * be,
                                          -x * sh * std::sin(th) + al * th + be * U1);
    };
    auto fq1 = [&](double th) { return x * sh * std::cos(th) + al; };
    auto fq2 = [&](double th) { return -x * sh * std::cos(th) + al; };
    total += seg(fl, 0.0, 0.5 * kPi, fq1, tol).value;
    total += seg(fr, 0.0, 0.5 * kPi, fq2, tol).value;
    // top: w = u + i pi/2, u from -U1 to U1
    auto ft = [&](double u) { return cexp_parts(al * u, -x * std::sinh(u) + be * u + 0.5 * kPi * al); };
    auto fqt = [&](double u) { return be - x * std::cosh(u); };
    std::vector<double> br;
    if (be >= x) {
      double u0 = std::acosh(be / x);
      br = {-u0, u0};
    }
    total += seg(ft, -U1, U1, fqt, tol, br).value;
  } else {
    // U1 = 0: the whole path is the real axis; left and right tails already cover it.
  }
  return 0.5 * total;
}

cplx bessel_J_imag_order(cplx nu, double x) {
  double s = 0.5 * kPi * std::abs(nu.imag());
  return checked(bessel_J_scaled(nu, x) * std::exp(s), "bessel_J");
}

cplx bessel_K_imag_order(cplx nu, double x) {
  double s = 0.5 * kPi * std::abs(nu.imag());
  return checked(bessel_K_scaled(nu, x) * std::exp(-s), "bessel_K");
}

cplx bessel_J_schlafli(cplx nu, double x) {
  if (!(x > 0.0)) throw DomainError("bessel_J: x must be positive");
  auto f1 = [&](double th) { return std::cos(nu * th - x * std::sin(th)); };
  auto fq = [&](double th) { return std::abs(x * std::cos(th)) + std::abs(nu); };
  auto a = integrate_panels(f1, 0.0, kPi, fq, 1e-14);
  auto lm = [&](double u) { return -nu.real() * u - x * std::sinh(u); };
  double ue = tail_end(lm, 0.0, 60.0);
  auto f2 = [&](double u) { return std::exp(-nu * u - x * std::sinh(u)); };
  auto b = integrate_panels(f2, 0.0, ue, [&](double) { return std::abs(nu.imag()); }, 1e-14);
  return a.value / kPi - std::sin(nu * kPi) / kPi * b.value;
}

cplx hplus_integrand(double t, double x, const SpectralWindow& win) {
  double at = std::abs(t);
  cplx js = bessel_J_scaled(cplx(0.0, 2.0 * at), x);
  if (t < 0) js = std::conj(js);
  double sech_scaled = 2.0 / (1.0 + std::exp(-2.0 * kPi * at));  // e^{pi|t|} / cosh(pi t)
  return cplx(0.0, 2.0) * js * sech_scaled * t * h_gaussian(t, win);
}

cplx hminus_integrand(double t, double x, const SpectralWindow& win) {
  double at = std::abs(t);
  cplx ks = bessel_K_scaled(cplx(0.0, 2.0 * at), x);
  double sinh_scaled = 0.5 * (1.0 - std::exp(-2.0 * kPi * at)) * (t < 0 ? -1.0 : 1.0);  // sinh(pi t) e^{-pi|t|}
  return 4.0 / kPi * ks * sinh_scaled * t * h_gaussian(t, win);
}

namespace {

OscIntegralResult fold_t_integral(const std::function<cplx(double)>& g, double x, const SpectralWindow& win,
                                  const KernelEvalConfig& cfg, bool conj_even) {
  const double c = cfg.t_half_width(win);
  const double lo = std::max(0.0, win.T - c), hi = win.T + c;
  const double scale = win.M * win.T;
  const double negligible = 1e-6 * cfg.tol;
  auto f = [&](double t) -> cplx {
    if (h_gaussian(t, win) * std::max(t, 1.0) * std::sqrt(std::max(t, 1.0)) < negligible) return 0.0;
    cplx v = g(t);
    return conj_even ? cplx(2.0 * v.real(), 0.0) : 2.0 * v;
  };
  auto freq = [&](double t) {
    if (h_gaussian(t, win) * std::max(t, 1.0) < negligible) return 0.0;
    return 2.0 * std::asinh(2.0 * t / x) + 1.0;
  };
  std::vector<double> br;
  for (double t = lo; t < hi; t += 0.5 * win.M) br.push_back(t);
  try {
    return integrate_panels(f, lo, hi, freq, cfg.tol * scale, br);
  } catch (const BudgetExceeded& e) {
    OscIntegralResult r;
    r.value = e.partial;
    r.abs_err = e.abs_err;
    r.converged = false;
    return r;
  }
}

}  // namespace

OscIntegralResult kernel_Hplus(double x, const SpectralWindow& win, const KernelEvalConfig& cfg) {
  if (!(x > 0.0)) throw DomainError("kernel_Hplus: x must be positive");
  auto g = [&](double t) { return hplus_integrand(t, x, win); };
  return fold_t_integral(g, x, win, cfg, true);
}

OscIntegralResult kernel_Hminus(double x, const SpectralWindow& win, const KernelEvalConfig& cfg) {
  if (!(x > 0.0)) throw DomainError("kernel_Hminus: x must be positive");
  auto g = [&](double t) { return hminus_integrand(t, x, win); };
  return fold_t_integral(g, x, win, cfg, false);
}

}  // namespace qm
