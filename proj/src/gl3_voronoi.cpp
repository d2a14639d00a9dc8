#include "qmoment/gl3_voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

#include "qmoment/mp_gamma.hpp"

namespace qm {

namespace {

// log(e^{la} + c) for c > 0
cplx log_add(cplx la, double c) {
  if (!std::isfinite(la.real()) && la.real() < 0) return std::log(c);
  const double lc = std::log(c);
  if (la.real() >= lc) return la + std::log(1.0 + c * std::exp(-la));
  return lc + std::log(1.0 + std::exp(la - lc));
}

}  // namespace

cplx sym2_gamma_ratio_log(cplx s, double T) {
  ArchimedeanFactor a = arch_sym2(T);
  return a.log_value(1.0 - s) - a.log_value(s);
}

cplx G_pm_ratio(cplx s, double T, int sign) {
  checked(s, "G_pm_ratio");
  if (sign != 1 && sign != -1) throw DomainError("G_pm_ratio: sign must be +-1");
  const cplx i2T(0.0, 2.0 * T);
  GammaTerm a, b;
  a.pi_exp = -1.5 + 3.0 * s;
  a.num = {(1.0 - s - i2T) / 2.0, (1.0 - s) / 2.0, (1.0 - s + i2T) / 2.0};
  a.den = {(s - i2T) / 2.0, s / 2.0, (s + i2T) / 2.0};
  b.coeff = cplx(0.0, double(sign));  // +- i^{-3}
  b.pi_exp = -1.5 + 3.0 * s;
  b.num = {(2.0 - s - i2T) / 2.0, (2.0 - s) / 2.0, (2.0 - s + i2T) / 2.0};
  b.den = {(1.0 + s - i2T) / 2.0, (1.0 + s) / 2.0, (1.0 + s + i2T) / 2.0};
  for (const auto* t : {&a, &b})
    for (cplx z : t->num)
      if (pole_distance(z) < 1e-6) throw DomainError("G_pm_ratio: too close to a Gamma pole");
  return checked(gamma_term_sum_adaptive({a, b}, 1e-15).value, "G_pm_ratio");
}

GClosedValue G_pm_closed(cplx s, double T, int sign) {
  checked(s, "G_pm_closed");
  if (sign != 1 && sign != -1) throw DomainError("G_pm_closed: sign must be +-1");
  const double eps = sign;
  const cplx i2T(0.0, 2.0 * T);
  for (cplx z : {1.0 - s + i2T, 1.0 - s, 1.0 - s - i2T})
    if (pole_distance(z) < 1e-6) throw DomainError("G_pm_closed: too close to a Gamma pole");
  cplx L = cplx(0.0, 0.5 * kPi * eps) + (-3.0 + 3.0 * s) * kLogPi + (3.0 * s - 2.0) * kLn2 +
           log_gamma(1.0 - s + i2T) + log_gamma(1.0 - s) + log_gamma(1.0 - s - i2T);
  L += cplx(0.0, -0.5 * kPi * eps) * s;  // e(-+ s/4)
  // e(+-s) + e^{2 pi T} = 2 e^{pi i eps s + pi T} cosh(x + i pi eps sigma), x = -pi(eps tau + T)
  const double sg = s.real(), tau = s.imag();
  const double x = -kPi * (eps * tau + T);
  const double ax = std::abs(x);
  const double em = std::exp(-2.0 * ax);
  const double re = (1.0 + em) * cospi(eps * sg);
  const double im = (x < 0 ? -1.0 : 1.0) * (1.0 - em) * sinpi(eps * sg);
  cplx logA(-std::numeric_limits<double>::infinity(), 0.0);
  if (re != 0.0 || im != 0.0) logA = cplx(0.0, kPi * eps) * s + kPi * T + ax + std::log(cplx(re, im));
  cplx logD = log_add(logA, 1.0 + std::exp(-2.0 * kPi * T));
  GClosedValue out;
  out.log_value = L + logD;
  out.overflow_risk = out.log_value.real() > 700.0 || 2.0 * kPi * std::abs(T) > 1400.0;
  if (out.log_value.real() > 709.0)
    out.value = cplx(std::numeric_limits<double>::infinity(), 0.0);
  else
    out.value = std::exp(out.log_value);
  return out;
}

cplx mellin(const SmoothWeight& w, cplx s, double tol) {
  if (!(w.lo > 0.0)) throw DomainError("mellin: support must lie in (0, inf)");
  const double tau = s.imag();
  const double sm1 = s.real() - 1.0;
  SmoothWeight g = w;
  g.f = [&w, sm1](double x) { return w.f(x) * std::pow(x, sm1); };
  PhaseFunction ph;
  ph.units = PhaseUnits::radians;
  ph.h = [tau](double x) { return tau * std::log(x); };
  ph.dh = [tau](double x) { return tau / x; };
  ph.d2h = [tau](double x) { return -tau / (x * x); };
  return integrate_oscillatory(g, ph, tol).value;
}

MellinLine::MellinLine(const SmoothWeight& w, double sigma, double tau0, double dtau, int count, double tol) {
  if (!(w.lo > 0.0)) throw DomainError("MellinLine: support must lie in (0, inf)");
  const double ul = std::log(w.lo), uh = std::log(w.hi);
  const double uc = 0.5 * (ul + uh);
  const double tmax = std::max(std::abs(tau0), std::abs(tau0 + (count - 1) * dtau));
  // trapezoid rule in u = log x; w vanishes to all orders at both ends
  std::vector<double> u;
  std::vector<cplx> c;
  auto build = [&](int P) {
    u.clear();
    c.clear();
    const double h = (uh - ul) / P;
    for (int k = 1; k < P; ++k) {
      double uk = ul + k * h;
      cplx f = w(std::exp(uk));
      if (f == 0.0) continue;
      u.push_back(uk - uc);
      c.push_back(h * f * std::exp(sigma * uk));
    }
  };
  auto direct = [&](double tau) {
    KahanSum s;
    for (size_t k = 0; k < u.size(); ++k) s.add(c[k] * std::polar(1.0, tau * u[k]));
    return s.value();
  };
  std::vector<double> probes = {tau0, tau0 + (count - 1) * dtau, tau0 + 0.5 * (count - 1) * dtau,
                                tau0 + 0.25 * (count - 1) * dtau, tau0 + 0.75 * (count - 1) * dtau};
  int P = std::max(16, int(std::ceil((uh - ul) * (2.0 * tmax + 100.0) / (2.0 * kPi))));
  build(P);
  std::vector<cplx> prev;
  for (double t : probes) prev.push_back(direct(t));
  double last_diff = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 12; ++iter) {
    int P2 = 2 * P;
    build(P2);
    double l1 = 0.0;
    for (cplx z : c) l1 += std::abs(z);
    std::vector<cplx> cur;
    double diff = 0.0;
    for (size_t i = 0; i < probes.size(); ++i) {
      cur.push_back(direct(probes[i]));
      diff = std::max(diff, std::abs(cur[i] - prev[i]));
    }
    P = P2;
    prev = cur;
    if (diff <= tol * std::max(l1, 1e-300)) break;
    // rounding floor: refining no longer helps
    if (iter >= 2 && diff > 0.25 * last_diff && diff <= 1e-10 * l1) break;
    last_diff = diff;
  }
  nodes_ = int(u.size());
  vals_.assign(count, 0.0);
  const size_t K = u.size();
  std::vector<cplx> cur(K), step(K);
  for (size_t k = 0; k < K; ++k) step[k] = std::polar(1.0, dtau * u[k]);
  for (int j = 0; j < count; ++j) {
    const double tau = tau0 + j * dtau;
    if (j % 256 == 0)
      for (size_t k = 0; k < K; ++k) cur[k] = c[k] * std::polar(1.0, tau * u[k]);
    cplx acc = 0.0;
    for (size_t k = 0; k < K; ++k) {
      acc += cur[k];
      cur[k] *= step[k];
    }
    vals_[j] = acc * std::polar(1.0, tau * uc);
  }
}

VerticalLineTransform::VerticalLineTransform(const SmoothWeight& w, std::function<cplx(cplx)> log_kernel, double T,
                                             double power, const VerticalLineConfig& cfg)
    : sigma_(cfg.sigma), dtau_(cfg.dtau), power_(power) {
  auto envelope = [&](double tau) {
    MellinLine m(w, sigma_, tau, 1.0, 1);
    cplx v = m.values()[0];
    if (v == 0.0) return 0.0;
    return std::exp(log_kernel(cplx(sigma_, tau)).real()) * std::abs(v);
  };
  double H = cfg.height;
  if (!(H > 0.0)) {
    // smallest H0 * 1.6^k beyond which sampled envelope stays under tol/100 of its peak
    const double H0 = std::max(200.0, 10.0 * T);
    std::vector<double> hs;
    for (double h = H0; h <= cfg.max_height; h *= 1.6) hs.push_back(h);
    if (hs.empty()) hs.push_back(cfg.max_height);
    std::vector<double> env_at(hs.size(), 0.0);
    double peak = 0.0;
    for (int k = -16; k <= 16; ++k) peak = std::max(peak, envelope(H0 * k / 16.0));
    for (size_t i = 0; i < hs.size(); ++i) {
      for (double f : {-1.0, -0.8, 0.8, 1.0}) env_at[i] = std::max(env_at[i], envelope(f * hs[i]));
      if (i > 0) peak = std::max(peak, env_at[i - 1]);
    }
    H = hs.back();
    for (size_t i = 0; i < hs.size(); ++i) {
      bool ok = true;
      for (size_t j = i; j < hs.size(); ++j) ok = ok && env_at[j] <= 1e-2 * cfg.tol * peak;
      if (ok) {
        H = hs[i];
        break;
      }
    }
  }
  const int half = int(std::ceil(H / dtau_));
  const int count = 2 * half + 1;
  tau0_ = -half * dtau_;
  height_ = half * dtau_;
  MellinLine ml(w, sigma_, tau0_, dtau_, count);
  prod_.assign(count, 0.0);
  double l1 = 0.0, band = 0.0;
  for (int j = 0; j < count; ++j) {
    const double tau = tau0_ + j * dtau_;
    cplx m = ml.values()[j];
    if (m != 0.0) {
      cplx lk = log_kernel(cplx(sigma_, tau));
      if (std::isfinite(lk.real()))
        prod_[j] = std::exp(lk + std::log(m)) * (dtau_ / (2.0 * kPi));
      else if (lk.real() > 0)
        throw RangeError("vertical line transform: kernel overflow");
    }
    double a = std::abs(prod_[j]);
    l1 += a;
    if (std::abs(tau) >= 0.9 * height_) band += a;
  }
  tail_ = 3.0 * band;
  trunc_ok_ = tail_ <= 0.1 * cfg.tol * l1 || l1 == 0.0;
}

TransformResult VerticalLineTransform::operator()(double y) const {
  if (!(y > 0.0)) throw DomainError("vertical line transform: y must be positive");
  const double ly = std::log(y);
  KahanSum full, even;
  cplx z = std::polar(1.0, tau0_ * ly);
  const cplx step = std::polar(1.0, dtau_ * ly);
  for (size_t j = 0; j < prod_.size(); ++j) {
    if (j % 256 == 0) z = std::polar(1.0, (tau0_ + double(j) * dtau_) * ly);
    cplx t = prod_[j] * z;
    full.add(t);
    if (j % 2 == 0) even.add(2.0 * t);
    z *= step;
  }
  const double scale = std::exp((sigma_ + power_) * ly);
  TransformResult r;
  r.value = checked(full.value() * scale, "vertical line transform");
  r.abs_err = (std::abs(full.value() - even.value()) + tail_) * scale;
  r.height = height_;
  r.truncation_ok = trunc_ok_;
  return r;
}

VerticalLineTransform hankel_table(const SmoothWeight& w, int sign, double T, const VerticalLineConfig& cfg) {
  auto k = [T, sign](cplx s) { return G_pm_closed(s, T, sign).log_value; };
  return VerticalLineTransform(w, k, T, -1.0, cfg);
}

TransformResult hankel_W(double y, const SmoothWeight& w, int sign, double T, const VerticalLineConfig& cfg) {
  return hankel_table(w, sign, T, cfg)(y);
}

VerticalLineTransform fe_table(const SmoothWeight& w, double T, const VerticalLineConfig& cfg) {
  if (!(cfg.sigma < 0.75)) throw DomainError("fe_transform_W: sigma must be < 3/4");
  auto k = [T](cplx s) { return sym2_gamma_ratio_log(s, T); };
  return VerticalLineTransform(w, k, T, 0.0, cfg);
}

TransformResult fe_transform_W(double n, const SmoothWeight& w, double T, const VerticalLineConfig& cfg) {
  if (!(n >= 1.0)) throw DomainError("fe_transform_W: n must be >= 1");
  return fe_table(w, T, cfg)(n);
}

double VoronoiSetup::B() const { return std::sqrt(N) / r; }

double lemma_w_xi0(double y, const VoronoiSetup& v) {
  const double ab = std::abs(v.b);
  const double a = 4.0 * kPi * v.N * y / (ab * ab * ab);
  return a + std::sqrt(a * a + 4.0 * v.T * v.T / (v.b * v.b));
}

AsymptoticW asymptotic_W_main(double y, const VoronoiSetup& v) {
  AsymptoticW out;
  const double B = v.B();
  const double ab = std::abs(v.b);
  out.modulus_scale = std::sqrt(v.N / y);
  out.xi0 = lemma_w_xi0(y, v);
  const double sg = v.sign;
  const double num = ab * out.xi0 - sg * 2.0 * v.T, den = ab * out.xi0 + sg * 2.0 * v.T;
  if (num > 0 && den > 0) out.phase = -v.b * out.xi0 - 2.0 * v.T * std::log(num / den);
  const double ny = v.N * y;
  out.valid = B >= 1.0 && (v.b > 0 ? 1 : -1) == v.sign && ab >= 0.25 * B && ab <= 4.0 * B &&
              ny >= B * B * B / 64.0 && ny <= 64.0 * B * B * B && num > 0 && den > 0;
  return out;
}

SmoothWeight lemma_w_weight(double N, double b) {
  SmoothWeight w;
  w.lo = N;
  w.hi = 2.0 * N;
  w.X = 1.0;
  w.amplitude = 1.0;
  w.f = [N, b](double x) -> cplx {
    double u = 2.0 * (x / N - 1.0) - 1.0;
    if (std::abs(u) >= 1.0) return 0.0;
    double v = std::exp(1.0 - 1.0 / (1.0 - u * u));
    return v * std::polar(1.0, 2.0 * kPi * b * std::sqrt(x / N));
  };
  return w;
}

std::pair<double, double> lemma_w_range(const VoronoiSetup& v, double x0, double x1) {
  const double ab = std::abs(v.b);
  auto y = [&](double xi) { return ab * (v.b * v.b * xi * xi - 4.0 * v.T * v.T) / (8.0 * kPi * v.N * xi); };
  return {y(kPi * std::sqrt(x0)), y(kPi * std::sqrt(x1))};
}

std::pair<double, double> lemma_w_bulk(const VoronoiSetup& v) { return lemma_w_range(v, 1.0, 2.0); }

std::pair<double, double> lemma_w_core(const VoronoiSetup& v) {
  const double u = std::sqrt(1.0 - 1.0 / (1.0 + kLn2));
  return lemma_w_range(v, 0.5 * (3.0 - u), 0.5 * (3.0 + u));
}

namespace {

double unit_bump(double t) {
  double u = 2.0 * t - 3.0;
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

// Barycentric interpolant on Chebyshev points of the second kind.
struct ChebInterp {
  double lo = 0.0, hi = 1.0;
  std::vector<double> x;
  std::vector<cplx> f;

  template <class F>
  void fit(F&& fn, double a, double b, int n) {
    lo = a;
    hi = b;
    x.resize(n + 1);
    f.resize(n + 1);
    for (int k = 0; k <= n; ++k) {
      x[k] = 0.5 * (a + b) + 0.5 * (b - a) * std::cos(kPi * k / n);
      f[k] = fn(x[k]);
    }
  }
  cplx operator()(double t) const {
    const int n = int(x.size()) - 1;
    cplx num = 0.0;
    double den = 0.0;
    for (int k = 0; k <= n; ++k) {
      double d = t - x[k];
      if (d == 0.0) return f[k];
      double wk = (k % 2 ? -1.0 : 1.0) * (k == 0 || k == n ? 0.5 : 1.0) / d;
      num += wk * f[k];
      den += wk;
    }
    return num / den;
  }
};

// int e(sg a (cosh v - 1)) e^{2ivT} e^{-M^2 v^2} dv by the trapezoid rule on |v| <= 6.1 / M
cplx lemma_i_psi(double a, double T, double M, int sg) {
  const double vmax = std::sqrt(std::log(1e16)) / M;
  const double fmax = 2.0 * kPi * a * std::sinh(vmax) + 2.0 * T + 2.0 * M * M * vmax;
  auto trap = [&](int n) {
    const double h = 2.0 * vmax / n;
    KahanSum acc;
    for (int i = 0; i <= n; ++i) {
      double v = -vmax + i * h;
      double ph = 2.0 * kPi * sg * a * (std::cosh(v) - 1.0) + 2.0 * v * T;
      acc.add(std::polar(std::exp(-M * M * v * v), ph));
    }
    return acc.value() * h;
  };
  int n = std::max(64, int(std::ceil(2.0 * vmax * fmax / 2.0)));
  cplx prev = trap(n);
  for (int it = 0; it < 8; ++it) {
    n *= 2;
    cplx cur = trap(n);
    if (std::abs(cur - prev) <= 1e-13 * std::abs(cur) + 1e-300) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace

SmoothWeight lemma_i_weight(const LemmaISetup& s) {
  if (!(s.N > 0.0) || s.r < 1 || !(s.M > 0.0)) throw DomainError("lemma_i_weight: bad parameters");
  const double a0 = 2.0 * std::sqrt(s.N) / s.r, a1 = 2.0 * std::sqrt(2.0 * s.N) / s.r;
  auto psi = [&](double a) { return lemma_i_psi(a, s.T, s.M, s.sigma1); };
  auto cheb = std::make_shared<ChebInterp>();
  for (int n = 32;; n *= 2) {
    cheb->fit(psi, a0, a1, n);
    double err = 0.0, mx = 0.0;
    for (int k = 0; k < 7; ++k) {
      double t = a0 + (a1 - a0) * (k + 0.37) / 7.0;
      cplx e = psi(t);
      err = std::max(err, std::abs((*cheb)(t)-e));
      mx = std::max(mx, std::abs(e));
    }
    if (err <= 1e-11 * mx) break;
    if (n >= 1024) throw BudgetExceeded("lemma_i_weight: Chebyshev fit did not converge", 0.0, err);
  }
  SmoothWeight w;
  w.lo = s.N;
  w.hi = 2.0 * s.N;
  w.X = 1.0;
  w.amplitude = 1.0;
  const double N = s.N, r = s.r;
  const int sg = s.sigma1;
  w.f = [cheb, N, r, sg](double x) -> cplx {
    double v = unit_bump(x / N);
    if (v == 0.0) return 0.0;
    double a = 2.0 * std::sqrt(x) / r;
    return v * std::polar(1.0, 2.0 * kPi * sg * a) * (*cheb)(a);
  };
  return w;
}

VerticalLineTransform lemma_i_table(const LemmaISetup& s, int sign, const VerticalLineConfig& cfg) {
  return hankel_table(lemma_i_weight(s), sign, s.T, cfg);
}

double lemma_i_phase(double n, const LemmaISetup& s, int sign) {
  return -2.0 * kPi * sign * (n / s.r + 37.0 * s.T * s.T * s.r / (12.0 * kPi * kPi * n));
}

std::pair<double, double> lemma_i_bulk(const LemmaISetup& s) {
  VoronoiSetup v{s.N, s.r, s.sigma1 * 2.0 * std::sqrt(s.N) / s.r, s.T, s.sigma1};
  auto [y0, y1] = lemma_w_bulk(v);
  const double r3 = double(s.r) * s.r * s.r;
  return {r3 * y0, r3 * y1};
}

std::pair<double, double> lemma_i_core(const LemmaISetup& s) {
  VoronoiSetup v{s.N, s.r, s.sigma1 * 2.0 * std::sqrt(s.N) / s.r, s.T, s.sigma1};
  auto [y0, y1] = lemma_w_core(v);
  const double r3 = double(s.r) * s.r * s.r;
  return {r3 * y0, r3 * y1};
}

double LemmaW1Setup::Y() const { return 37.0 * T * T * r / (6.0 * kPi * std::sqrt(N)); }

SmoothWeight lemma_w1_weight(const LemmaW1Setup& s) {
  if (!(s.lo > 0.0 && s.hi > s.lo && s.bump_power > 0.0)) throw DomainError("lemma_w1_weight: bad support or power");
  const double sN = std::sqrt(s.N);
  const double c = 37.0 * s.T * s.T * s.r / (12.0 * kPi * kPi);
  const double l0 = std::log(s.lo * sN), lw = std::log(s.hi / s.lo), p = s.bump_power;
  const int sg = s.sign;
  SmoothWeight w;
  w.lo = s.lo * sN;
  w.hi = s.hi * sN;
  w.X = 1.0;
  w.amplitude = 1.0;
  w.f = [=](double y) -> cplx {
    const double u = 2.0 * (std::log(y) - l0) / lw - 1.0;
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(1.0 - std::pow(1.0 - u * u, -p)) * std::polar(1.0, -2.0 * kPi * sg * c / y);
  };
  return w;
}

std::pair<double, double> lemma_w1_bulk(const LemmaW1Setup& s) {
  const double Y = s.Y(), sN = std::sqrt(s.N);
  auto n = [&](double xi) {
    return Y * xi * xi * (4.0 * s.T * s.T - Y * Y * xi * xi) / (8.0 * kPi * kPi * kPi * sN);
  };
  return {n(1.0 / s.hi), n(1.0 / s.lo)};
}

double lemma_w1_scale(const LemmaW1Setup& s) { return std::pow(s.T, 1.5) / std::sqrt(s.M); }

VoronoiCheck voronoi_identity_check(const GL3Coefficients& A, long a, long r, const SmoothWeight& w, double T,
                                    const VoronoiTruncation& tr, const VerticalLineConfig& cfg) {
  if (r < 1) throw DomainError("voronoi_identity_check: r must be >= 1");
  if (std::gcd(a, r) != 1) throw DomainError("voronoi_identity_check: gcd(a, r) must be 1");
  const long abar = mod_inverse(a, r);
  VoronoiCheck out;
  const long top = long(std::floor(w.hi));
  if (top > A.m_max || r > A.n_max)
    throw RangeError("voronoi_identity_check: need A(m, n) for m <= " + std::to_string(top) +
                     ", n <= " + std::to_string(r));
  KahanSum lhs;
  for (long n2 = 1; n2 <= r; ++n2) {
    if (r % n2) continue;
    for (long n1 = std::max(1L, long(std::ceil(w.lo / double(n2 * n2)))); n1 * n2 * n2 <= top; ++n1) {
      cplx wv = w(double(n1 * n2 * n2));
      if (wv == 0.0) continue;
      lhs.add(double(n2) * A(n1, n2) * kloosterman(n1, abar, r / n2) * wv);
    }
  }
  out.lhs = lhs.value();

  const VerticalLineTransform Wp = hankel_table(w, 1, T, cfg), Wm = hankel_table(w, -1, T, cfg);
  const double r3 = double(r) * r * r;
  KahanSum rhs;
  double wmax = 0.0, err = 0.0;
  long quiet = 0, n = 1;
  for (;; ++n) {
    if (tr.n_dual_max > 0 && n > tr.n_dual_max) break;
    if (n > A.n_max)
      throw RangeError("voronoi_identity_check: dual sum not converged, need A(1, n) beyond n = " +
                       std::to_string(A.n_max));
    TransformResult p = Wp(n / r3), m = Wm(n / r3);
    const double ph = 2.0 * kPi * double((a % r) * (n % r) % r) / double(r);
    const cplx ep = std::polar(1.0, ph);
    // G+- normalized with the factor 1/2: (1/2)(L(1-s)/L(s) +- i^{-3} L(2-s)/L(1+s))
    rhs.add(0.5 * A(1, n) / double(r) * (ep * p.value + std::conj(ep) * m.value));
    err += 0.5 * std::abs(A(1, n)) / double(r) * (p.abs_err + m.abs_err);
    const double mag = std::abs(p.value) + std::abs(m.value);
    wmax = std::max(wmax, mag);
    quiet = mag + p.abs_err + m.abs_err <= tr.tol * wmax || wmax == 0.0 ? quiet + 1 : 0;
    if (tr.n_dual_max == 0 && quiet >= 64 && n >= 64) break;
  }
  out.rhs = rhs.value();
  out.n_dual = n - 1;
  out.rhs_err = err;
  const double den = std::abs(out.lhs) + std::abs(out.rhs);
  out.gap = den == 0.0 ? 0.0 : std::abs(out.lhs - out.rhs) / den;
  return out;
}

SmoothWeight pole_free_weight(double X, double width, double T) {
  if (!(X > 0.0 && width > 0.0)) throw DomainError("pole_free_weight: X, width must be positive");
  const std::vector<double> theta = {-9.0, -6.0, -3.0, 0.0, 3.0, 6.0, 9.0};
  const std::vector<cplx> pts = {0.0, 1.0, cplx(0, 2 * T), cplx(0, -2 * T), cplx(1, 2 * T), cplx(1, -2 * T)};
  // Mellin transform of the untruncated Gaussian: X^s width sqrt(2 pi) exp(width^2 s^2 / 2)
  auto g = [=](cplx s) { return std::exp(s * std::log(X) + 0.5 * width * width * s * s); };
  const int K = int(pts.size());
  std::vector<std::vector<cplx>> m(K, std::vector<cplx>(K + 1));
  for (int i = 0; i < K; ++i) {
    for (int k = 0; k < K; ++k) m[i][k] = g(pts[i] + cplx(0, theta[k]));
    m[i][K] = -g(pts[i] + cplx(0, theta[K]));
  }
  for (int c = 0; c < K; ++c) {
    int piv = c;
    for (int i = c + 1; i < K; ++i)
      if (std::abs(m[i][c]) > std::abs(m[piv][c])) piv = i;
    std::swap(m[c], m[piv]);
    for (int i = 0; i < K; ++i) {
      if (i == c) continue;
      cplx f = m[i][c] / m[c][c];
      for (int k = c; k <= K; ++k) m[i][k] -= f * m[c][k];
    }
  }
  std::vector<cplx> coef(K + 1, 1.0);
  double cmax = 1.0;
  for (int i = 0; i < K; ++i) {
    coef[i] = m[i][K] / m[i][i];
    cmax = std::max(cmax, std::abs(coef[i]));
  }
  for (cplx& c : coef) c /= cmax;
  const double cut = width * std::sqrt(2.0 * std::log(1e17));
  SmoothWeight w;
  w.lo = X * std::exp(-cut);
  w.hi = X * std::exp(cut);
  w.X = X;
  w.f = [=](double x) {
    const double u = std::log(x / X);
    cplx s = 0.0;
    for (size_t k = 0; k < coef.size(); ++k) s += coef[k] * std::polar(1.0, theta[k] * std::log(x));
    return s * std::exp(-u * u / (2.0 * width * width));
  };
  double amp = 0.0;
  for (int i = -200; i <= 200; ++i) amp = std::max(amp, std::abs(w.f(X * std::exp(cut * i / 200.0))));
  w.amplitude = amp;
  return w;
}

}  // namespace qm
