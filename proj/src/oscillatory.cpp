#include "qmoment/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace qm {

namespace {

constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double l, r;
  cplx val;
  double err;
  double floor;  // roundoff level of this panel
  bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk15(const std::function<cplx(double)>& f, double l, double r) {
  const double c = 0.5 * (l + r);
  const double hw = 0.5 * (r - l);
  cplx fv[15];
  fv[7] = f(c);
  for (int j = 0; j < 7; ++j) {
    fv[j] = f(c - hw * xgk[j]);
    fv[14 - j] = f(c + hw * xgk[j]);
  }
  cplx k = wgk[7] * fv[7];
  cplx g = wg[3] * fv[7];
  double resabs = wgk[7] * std::abs(fv[7]);
  for (int j = 0; j < 7; ++j) {
    cplx s = fv[j] + fv[14 - j];
    k += wgk[j] * s;
    resabs += wgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    if (j % 2 == 1) g += wg[j / 2] * s;
  }
  cplx mean = 0.5 * k;
  double resasc = wgk[7] * std::abs(fv[7] - mean);
  for (int j = 0; j < 7; ++j)
    resasc += wgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
  resasc *= hw;
  resabs *= hw;
  double err = std::abs((k - g) * hw);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  const double fl = 50.0 * eps * resabs;
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(fl, err);
  return {l, r, k * hw, err, fl};
}

void cap_width(double l, double r, const std::function<double(double)>& freq,
               std::vector<std::pair<double, double>>& out, int depth) {
  double m = 0.0;
  for (int i = 0; i <= 4; ++i) m = std::max(m, std::abs(freq(l + (r - l) * i / 4.0)));
  if (depth < 40 && (r - l) * m > kPi) {
    double c = 0.5 * (l + r);
    cap_width(l, c, freq, out, depth + 1);
    cap_width(c, r, freq, out, depth + 1);
  } else {
    out.emplace_back(l, r);
  }
}

// Sign-change roots of dh, without degeneracy checks.
std::vector<double> dh_roots(const PhaseFunction& h, double lo, double hi, int n) {
  std::vector<double> roots;
  if (!h.dh || !(hi > lo)) return roots;
  double xp = lo, fp = h.dh(lo);
  if (fp == 0.0) roots.push_back(lo);
  for (int i = 1; i <= n; ++i) {
    double x = lo + (hi - lo) * double(i) / n;
    double fx = h.dh(x);
    if (fx == 0.0) {
      if (fp != 0.0) roots.push_back(x);
    } else if (fp != 0.0 && (fp < 0) != (fx < 0)) {
      double a = xp, b = x, fa = fp;
      for (int it = 0; it < 200 && b - a > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
        double m = 0.5 * (a + b);
        double fm = h.dh(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if ((fm < 0) == (fa < 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      double r = 0.5 * (a + b);
      if (h.d2h) {
        for (int it = 0; it < 50; ++it) {
          double d2 = h.d2h(r);
          if (d2 == 0.0) break;
          double step = h.dh(r) / d2;
          double rn = r - step;
          if (rn < xp || rn > x) break;
          r = rn;
          if (std::abs(step) <= 1e-13 * std::max(1.0, std::abs(r))) break;
        }
      }
      roots.push_back(r);
    }
    xp = x;
    fp = fx;
  }
  return roots;
}

int grid_size(double X) { return std::max(256, int(std::ceil(64.0 * X))); }

}  // namespace

SmoothWeight bump_weight(double lo, double hi, double height) {
  SmoothWeight w;
  w.lo = lo;
  w.hi = hi;
  w.amplitude = std::abs(height);
  w.X = 1.0;
  const double c = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
  w.f = [=](double x) -> cplx {
    double u = (x - c) / hw;
    if (std::abs(u) >= 1.0) return 0.0;
    return height * std::exp(1.0 - 1.0 / (1.0 - u * u));
  };
  return w;
}

PhaseFunction shifted(const PhaseFunction& p, double c) {
  PhaseFunction q = p;
  auto h = p.h;
  q.h = [h, c](double x) { return h(x) + c; };
  return q;
}

OscIntegralResult integrate_panels(const std::function<cplx(double)>& f, double a, double b,
                                   const std::function<double(double)>& freq, double tol,
                                   std::vector<double> breaks, const OscOptions& opt) {
  if (!(tol > 0.0)) throw DomainError("integrate_oscillatory: tol must be positive");
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integrate_oscillatory: unbounded support");
  OscIntegralResult res;
  if (!(b > a)) return res;
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  std::vector<std::pair<double, double>> segs;
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    double l = std::max(a, breaks[i]), r = std::min(b, breaks[i + 1]);
    if (r > l) {
      if (freq)
        cap_width(l, r, freq, segs, 0);
      else
        segs.emplace_back(l, r);
    }
  }
  std::priority_queue<Panel> heap;
  std::vector<Panel> frozen;
  double total_err = 0.0, total_floor = 0.0;
  int count = 0;
  for (auto& [l, r] : segs) {
    Panel p = gk15(f, l, r);
    total_err += p.err;
    total_floor += p.floor;
    heap.push(p);
    ++count;
  }
  const double min_width = 1e-13 * (b - a);
  auto current_value = [&]() {
    KahanSum s;
    auto copy = heap;
    while (!copy.empty()) {
      s.add(copy.top().val);
      copy.pop();
    }
    for (auto& p : frozen) s.add(p.val);
    return s.value();
  };
  double target = tol;
  double floor_err = 0.0;
  int since_check = 0;
  while (!heap.empty() && total_err > std::max({target, floor_err, 4.0 * total_floor})) {
    if (opt.rel_tol > 0.0 && ++since_check >= 64) {
      since_check = 0;
      target = std::max(tol, opt.rel_tol * std::abs(current_value()));
      if (total_err <= target) break;
    }
    if (count >= opt.max_panels) {
      throw BudgetExceeded("integrate_oscillatory: panel budget exhausted", current_value(), total_err);
    }
    Panel p = heap.top();
    heap.pop();
    if (p.r - p.l < min_width || p.err <= p.floor * (1.0 + 1e-9)) {
      floor_err += p.err;
      frozen.push_back(p);
      if (heap.empty()) break;
      continue;
    }
    double c = 0.5 * (p.l + p.r);
    Panel p1 = gk15(f, p.l, c), p2 = gk15(f, c, p.r);
    total_err += p1.err + p2.err - p.err;
    total_floor += p1.floor + p2.floor - p.floor;
    heap.push(p1);
    heap.push(p2);
    ++count;
  }
  // Deterministic left-to-right reduction.
  std::vector<Panel> all = frozen;
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.l < y.l; });
  KahanSum s;
  double e = 0.0;
  for (auto& p : all) {
    s.add(p.val);
    e += p.err;
  }
  res.value = s.value();
  res.abs_err = e;
  res.panels = int(all.size());
  res.converged = e <= std::max({tol, opt.rel_tol * std::abs(res.value), floor_err * (1.0 + 1e-9), 4.0 * total_floor});
  return res;
}

OscIntegralResult integrate_oscillatory(const SmoothWeight& w, const PhaseFunction& h, double tol,
                                        const OscOptions& opt) {
  const double k = h.radians_per_unit();
  std::vector<double> breaks = dh_roots(h, w.lo, w.hi, grid_size(w.X));
  auto f = [&](double x) -> cplx {
    cplx wx = w(x);
    if (wx == 0.0) return 0.0;
    double ph = k * h.h(x);
    return wx * cplx(std::cos(ph), std::sin(ph));
  };
  std::function<double(double)> freq;
  if (h.dh) freq = [&](double x) { return k * h.dh(x); };
  return integrate_panels(f, w.lo, w.hi, freq, tol, breaks, opt);
}

std::vector<double> find_stationary_points(const PhaseFunction& h, double lo, double hi, double X) {
  if (!h.dh) throw DomainError("find_stationary_points: phase has no derivative");
  const int n = grid_size(X);
  std::vector<double> roots = dh_roots(h, lo, hi, n);
  // Scale for degeneracy: typical |h''| implied by |h'| over the interval.
  double maxd = 0.0;
  std::vector<double> g(n + 1);
  for (int i = 0; i <= n; ++i) {
    g[i] = h.dh(lo + (hi - lo) * double(i) / n);
    maxd = std::max(maxd, std::abs(g[i]));
  }
  const double L = hi - lo;
  const double scale = maxd / L;
  for (double r : roots) {
    double d2 = h.d2h ? h.d2h(r) : 0.0;
    if (std::abs(d2) <= 1e-8 * scale) throw DomainError("find_stationary_points: degenerate stationary point");
  }
  // Touching zeros of h' without a sign change are degenerate too.
  for (int i = 1; i < n; ++i) {
    double a = std::abs(g[i]);
    if (a <= std::abs(g[i - 1]) && a <= std::abs(g[i + 1]) && (g[i - 1] < 0) == (g[i + 1] < 0) &&
        a < 1e-10 * maxd && g[i] != 0.0)
      throw DomainError("find_stationary_points: degenerate stationary point");
  }
  return roots;
}

cplx stationary_phase_leading(const SmoothWeight& w, const PhaseFunction& h, double xi0) {
  if (xi0 < w.lo || xi0 > w.hi) throw DomainError("stationary_phase_leading: point outside support");
  const double k = h.radians_per_unit();
  double d2 = k * h.d2h(xi0);
  if (d2 == 0.0) throw DomainError("stationary_phase_leading: degenerate stationary point");
  double ph = k * h.h(xi0) + (d2 > 0 ? 0.25 : -0.25) * kPi;
  return w(xi0) * std::sqrt(2.0 * kPi / std::abs(d2)) * cplx(std::cos(ph), std::sin(ph));
}

double decay_certificate(double X, double V, double R, double Q, double Y, double support_length,
                         double A) {
  return support_length * X * (std::pow(Q * R / std::sqrt(Y), -A) + std::pow(R * V, -A));
}

double derivative_consistency(const PhaseFunction& h, const std::vector<double>& probes, double scale) {
  double worst = 0.0;
  const double s = 1e-5 * scale;
  for (double x : probes) {
    double fd1 = (-h.h(x + 2 * s) + 8 * h.h(x + s) - 8 * h.h(x - s) + h.h(x - 2 * s)) / (12 * s);
    double fd2 = (-h.dh(x + 2 * s) + 8 * h.dh(x + s) - 8 * h.dh(x - s) + h.dh(x - 2 * s)) / (12 * s);
    double a1 = h.dh(x), a2 = h.d2h(x);
    worst = std::max(worst, std::abs(fd1 - a1) / std::max(std::abs(a1), 1e-300));
    worst = std::max(worst, std::abs(fd2 - a2) / std::max(std::abs(a2), 1e-300));
  }
  return worst;
}

}  // namespace qm
