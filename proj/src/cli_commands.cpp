#include "qmoment/cli_commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "qmoment/afe.hpp"
#include "qmoment/errors.hpp"
#include "qmoment/gl3_voronoi.hpp"
#include "qmoment/kuznetsov.hpp"
#include "qmoment/watson.hpp"

namespace qm {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

double or_default(double v, double d) { return v > 0.0 ? v : d; }

void note(Table& t, const std::string& k, const std::string& v) { t.summary.emplace_back(k, v); }
void note(Table& t, const std::string& k, double v) { t.summary.emplace_back(k, fmt(v)); }

VerticalLineConfig oracle_config(const RunConfig& cfg, double tol) {
  VerticalLineConfig c;
  c.sigma = 0.5;
  c.tol = tol;
  c.max_height = cfg.max_height;
  return c;
}

void require_truncation(const VerticalLineTransform& t, const char* what) {
  if (!t(1.0).truncation_ok)
    throw BudgetExceeded(std::string(what) + ": contour height budget exhausted", 0.0, 0.0);
}

// least-squares slope of log|v| against log y
double loglog_slope(const std::vector<std::pair<double, double>>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(pts.size());
  for (auto [x, y] : pts) {
    double lx = std::log(x), ly = std::log(std::abs(y));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

std::string RunConfig::canonical() const {
  std::ostringstream s;
  s << command << " --T " << fmt(T) << " --M " << fmt(M) << " --tk " << fmt(tk) << " --tol " << fmt(tol)
    << " --N " << fmt(N) << " --r " << r << " --max-height " << fmt(max_height) << " --grid '" << grid
    << "' --coeffs '" << coeffs << "' --format " << format << " --seed " << seed;
  return s.str();
}

void write_table(const Table& t, const RunConfig& cfg, std::ostream& os) {
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["config"] = cfg.canonical();
    j["version"] = kVersion;
    j["tol"] = cfg.tol;
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    nlohmann::ordered_json s = nlohmann::ordered_json::object();
    for (auto& [k, v] : t.summary) s[k] = v;
    j["summary"] = s;
    os << j.dump(1) << "\n";
    return;
  }
  os << "# config: " << cfg.canonical() << "\n# version: " << kVersion << "\n";
  for (size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt(row[i]);
    os << "\n";
  }
  for (auto& [k, v] : t.summary) os << "# " << k << ": " << v << "\n";
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  if (spec.empty()) return out;
  auto num = [&](const std::string& s) {
    size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw DomainError("grid: bad number '" + s + "'");
    return v;
  };
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> p;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ':');) p.push_back(item);
    if (p.size() != 3) throw DomainError("grid: expected lo:hi:count");
    const double lo = num(p[0]), hi = num(p[1]);
    const int n = int(num(p[2]));
    if (!(lo > 0.0 && hi >= lo && n >= 1)) throw DomainError("grid: need 0 < lo <= hi and count >= 1");
    for (int k = 0; k < n; ++k) out.push_back(n == 1 ? lo : lo * std::pow(hi / lo, double(k) / (n - 1)));
    return out;
  }
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(num(item));
  return out;
}

GL3Coefficients load_coefficients(const std::string& spec, double T, long m_max, long n_max) {
  if (spec.empty() || spec.rfind("surrogate", 0) == 0) {
    double t = T;
    if (spec.size() > 9) {
      if (spec[9] != ':') throw DomainError("coeffs: expected surrogate:T");
      t = parse_grid(spec.substr(10)).at(0);
    }
    return surrogate_gl3_eisenstein(t, m_max, n_max);
  }
  if (spec == "zero" || spec == "trivial") {
    GL3Coefficients z;
    z.m_max = m_max;
    z.n_max = n_max;
    z.a.assign(size_t(m_max + 1) * size_t(n_max + 1), 0.0);
    z.mu = {cplx(0, -2.0 * T), 0.0, cplx(0, 2.0 * T)};
    if (spec == "trivial") z.at(1, 1) = 1.0;
    return z;
  }
  const HeckeEigenvalues h = load_maass_data(spec);
  return sym_square_coeffs(h, std::min(m_max, h.n_max()), std::min(n_max, h.n_max()));
}

int cmd_verify_g_identity(const RunConfig& cfg, Table& out) {
  const double tol = or_default(cfg.tol, 1e-8);
  std::vector<double> Ts = parse_grid(cfg.grid);
  if (Ts.empty()) Ts = cfg.T > 0 ? std::vector<double>{cfg.T} : std::vector<double>{5.0, 20.0, 50.0};
  out.columns = {"T", "re_s", "im_s", "sign", "rel_err"};
  double worst = 0.0;
  for (double T : Ts)
    for (double re : {-3.0, -2.0, -1.0, 0.0, 0.5})
      for (double im : {0.0, 5.0, 15.0, 30.0, 50.0})
        for (int sg : {1, -1}) {
          const cplx s(re, im);
          const cplx a = G_pm_ratio(s, T, sg), b = G_pm_closed(s, T, sg).value;
          const double e = std::abs(a - b) / std::abs(a);
          worst = std::max(worst, e);
          out.rows.push_back({T, re, im, double(sg), e});
        }
  note(out, "max_rel_err", worst);
  note(out, "tol", tol);
  return worst <= tol ? kPass : kToleranceFailure;
}

int cmd_kernel_scan(const RunConfig& cfg, Table& out) {
  SpectralWindow win{or_default(cfg.T, 100.0), or_default(cfg.M, 10.0)};
  const double T = win.T, M = win.M, MT = M * T;
  KernelEvalConfig kc;
  if (cfg.tol > 0) kc.tol = cfg.tol;
  std::vector<double> xs = {1.0, T / 20.0, 2.0 * T, M * std::sqrt(T), 20.0 * T};
  for (double x : parse_grid(cfg.grid)) xs.push_back(x);
  out.columns = {"x", "abs_Hplus_over_MT", "abs_Hminus_over_MT"};
  std::map<double, std::pair<double, double>> v;
  for (double x : xs) {
    if (v.count(x)) continue;
    v[x] = {std::abs(kernel_Hplus(x, win, kc).value), std::abs(kernel_Hminus(x, win, kc).value)};
  }
  for (auto& [x, h] : v) out.rows.push_back({x, h.first / MT, h.second / MT});
  const double ref = v[2.0 * T].second;
  const double r1 = v[T / 20.0].second / ref, r2 = v[20.0 * T].second / ref;
  const double hp = v[M * std::sqrt(T)].first, h1 = v[1.0].first;
  note(out, "Hminus_ratio_T_over_20", r1);
  note(out, "Hminus_ratio_20T", r2);
  note(out, "Hplus_at_M_sqrtT_over_MT", hp / MT);
  note(out, "Hplus_at_1_over_M", h1 / M);
  const bool ok = r1 <= 1e-3 && r2 <= 1e-3 && hp <= 1e-4 * MT && h1 <= 10.0 * M;
  return ok ? kPass : kToleranceFailure;
}

int cmd_afe_check(const RunConfig& cfg, Table& out) {
  const double T = or_default(cfg.T, 10.0);
  const double tol = or_default(cfg.tol, 1e-6);
  const std::string& src = cfg.coeffs;
  const bool surrogate = src.empty() || src.rfind("surrogate", 0) == 0;
  double t = T;
  if (surrogate && src.size() > 10) t = parse_grid(src.substr(10)).at(0);
  GL3Coefficients A = load_coefficients(src, t, 1, 4096);
  const double height = A.mu.size() == 3 ? 0.5 * A.mu[2].imag() : t;
  const AfeInstance inst = make_afe_instance(arch_sym2(height), height);
  const double q = inst.conductor();

  std::vector<double> ys = parse_grid(cfg.grid);
  if (ys.empty())
    for (int k = -6; k <= 4; ++k) ys.push_back(q * std::pow(10.0, k));
  out.columns = {"y", "V", "quad_err", "trunc_err", "line"};
  for (double y : ys) {
    VValue v = afe_weight_V(y, inst);
    out.rows.push_back({y, v.value.real(), v.quad_err, v.trunc_err, v.line});
  }
  double plateau = 0.0;
  for (double y : {1e-6 * q, 1e-5 * q, 1e-4 * q, 1e-3 * q})
    plateau = std::max(plateau, std::abs(afe_weight_V(y, inst).value - 1.0));
  std::vector<std::pair<double, double>> tail;
  for (int k = 0; k <= 8; ++k) {
    const double y = q * std::pow(10.0, 2.0 + 0.25 * k);
    tail.emplace_back(y, afe_weight_V(y, inst).value.real());
  }
  const double slope = loglog_slope(tail);
  note(out, "conductor", q);
  note(out, "plateau_max_dev", plateau);
  note(out, "plateau_within_1e-3", plateau <= 1e-3 ? "yes" : "no");
  note(out, "decay_slope", slope);

  const double value_tol = 1e-3 * tol;
  CentralValueResult res;
  for (;;) {
    try {
      res = afe_central_value(A, inst, value_tol);
      break;
    } catch (const RangeError&) {
      if (!surrogate && src != "zero" && src != "trivial") throw;
      if (A.n_max > (1L << 22)) throw BudgetExceeded("afe-check: coefficient table too large", 0.0, 0.0);
      A = load_coefficients(src, t, 1, 2 * A.n_max);
    }
  }
  note(out, "value_re", res.value.real());
  note(out, "value_im", res.value.imag());
  note(out, "truncation_n", double(res.truncation_n_max));
  note(out, "tail_bound", res.tail_bound);
  bool ok = slope <= -3.0;
  if (surrogate) {
    const cplx oracle = zeta(cplx(0.5, -2.0 * t)) * zeta(0.5) * zeta(cplx(0.5, 2.0 * t));
    const double rel = std::abs(res.value - oracle) / std::abs(oracle);
    note(out, "oracle_re", oracle.real());
    note(out, "oracle_im", oracle.imag());
    note(out, "oracle_rel_err", rel);
    ok = ok && rel <= tol;
  }
  return ok ? kPass : kToleranceFailure;
}

namespace {

struct PhaseTally {
  double tol = 0.05;
  double worst = 0.0;
  int valid_rows = 0;
  bool ok = true;

  void add(double dev, bool extra_ok = true) {
    ++valid_rows;
    worst = std::max(worst, dev);
    ok = ok && dev <= tol && extra_ok;
  }
};

// W: y-increments of the Hankel transform against h2(xi0)
void phase_rows_w(const RunConfig& cfg, double T, Table& out, PhaseTally& tally) {
  const double N = or_default(cfg.N, 1e4);
  VoronoiSetup v{N, cfg.r, 2.0 * std::sqrt(N) / cfg.r, T, 1};
  auto [y0, y1] = lemma_w_core(v);
  if (!(v.B() >= 1.0 && y0 > 0.0)) {
    out.rows.push_back({0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
    return;
  }
  auto tab = hankel_table(lemma_w_weight(N, v.b), 1, T, oracle_config(cfg, 1e-7));
  require_truncation(tab, "phase-lab W");
  const int K = 24;
  const double d = 0.01;
  for (int k = 0; k < K; ++k) {
    const double y = y0 + (k + 0.5) * (y1 - y0) / K;
    const cplx w0 = tab(y).value, w1 = tab(y + d).value;
    const AsymptoticW a0 = asymptotic_W_main(y, v), a1 = asymptotic_W_main(y + d, v);
    const double meas = std::arg(w1 / w0) / d, pred = (a1.phase - a0.phase) / d;
    const double dev = std::abs(meas - pred) / std::abs(pred);
    const double mod = std::abs(w0) / a0.modulus_scale;
    const bool valid = a0.valid && a1.valid;
    if (valid) tally.add(dev, mod >= 1e-2 && mod <= 1e2);
    out.rows.push_back({0.0, y, meas, pred, dev, mod, valid ? 1.0 : 0.0});
  }
}

// I: unit n-increments against e(-+n/r -+ 37 T^2 r / (12 pi^2 n))
void phase_rows_i(const RunConfig& cfg, double T, double M, Table& out, PhaseTally& tally) {
  LemmaISetup s;
  if (cfg.N > 0) s.N = cfg.N;
  s.T = T;
  s.M = M;
  s.r = cfg.r;
  VoronoiSetup vi{s.N, s.r, 2.0 * std::sqrt(s.N) / s.r, T, 1};
  auto [n0, n1] = lemma_i_core(s);
  const long lo = std::max(1L, long(std::ceil(n0))), hi = long(std::floor(n1)) - 1;
  if (!(vi.B() >= 1.0 && n0 > 0.0 && hi >= lo)) {
    out.rows.push_back({1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
    return;
  }
  auto itab = lemma_i_table(s, 1, oracle_config(cfg, 1e-9));
  require_truncation(itab, "phase-lab I");
  const long step = std::max(1L, (hi - lo) / 40);
  const double r3 = double(s.r) * s.r * s.r;
  for (long n = lo; n <= hi; n += step) {
    const cplx a = itab(double(n) / r3).value, b = itab(double(n + 1) / r3).value;
    const double pred = lemma_i_phase(double(n + 1), s, 1) - lemma_i_phase(double(n), s, 1);
    double meas = std::arg(b / a);
    meas += 2.0 * kPi * std::round((pred - meas) / (2.0 * kPi));
    const double dev = std::abs(meas - pred) / std::abs(pred);
    const bool valid = asymptotic_W_main(double(n) / r3, vi).valid && a != 0.0;
    if (valid) tally.add(dev);
    out.rows.push_back({1.0, double(n), meas, pred, dev, std::abs(a), valid ? 1.0 : 0.0});
  }
}

}  // namespace

int cmd_phase_lab(const RunConfig& cfg, Table& out) {
  const double T = or_default(cfg.T, 30.0);
  const double M = or_default(cfg.M, std::pow(T, 0.4));
  if (cfg.r < 1) throw DomainError("phase-lab: r must be >= 1");
  out.columns = {"kind", "point", "measured_increment", "predicted_increment", "rel_dev", "modulus_ratio", "valid"};
  PhaseTally tally;
  tally.tol = or_default(cfg.tol, 0.05);
  phase_rows_w(cfg, T, out, tally);
  phase_rows_i(cfg, T, M, out, tally);
  note(out, "valid_rows", double(tally.valid_rows));
  note(out, "worst_valid_rel_dev", tally.worst);
  note(out, "tol", tally.tol);
  return tally.ok ? kPass : kToleranceFailure;
}

int cmd_watson_table(const RunConfig& cfg, Table& out) {
  const double T = or_default(cfg.T, 100.0);
  const double tk = or_default(cfg.tk, 1.0);
  if (!(tk < T)) throw RegimeError("watson-table: requires tk < T");
  std::vector<double> tjs = parse_grid(cfg.grid);
  if (tjs.empty()) {
    const double w = 5.0 * std::pow(T, 0.3);
    for (int k = 0; k <= 40; ++k) tjs.push_back(T - w + 2.0 * w * k / 40.0);
  }
  out.columns = {"tj", "Q", "log_H", "log_H_plus_half_pi_Q"};
  bool ok = true;
  double lo = INFINITY, hi = -INFINITY;
  for (double tj : tjs) {
    const TripleSpectralData d{tj, T, tk};
    const double Q = q_exponent(d), lh = watson_arch_weight(d);
    out.rows.push_back({tj, Q, lh, lh + 0.5 * kPi * Q});
    if (std::abs(tj - T) <= tk) {
      const double s = std::exp(lh) * std::pow(T, 1.5);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
      ok = ok && s >= 1e-2 && s <= 1e2;
    }
  }
  if (std::isfinite(lo)) {
    note(out, "min_H_T32_in_window", lo);
    note(out, "max_H_T32_in_window", hi);
  }
  return ok ? kPass : kToleranceFailure;
}

int cmd_moment_explore(const RunConfig& cfg, Table& out) {
  const double T = or_default(cfg.T, 50.0);
  const double M = or_default(cfg.M, std::pow(T, 0.4));
  const double N = cfg.N != 0.0 ? cfg.N : 4.0;
  if (!(N > 0.0 && N <= std::pow(T, 3.01))) throw DomainError("moment-explore: N must lie in (0, T^{3+eps}]");
  std::vector<double> cs = parse_grid(cfg.grid);
  if (cs.empty()) cs = {1.0};
  SpectralWindow win{T, M};
  const double H = kernel_H(win);
  const AfeInstance inst = make_afe_instance(arch_sym2_gl2(T, T), T);
  const long m_max = long(std::ceil(10.0 * std::sqrt(inst.conductor())));
  const long n_cap = std::max(m_max, long(N));
  const GL3Coefficients A = load_coefficients(cfg.coeffs, T, std::min(m_max, n_cap), n_cap);

  // diagonal: n = 1 term of the spectral sum, 2 H sum_m A(m, 1) V(m^2) / m
  KahanSum dsum;
  for (long m = 1; m <= A.m_max; ++m) {
    const cplx a = A(m, 1);
    if (a != 0.0) dsum.add(a * afe_weight_V(double(m) * m, inst).value / double(m));
  }
  const cplx D = 2.0 * H * dsum.value();

  out.columns = {"n", "c", "x", "Hplus_re", "Hplus_im", "Hminus_re", "Hminus_im", "skipped_plus", "skipped_minus"};
  std::map<double, std::pair<OscIntegralResult, OscIntegralResult>> cache;
  KahanSum rp, rm;
  for (long n = 1; n <= long(N); ++n) {
    const cplx a = A(1, n);
    for (double cd : cs) {
      const long c = long(cd);
      if (c < 1) throw DomainError("moment-explore: grid values are moduli c >= 1");
      const double x = 4.0 * kPi * std::sqrt(double(n)) / double(c);
      // localization: H- negligible off [T/20, 20T], H+ below M sqrt T
      const bool skip_m = x < T / 20.0 || x > 20.0 * T, skip_p = x < M * std::sqrt(T);
      if (!cache.count(x)) {
        OscIntegralResult p, m;
        if (!skip_p) p = kernel_Hplus(x, win);
        if (!skip_m) m = kernel_Hminus(x, win);
        cache[x] = {p, m};
      }
      const auto& [p, m] = cache[x];
      const double S = kloosterman(1, n, c);
      rp.add(a / std::sqrt(double(n)) * S / double(c) * p.value);
      rm.add(a / std::sqrt(double(n)) * S / double(c) * m.value);
      out.rows.push_back({double(n), double(c), x, p.value.real(), p.value.imag(), m.value.real(), m.value.imag(),
                          skip_p ? 1.0 : 0.0, skip_m ? 1.0 : 0.0});
    }
  }
  const double off = std::pow(T, 1.5) / std::sqrt(M);
  note(out, "exploration", "non-acceptance");
  note(out, "H", H);
  note(out, "D_re", D.real());
  note(out, "D_over_TM", std::abs(D) / (T * M));
  note(out, "Rplus_abs", std::abs(rp.value()));
  note(out, "Rminus_abs", std::abs(rm.value()));
  note(out, "Rplus_over_T32_M12", std::abs(rp.value()) / off);
  note(out, "Rminus_over_T32_M12", std::abs(rm.value()) / off);
  return kPass;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"qmoment verification harness"};
  RunConfig cfg;
  const std::vector<std::string> commands = {"verify-g-identity", "kernel-scan",    "afe-check",
                                             "phase-lab",         "watson-table",   "moment-explore"};
  app.add_option("command", cfg.command, "command")->required()->check(CLI::IsMember(commands));
  app.add_option("--T", cfg.T, "spectral height");
  app.add_option("--M", cfg.M, "window width");
  app.add_option("--tk", cfg.tk, "t_k");
  app.add_option("--tol", cfg.tol, "pass tolerance");
  app.add_option("--N", cfg.N, "dyadic size");
  app.add_option("--r", cfg.r, "modulus r");
  app.add_option("--max-height", cfg.max_height, "contour height budget");
  app.add_option("--grid", cfg.grid, "a,b,c or lo:hi:count");
  app.add_option("--coeffs", cfg.coeffs, "path | surrogate[:T] | zero | trivial");
  app.add_option("--out", cfg.out, "output path");
  app.add_option("--format", cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", cfg.seed, "seed");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  Table t;
  int code = kPass;
  try {
    if (cfg.command == "verify-g-identity") code = cmd_verify_g_identity(cfg, t);
    else if (cfg.command == "kernel-scan") code = cmd_kernel_scan(cfg, t);
    else if (cfg.command == "afe-check") code = cmd_afe_check(cfg, t);
    else if (cfg.command == "phase-lab") code = cmd_phase_lab(cfg, t);
    else if (cfg.command == "watson-table") code = cmd_watson_table(cfg, t);
    else code = cmd_moment_explore(cfg, t);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kBudget;
  } catch (const PrecisionError& e) {
    std::cerr << "precision: " << e.what() << "\n";
    return kToleranceFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (cfg.out.empty()) {
    write_table(t, cfg, std::cout);
  } else {
    std::ofstream f(cfg.out);
    if (!f) {
      std::cerr << "error: cannot write " << cfg.out << "\n";
      return kUsage;
    }
    write_table(t, cfg, f);
  }
  if (code != kPass) std::cerr << "tolerance failure (exit " << code << ")\n";
  return code;
}

}  // namespace qm
