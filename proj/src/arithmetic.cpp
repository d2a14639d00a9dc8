#include "qmoment/arithmetic.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "qmoment/errors.hpp"

namespace qm {

double HeckeEigenvalues::operator()(long n) const {
  if (n < 1 || n > n_max()) throw RangeError("lambda(" + std::to_string(n) + ") outside stored range");
  return lambda[size_t(n)];
}

void validate_hecke(const HeckeEigenvalues& h, double tol) {
  const long N = h.n_max();
  if (N < 1 || std::abs(h.lambda[1] - 1.0) > tol) throw HeckeViolation("lambda(1) != 1", 1, 1, 1);
  for (long m = 2; m <= N; ++m) {
    for (long n = m; m * n <= N; ++n) {
      const long g = std::gcd(m, n);
      double rhs = 0.0;
      for (long d = 1; d <= g; ++d)
        if (g % d == 0) rhs += h.lambda[size_t(m * n / (d * d))];
      double lhs = h.lambda[size_t(m)] * h.lambda[size_t(n)];
      if (std::abs(lhs - rhs) > tol)
        throw HeckeViolation("Hecke relation fails at (m, n, gcd) = (" + std::to_string(m) + ", " +
                                 std::to_string(n) + ", " + std::to_string(g) + ")",
                             m, n, g);
    }
  }
}

namespace {

std::string trim_right(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  return s;
}

// Parses a number starting at column pos; returns the end column.
double parse_number(const std::string& line, size_t& pos, int lineno, bool integer) {
  while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  if (pos >= line.size()) throw ParseError("expected a number", lineno, int(pos) + 1);
  const char* start = line.c_str() + pos;
  char* end = nullptr;
  double v;
  if (integer) {
    long x = std::strtol(start, &end, 10);
    v = double(x);
  } else {
    v = std::strtod(start, &end);
  }
  if (end == start) throw ParseError("malformed number", lineno, int(pos) + 1);
  if (*end != '\0' && *end != ' ' && *end != '\t') throw ParseError("malformed number", lineno, int(end - line.c_str()) + 1);
  if (!integer && !std::isfinite(v)) throw ParseError("non-finite value", lineno, int(pos) + 1);
  pos = size_t(end - line.c_str());
  return v;
}

}  // namespace

HeckeEigenvalues load_maass_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("load_maass_data: cannot open " + path);
  HeckeEigenvalues h;
  h.source = CoeffSource::file;
  h.lambda.assign(1, 0.0);
  bool have_R = false, have_parity = false;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim_right(raw);
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string key;
      ss >> key;
      if (key == "R") {
        size_t pos = line.find('R') + 1;
        h.R = parse_number(line, pos, lineno, false);
        have_R = true;
      } else if (key == "parity") {
        std::string v;
        ss >> v;
        if (v == "even") h.parity = Parity::even;
        else if (v == "odd") h.parity = Parity::odd;
        else throw ParseError("parity must be 'even' or 'odd'", lineno, int(line.find(v.empty() ? "parity" : v)) + 1);
        have_parity = true;
      }
      continue;
    }
    size_t pos = 0;
    double n = parse_number(line, pos, lineno, true);
    const long expect = long(h.lambda.size());
    if (long(n) != expect) throw ParseError("expected n = " + std::to_string(expect), lineno, 1);
    double lam = parse_number(line, pos, lineno, false);
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos < line.size()) throw ParseError("trailing characters", lineno, int(pos) + 1);
    h.lambda.push_back(lam);
  }
  if (!have_R) throw ParseError("missing '# R' header", lineno, 1);
  if (!have_parity) throw ParseError("missing '# parity' header", lineno, 1);
  if (h.n_max() < 1) throw ParseError("no coefficients", lineno, 1);
  validate_hecke(h, 1e-4);
  return h;
}

void write_maass_data(const HeckeEigenvalues& h, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw DomainError("write_maass_data: cannot open " + path);
  std::fprintf(f, "# R %.17g\n# parity %s\n", h.R, h.parity == Parity::even ? "even" : "odd");
  for (long n = 1; n <= h.n_max(); ++n) std::fprintf(f, "%ld %.17g\n", n, h.lambda[size_t(n)]);
  std::fclose(f);
}

HeckeEigenvalues eisenstein_hecke(double t, long n_max) {
  HeckeEigenvalues h;
  h.R = t;
  h.source = CoeffSource::surrogate;
  h.lambda.assign(size_t(n_max + 1), 0.0);
  for (long n = 1; n <= n_max; ++n) h.lambda[size_t(n)] = eta_divisor(n, t).real();
  return h;
}

cplx GL3Coefficients::operator()(long m, long n) const {
  if (m < 1 || n < 1 || m > m_max || n > n_max)
    throw RangeError("A(" + std::to_string(m) + ", " + std::to_string(n) + ") outside table (m <= " +
                     std::to_string(m_max) + ", n <= " + std::to_string(n_max) + ")");
  return a[size_t(m) * size_t(n_max + 1) + size_t(n)];
}

int moebius(long n) {
  if (n < 1) throw DomainError("moebius: n must be >= 1");
  int r = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    r = -r;
  }
  if (n > 1) r = -r;
  return r;
}

namespace {

void extend_hecke(GL3Coefficients& t) {
  const long M = t.m_max, N = t.n_max;
  for (long m = 2; m <= M; ++m) t.at(m, 1) = std::conj(t.at(1, m));
  std::vector<int> mu(size_t(std::max(M, 1L) + 1), 0);
  for (long d = 1; d <= M; ++d) mu[size_t(d)] = moebius(d);
  for (long m = 2; m <= M; ++m) {
    for (long n = 2; n <= N; ++n) {
      const long g = std::gcd(m, n);
      cplx s = 0.0;
      for (long d = 1; d <= g; ++d)
        if (g % d == 0 && mu[size_t(d)] != 0) s += double(mu[size_t(d)]) * t.at(m / d, 1) * t.at(1, n / d);
      t.at(m, n) = s;
    }
  }
}

GL3Coefficients blank(long m_max, long n_max) {
  if (m_max < 1 || n_max < 1) throw DomainError("coefficient table: m_max, n_max must be >= 1");
  if (m_max > n_max) throw RangeError("coefficient table: m_max must not exceed n_max");
  GL3Coefficients t;
  t.m_max = m_max;
  t.n_max = n_max;
  t.a.assign(size_t(m_max + 1) * size_t(n_max + 1), 0.0);
  return t;
}

}  // namespace

GL3Coefficients sym_square_coeffs(const HeckeEigenvalues& h, long m_max, long n_max) {
  if (h.n_max() < n_max)
    throw RangeError("sym_square_coeffs: need lambda(p) for p <= " + std::to_string(n_max));
  GL3Coefficients t = blank(m_max, n_max);
  // lambda(k^2) from lambda(p) by lambda(p^{j+1}) = lambda(p) lambda(p^j) - lambda(p^{j-1})
  auto lam_sq = [&](long k) {
    double r = 1.0;
    auto prime_power = [&](long p, int e) {
      double lp = h.lambda[size_t(p)], a0 = 1.0, a1 = lp;
      for (int j = 1; j < 2 * e; ++j) {
        double a2 = lp * a1 - a0;
        a0 = a1;
        a1 = a2;
      }
      r *= a1;
    };
    for (long p = 2; p * p <= k; ++p) {
      if (k % p) continue;
      int e = 0;
      while (k % p == 0) {
        k /= p;
        ++e;
      }
      prime_power(p, e);
    }
    if (k > 1) prime_power(k, 1);
    return r;
  };
  for (long n = 1; n <= n_max; ++n) {
    double s = 0.0;
    for (long d = 1; d * d <= n; ++d)
      if (n % (d * d) == 0) s += lam_sq(n / (d * d));
    t.at(1, n) = s;
  }
  extend_hecke(t);
  t.self_dual = true;
  t.mu = {cplx(0, -2 * h.R), 0.0, cplx(0, 2 * h.R)};
  return t;
}

GL3Coefficients surrogate_gl3_eisenstein(double T, long m_max, long n_max) {
  GL3Coefficients t = blank(m_max, n_max);
  std::vector<cplx> f12(size_t(n_max + 1), 0.0);
  // (n^{2iT} * 1)(n), then convolve with n^{-2iT}
  for (long d1 = 1; d1 <= n_max; ++d1) {
    cplx p = std::polar(1.0, 2.0 * T * std::log(double(d1)));
    for (long k = d1; k <= n_max; k += d1) f12[size_t(k)] += p;
  }
  for (long d3 = 1; d3 <= n_max; ++d3) {
    cplx q = std::polar(1.0, -2.0 * T * std::log(double(d3)));
    for (long k = 1; k * d3 <= n_max; ++k) t.at(1, k * d3) += f12[size_t(k)] * q;
  }
  for (long n = 1; n <= n_max; ++n) t.at(1, n) = cplx(t.at(1, n).real(), 0.0);
  extend_hecke(t);
  t.self_dual = true;
  t.mu = {cplx(0, -2 * T), 0.0, cplx(0, 2 * T)};
  t.polar_caveat = true;
  return t;
}

double gl3_hecke_defect(const GL3Coefficients& t) {
  double worst = 0.0;
  for (long m = 1; m <= t.m_max; ++m) {
    for (long n = 1; n <= t.n_max; ++n) {
      const long g = std::gcd(m, n);
      cplx s = 0.0;
      for (long d = 1; d <= g; ++d)
        if (g % d == 0) s += t(m / d, n / d);
      worst = std::max(worst, std::abs(t(m, 1) * t(1, n) - s));
    }
  }
  return worst;
}

double rs_partial_sum(const GL3Coefficients& t, double x) {
  if (x < 1.0) return 0.0;
  const long X = long(std::floor(x));
  if (X > t.n_max || long(std::floor(std::sqrt(x))) > t.m_max)
    throw RangeError("rs_partial_sum: x = " + std::to_string(x) + " needs m <= " +
                     std::to_string(long(std::sqrt(x))) + ", n <= " + std::to_string(X));
  double s = 0.0;
  for (long m = 1; m * m <= X; ++m)
    for (long n = 1; m * m * n <= X; ++n) s += std::norm(t(m, n));
  return s;
}

double rs_slope(const GL3Coefficients& t, double x0, double x1, int points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < points; ++i) {
    double lx = std::log(x0) + (std::log(x1) - std::log(x0)) * i / (points - 1);
    double ly = std::log(rs_partial_sum(t, std::exp(lx)));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (points * sxy - sx * sy) / (points * sxx - sx * sx);
}

cplx eta_divisor(long n, double t) {
  if (n == 0) throw DomainError("eta_divisor: n = 0");
  n = std::labs(n);
  cplx s = 0.0;
  for (long a = 1; a <= n; ++a)
    if (n % a == 0) s += std::polar(1.0, t * std::log(double(a) / double(n / a)));
  return s;
}

long mod_inverse(long a, long m) {
  long x = 0, x1 = 1;
  long r0 = m, r1 = ((a % m) + m) % m;
  while (r1 != 0) {
    long q = r0 / r1;
    long t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  if (r0 != 1) throw DomainError("mod_inverse: not invertible");
  return ((x % m) + m) % m;
}

double kloosterman(long a, long b, long c) {
  if (c < 1) throw DomainError("kloosterman: c must be >= 1");
  if (c > 100000) throw RangeError("kloosterman: c exceeds 1e5");
  if (c == 1) return 1.0;
  const long am = ((a % c) + c) % c, bm = ((b % c) + c) % c;
  KahanSum s;
  for (long d = 1; d < c; ++d) {
    if (std::gcd(d, c) != 1) continue;
    long e = (am * d + bm * mod_inverse(d, c)) % c;
    s.add(cplx(std::cos(2.0 * kPi * double(e) / double(c)), 0.0));
  }
  return s.value().real();
}

}  // namespace qm
