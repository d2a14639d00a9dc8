#include "qmoment/afe.hpp"

#include <algorithm>
#include <cmath>

#include "qmoment/errors.hpp"

namespace qm {

AfeInstance make_afe_instance(const ArchimedeanFactor& arch, double T) {
  AfeInstance inst;
  inst.arch = arch;
  const double lt = std::log(std::max(T, 1.0));
  inst.U = std::max(10.0, lt * lt);
  return inst;
}

VValue afe_weight_V(double y, const AfeInstance& inst) {
  if (!(y > 0.0)) throw DomainError("afe_weight_V: y must be positive");
  if (inst.U < 10.0) throw DomainError("afe_weight_V: U must be >= 10");
  const double ly = std::log(y);
  const double lq = std::log(y / inst.conductor());
  const bool shifted = 0.5 * lq > 0.5;
  const double c = shifted ? 0.5 * lq : inst.eps;
  const double h = 0.02;
  const int K = int(std::ceil(inst.U / h));
  KahanSum full, coarse;
  double edge = 0.0;
  for (int k = -K; k <= K; ++k) {
    const double t = std::min(std::max(k * h, -inst.U), inst.U);
    const cplx s(c, t);
    const cplx g = std::exp(s * s - s * ly) / s;
    if (!std::isfinite(g.real()) && std::abs(g) != 0.0) continue;
    const cplx R = std::exp(inst.arch.log_ratio(0.5 + s, 0.5));
    cplx f = shifted ? R * g : (R - 1.0) * g;
    const double wgt = (k == -K || k == K) ? 0.5 : 1.0;
    full.add(wgt * f);
    if ((k + K) % 2 == 0) coarse.add((k == -K || k == K ? 1.0 : 2.0) * f);
    if (k == K || k == -K) edge = std::max(edge, std::abs(R) + 1.0);
  }
  VValue v;
  v.line = c;
  v.value = full.value() * (h / (2.0 * kPi));
  if (!shifted) v.value += 0.5 * std::erfc(0.5 * ly);
  v.quad_err = std::abs(full.value() - coarse.value()) * (h / (2.0 * kPi));
  v.trunc_err = edge * std::exp(c * c - inst.U * inst.U - c * ly) / (2.0 * kPi * inst.U * inst.U);
  return v;
}

AfeWeightTable::AfeWeightTable(const AfeInstance& inst, double y0, double y1, double tol)
    : l0_(std::log(y0)), l1_(std::log(y1)) {
  if (!(y0 > 0.0 && y1 > y0)) throw DomainError("AfeWeightTable: need 0 < y0 < y1");
  auto node = [&](int j, int n) { return 0.5 * (l0_ + l1_) + 0.5 * (l1_ - l0_) * std::cos(kPi * j / n); };
  auto eval = [&](double l) { return afe_weight_V(std::exp(l), inst).value.real(); };
  int n = 32;
  double prev = 1e300;
  vals_.resize(n + 1);
  for (int j = 0; j <= n; ++j) vals_[j] = eval(node(j, n));
  for (;;) {
    // nested Chebyshev-Lobatto grid: even nodes of 2n are the nodes of n
    std::vector<double> next(2 * n + 1);
    double err = 0.0, scale = 1e-300;
    for (int j = 0; j <= 2 * n; ++j) {
      if (j % 2 == 0) {
        next[j] = vals_[j / 2];
      } else {
        next[j] = eval(node(j, 2 * n));
        err = std::max(err, std::abs(next[j] - (*this)(std::exp(node(j, 2 * n)))));
      }
      scale = std::max(scale, std::abs(next[j]));
    }
    vals_ = std::move(next);
    n *= 2;
    if (err <= tol * std::max(scale, 1.0)) break;
    // evaluation noise floor
    if (err > 0.5 * prev && err <= 1e-12 * std::max(scale, 1.0)) break;
    prev = err;
    if (n >= 4096) throw BudgetExceeded("AfeWeightTable: Chebyshev table did not converge", 0.0, err);
  }
}

double AfeWeightTable::operator()(double y) const {
  const double l = std::log(y);
  if (l < l0_ - 1e-12 || l > l1_ + 1e-12) throw RangeError("AfeWeightTable: y outside table");
  const int n = int(vals_.size()) - 1;
  const double x = (2.0 * l - l0_ - l1_) / (l1_ - l0_);
  double num = 0.0, den = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double xj = std::cos(kPi * j / n);
    if (x == xj) return vals_[j];
    double w = ((j % 2) ? -1.0 : 1.0) / (x - xj);
    if (j == 0 || j == n) w *= 0.5;
    num += w * vals_[j];
    den += w;
  }
  return num / den;
}

namespace {

cplx log_xi(cplx s) { return -0.5 * s * kLogPi + log_gamma(0.5 * s) + std::log(zeta(s)); }

}  // namespace

cplx surrogate_polar_term(double T) {
  if (!(std::abs(T) > 1e-6)) throw DomainError("surrogate_polar_term: T must be nonzero (simple poles)");
  const double d[3] = {-2.0 * T, 0.0, 2.0 * T};
  KahanSum p;
  for (int i = 0; i < 3; ++i) {
    // Lambda(s') = prod_d xi(s' + i d): poles at s' = 1 - i d_i (residue prod xi(1 + i(d - d_i)))
    // and s' = -i d_i (residue -prod xi(i(d - d_i)) = -prod xi(1 - i(d - d_i)))
    cplx lr1 = 0.0, lr0 = 0.0;
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      lr1 += log_xi(cplx(1.0, d[j] - d[i]));
      lr0 += log_xi(cplx(1.0, -(d[j] - d[i])));
    }
    const cplx r1(0.5, -d[i]), r0(-0.5, -d[i]);
    p.add(std::exp(lr1 + r1 * r1) / r1);
    p.add(-std::exp(lr0 + r0 * r0) / r0);
  }
  return p.value() / arch_sym2(T).value(0.5);
}

CentralValueResult afe_central_value(const GL3Coefficients& A, const AfeInstance& inst, double tol,
                                     const HeckeEigenvalues* twist) {
  const double q = inst.conductor();
  CentralValueResult out;
  // Rankin-Selberg mass of the summed coefficients, extrapolated as x^{3/2} past the table
  const long avail = twist ? std::min(A.n_max, twist->n_max()) : A.n_max;
  std::vector<double> rs(size_t(avail + 1), 0.0);
  for (long n = 1; n <= avail; ++n) {
    double a = std::norm(A(1, n));
    if (twist) a *= (*twist)(n) * (*twist)(n);
    rs[size_t(n)] = rs[size_t(n - 1)] + a;
  }
  auto mass = [&](double x) {
    if (x <= double(avail)) return rs[size_t(std::max(1L, long(x)))];
    return rs[size_t(avail)] * std::pow(x / double(avail), 1.5);
  };
  auto tail = [&](double N) {
    double b = 0.0;
    for (int k = 0; k < 60; ++k) {
      const double x = N * std::ldexp(1.0, k);
      const double v = std::abs(afe_weight_V(x, inst).value);
      const double term = 2.0 * v * std::sqrt(2.0 * mass(2.0 * x));
      b += term;
      if (k > 3 && term < 1e-3 * b) break;
    }
    return b;
  };
  double N = std::max(8.0, q);
  double tb = tail(N);
  while (tb > tol) {
    N *= 1.5;
    tb = tail(N);
    if (N > 1e9) throw BudgetExceeded("afe_central_value: truncation did not converge", 0.0, tb);
  }
  const long nmax = long(std::ceil(N));
  if (nmax > A.n_max || (twist && nmax > twist->n_max()))
    throw RangeError("afe_central_value: need coefficients through n = " + std::to_string(nmax));
  out.truncation_n_max = nmax;
  out.tail_bound = tb;
  const AfeWeightTable V(inst, 1.0, double(nmax) + 1.0, 1e-14);
  KahanSum s;
  if (!twist) {
    for (long n = 1; n <= nmax; ++n) s.add(A(1, n) * (V(double(n)) / std::sqrt(double(n))));
  } else {
    const long mtop = long(std::sqrt(double(nmax)));
    if (mtop > A.m_max) throw RangeError("afe_central_value: need A(m, n) for m <= " + std::to_string(mtop));
    for (long m = 1; m <= mtop; ++m)
      for (long n = 1; m * m * n <= nmax; ++n)
        s.add(A(m, n) * ((*twist)(n) * V(double(m * m * n)) / (double(m) * std::sqrt(double(n)))));
  }
  out.value = 2.0 * s.value();
  if (A.polar_caveat && !twist) {
    if (A.mu.size() != 3) throw DomainError("afe_central_value: polar correction needs shifts {-2iT, 0, 2iT}");
    out.polar_correction = -surrogate_polar_term(0.5 * A.mu[2].imag());
    out.value += out.polar_correction;
  }
  return out;
}

TruncationProfile afe_truncation_profile(double T, double eps) {
  if (!(T > 0.0 && eps >= 0.0)) throw DomainError("afe_truncation_profile: need T > 0, eps >= 0");
  TruncationProfile p;
  p.n_max = long(std::ceil(std::pow(T, 2.0 + eps) - 1e-9));
  p.window = std::pow(T, eps);
  return p;
}

cplx stirling_P2(cplx s) { return s * (4.0 * s * s - 6.0 * s - 1.0) / 24.0; }

cplx stirling_P4(cplx s) {
  const cplx p = (((80.0 * s - 368.0) * s + 124.0) * s + 548.0) * s + 21.0;
  return s * (s - 2.0) * p / 5760.0;
}

}  // namespace qm
