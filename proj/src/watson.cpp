#include "qmoment/watson.hpp"

#include <cmath>

#include "qmoment/errors.hpp"

namespace qm {

double q_exponent_piecewise(const TripleSpectralData& d) {
  const long double tj = d.tj, T = d.T, tk = d.tk;
  if (!(tk < T)) throw RegimeError("q_exponent: requires tk < T");
  if (tj >= 2 * T) return double(2 * tj - 3 * T - tk);
  if (tj >= T + tk) return double(tj - T - tk);
  if (tj >= T - tk) return 0.0;
  return double(T - tj - tk);
}

double q_exponent(const TripleSpectralData& d) {
  // extended precision keeps the two forms within an ulp of the result
  const long double tj = d.tj, T = d.T, tk = d.tk;
  if (!(tk < T)) throw RegimeError("q_exponent: requires tk < T");
  const long double s = std::fabs(tj + T + tk) + std::fabs(tj + T - tk) + std::fabs(tj - T + tk) +
                        std::fabs(tj - T - tk) + std::fabs(tj + 2 * T) + std::fabs(tj - 2 * T);
  const double q = double(s / 2 + tj - tk - 2 * tj - 3 * T);
  if (tj >= 0.0 && tk >= 0.0) {
    const double p = q_exponent_piecewise(d);
    if (std::abs(p - q) > 1e-12 * (1.0 + std::abs(d.tj) + d.T))
      throw PrecisionError("q_exponent: absolute-value and piecewise forms disagree", p - q);
  }
  return q;
}

double watson_arch_weight(const TripleSpectralData& d) {
  if (!(d.tj > 0.0 && d.T > 0.0 && d.tk >= 0.0)) throw DomainError("watson_arch_weight: need tj, T > 0, tk >= 0");
  const ArchimedeanFactor tri = arch_triple(d.tk, d.T, d.tj), gj = arch_gl2(d.tj), s2j = arch_sym2_gl2(d.T, d.tj);
  const ArchimedeanFactor sk = arch_sym2(d.tk), sjj = arch_sym2(d.tj), sp = arch_sym2(d.T);
  for (const auto* a : {&tri, &gj, &s2j})
    if (a->pole_distance_at(0.5) < 1e-8) throw DomainError("watson_arch_weight: Gamma pole at s = 1/2");
  double l = 0.5 * tri.log_value(0.5).real() + 0.5 * gj.log_value(0.5).real() + 0.5 * s2j.log_value(0.5).real();
  l -= 0.5 * sk.log_value(1.0).real() + sjj.log_value(1.0).real() + 1.5 * sp.log_value(1.0).real();
  return l;
}

cplx CompletedLValue::log_value() const {
  if (finite_part == 0.0) return cplx(-INFINITY, 0.0);
  cplx l = std::log(finite_part);
  if (!arch.mu.empty()) l += arch.log_value(point);
  return l;
}

double watson_inner_product_sq(const CompletedLValue& triple, const CompletedLValue& sym_k,
                               const CompletedLValue& sym_phi, const CompletedLValue& sym_j) {
  for (const auto* c : {&sym_k, &sym_phi, &sym_j})
    if (c->finite_part == 0.0) throw DomainError("watson_inner_product_sq: zero denominator");
  if (triple.finite_part == 0.0) return 0.0;
  const cplx l = triple.log_value() - std::log(8.0) - sym_k.log_value() - sym_phi.log_value() - sym_j.log_value();
  return std::exp(l).real();
}

cplx rankin_selberg_inner(InnerProductCase c, const std::vector<CompletedLValue>& numerators, cplx rho_a, cplx rho_b,
                          const CompletedLValue& denominator) {
  const size_t need = (c == InnerProductCase::eisenstein_square || c == InnerProductCase::eisenstein_eisenstein) ? 2 : 1;
  if (numerators.size() != need)
    throw DomainError("rankin_selberg_inner: expected " + std::to_string(need) + " numerator factors");
  if (denominator.finite_part == 0.0) throw DomainError("rankin_selberg_inner: zero denominator");
  if (rho_a == 0.0 || rho_b == 0.0) return 0.0;
  cplx l = std::log(rho_a) + std::log(rho_b) - std::log(2.0) - denominator.log_value();
  for (const auto& n : numerators) {
    if (n.finite_part == 0.0) return 0.0;
    l += n.log_value();
  }
  return std::exp(l);
}

double log_rho_t_sq(double t) {
  const double a = kPi * std::abs(t);
  const double lcosh = a + std::log1p(std::exp(-2.0 * a)) - kLn2;
  return lcosh - 2.0 * std::log(std::abs(zeta(cplx(1.0, 2.0 * t))));
}

CompletedLValue completed_zeta(cplx s) {
  CompletedLValue c;
  c.finite_part = zeta(s);
  c.arch = arch_zeta();
  c.point = s;
  return c;
}

}  // namespace qm
