#include "qmoment/mp_gamma.hpp"

#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <map>

namespace qm {

namespace {

using boost::multiprecision::mpfr_float;

struct Mc {
  mpfr_float re, im;
};

Mc add(const Mc& a, const Mc& b) { return {a.re + b.re, a.im + b.im}; }
Mc sub(const Mc& a, const Mc& b) { return {a.re - b.re, a.im - b.im}; }
Mc mul(const Mc& a, const Mc& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Mc scale(const Mc& a, const mpfr_float& x) { return {a.re * x, a.im * x}; }
Mc inv(const Mc& a) {
  mpfr_float d = a.re * a.re + a.im * a.im;
  return {a.re / d, -a.im / d};
}
mpfr_float absq(const Mc& a) { return a.re * a.re + a.im * a.im; }
Mc mlog(const Mc& a) { return {log(sqrt(absq(a))), atan2(a.im, a.re)}; }
Mc mexp(const Mc& a) {
  mpfr_float m = exp(a.re);
  return {m * cos(a.im), m * sin(a.im)};
}
Mc from(cplx z) { return {mpfr_float(z.real()), mpfr_float(z.imag())}; }

// B_{2k}/(2k(2k-1)) for k = 1..K at the current precision.
const std::vector<mpfr_float>& stirling_coeffs(int digits, int K) {
  static std::map<int, std::vector<mpfr_float>> cache;
  auto& v = cache[digits];
  if (int(v.size()) >= K) return v;
  mpfr_float pi = boost::math::constants::pi<mpfr_float>();
  mpfr_float twopi2 = 4 * pi * pi;
  v.clear();
  // B_{2k} = (-1)^{k+1} 2 (2k)! zeta(2k) / (2 pi)^{2k}
  mpfr_float fact = 2;  // (2k)!
  mpfr_float pw = twopi2;
  for (int k = 1; k <= K; ++k) {
    mpfr_float z;
    mpfr_zeta_ui(z.backend().data(), 2 * k, MPFR_RNDN);
    mpfr_float b = 2 * fact * z / pw;
    if (k % 2 == 0) b = -b;
    v.push_back(b / (mpfr_float(2 * k) * mpfr_float(2 * k - 1)));
    fact *= mpfr_float(2 * k + 1) * mpfr_float(2 * k + 2);
    pw *= twopi2;
  }
  return v;
}

// log Gamma(z) modulo 2 pi i.
Mc log_gamma_mp(Mc z, int digits) {
  const double R = 0.5 * digits + 10.0;
  Mc prod{mpfr_float(1), mpfr_float(0)};
  bool shifted = false;
  while (z.re < 0 || absq(z) < R * R) {
    prod = mul(prod, z);
    z.re += 1;
    shifted = true;
  }
  mpfr_float pi = boost::math::constants::pi<mpfr_float>();
  Mc lz = mlog(z);
  Mc res = sub(mul({z.re - mpfr_float(0.5), z.im}, lz), z);
  res.re += log(2 * pi) / 2;
  const int K = int(std::ceil(3.2 * R)) + 4;
  const auto& c = stirling_coeffs(digits, K);
  Mc w = inv(z);
  Mc w2 = mul(w, w);
  Mc p = w;
  mpfr_float tiny = pow(mpfr_float(10), -(digits + 5));
  for (int k = 0; k < K; ++k) {
    Mc t = scale(p, c[k]);
    res = add(res, t);
    if (absq(t) < tiny * tiny) break;
    p = mul(p, w2);
  }
  if (shifted) res = sub(res, mlog(prod));
  return res;
}

bool is_pole(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace

MpSumResult gamma_term_sum_mp(const std::vector<GammaTerm>& terms, int digits) {
  const unsigned old = mpfr_float::default_precision();
  mpfr_float::default_precision(digits);
  mpfr_float logpi = log(boost::math::constants::pi<mpfr_float>());
  mpfr_float log2 = log(mpfr_float(2));
  Mc total{mpfr_float(0), mpfr_float(0)};
  mpfr_float maxterm = 0;
  for (const auto& t : terms) {
    bool zero = false;
    for (cplx d : t.den)
      if (is_pole(d)) zero = true;
    for (cplx n : t.num)
      if (is_pole(n)) {
        mpfr_float::default_precision(old);
        throw DomainError("gamma_term_sum_mp: Gamma pole in numerator");
      }
    if (zero) continue;
    Mc L = add(scale(from(t.pi_exp), logpi), scale(from(t.two_exp), log2));
    for (cplx n : t.num) L = add(L, log_gamma_mp(from(n), digits));
    for (cplx d : t.den) L = sub(L, log_gamma_mp(from(d), digits));
    Mc v = mul(from(t.coeff), mexp(L));
    mpfr_float a = sqrt(absq(v));
    if (a > maxterm) maxterm = a;
    total = add(total, v);
  }
  MpSumResult r;
  r.value = cplx(total.re.convert_to<double>(), total.im.convert_to<double>());
  r.max_term = maxterm.convert_to<double>();
  r.digits = digits;
  mpfr_float::default_precision(old);
  return r;
}

MpSumResult gamma_term_sum_adaptive(const std::vector<GammaTerm>& terms, double rel_target) {
  int digits = 40;
  const int want = int(std::ceil(-std::log10(rel_target))) + 8;
  for (;;) {
    MpSumResult r = gamma_term_sum_mp(terms, digits);
    double a = std::abs(r.value);
    int lost = 0;
    if (r.max_term == 0.0) return r;
    if (a == 0.0)
      lost = digits;
    else
      lost = int(std::ceil(std::log10(r.max_term / a)));
    if (lost + want <= digits) return r;
    if (digits >= 4000) return r;
    digits = std::max(lost + want + 20, 2 * digits);
  }
}

}  // namespace qm
