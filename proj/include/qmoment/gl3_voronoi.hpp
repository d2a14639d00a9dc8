#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "qmoment/archimedean.hpp"
#include "qmoment/arithmetic.hpp"
#include "qmoment/oscillatory.hpp"

namespace qm {

// G^{+-}(s) = L(1-s)/L(s) +- i^{-3} L(2-s)/L(1+s), L = Sym^2 Gamma factor with shifts {-2iT, 0, 2iT}.
// Evaluated in MPFR with enough digits to survive the cancellation between the two quotients.
cplx G_pm_ratio(cplx s, double T, int sign);

struct GClosedValue {
  cplx value;
  cplx log_value;  // log |G| + i arg G
  bool overflow_risk = false;
};

// +-i pi^{-3+3s} 2^{3s-2} Gamma(1-s+2iT) Gamma(1-s) Gamma(1-s-2iT)
//   * (e(+-3s/4) + e(-+s/4)(1 + e(iT) + e(-iT))), assembled in log space.
GClosedValue G_pm_closed(cplx s, double T, int sign);

// L(1-s)/L(s) for the Sym^2 factor, log space.
cplx sym2_gamma_ratio_log(cplx s, double T);

// int_0^inf w(x) x^{s-1} dx through the oscillatory engine.
cplx mellin(const SmoothWeight& w, cplx s, double tol = 1e-12);

// Mellin transform of w sampled on the uniform line sigma + i(tau0 + j dtau), j < count.
class MellinLine {
 public:
  MellinLine(const SmoothWeight& w, double sigma, double tau0, double dtau, int count, double tol = 1e-13);
  const std::vector<cplx>& values() const { return vals_; }
  int nodes() const { return nodes_; }

 private:
  std::vector<cplx> vals_;
  int nodes_ = 0;
};

struct VerticalLineConfig {
  double sigma = -3.0;
  double height = 0.0;  // 0: from max(200, 10T) upward until the sampled envelope is below tol/100 of its peak
  double dtau = 0.05;
  double tol = 1e-10;
  double max_height = 6000.0;
};

struct TransformResult {
  cplx value;
  double abs_err = 0.0;
  double height = 0.0;
  bool truncation_ok = true;
};

// (1/2 pi i) int_{(sigma)} K(s) w~(s) y^{s+power} ds on a truncated uniform grid.
class VerticalLineTransform {
 public:
  VerticalLineTransform(const SmoothWeight& w, std::function<cplx(cplx)> log_kernel, double T,
                        double power, const VerticalLineConfig& cfg);
  TransformResult operator()(double y) const;
  double height() const { return height_; }
  int grid_points() const { return int(prod_.size()); }

 private:
  std::vector<cplx> prod_;  // K(s_j) w~(s_j) dtau / (2 pi)
  double sigma_, tau0_ = 0.0, dtau_, power_, height_ = 0.0, tail_ = 0.0;
  bool trunc_ok_;
};

// W^{+-}(y) = (1/2 pi i) int_{(sigma)} G^{+-}(s) w~(s) y^{s-1} ds
VerticalLineTransform hankel_table(const SmoothWeight& w, int sign, double T,
                                   const VerticalLineConfig& cfg = {});
TransformResult hankel_W(double y, const SmoothWeight& w, int sign, double T,
                         const VerticalLineConfig& cfg = {});

// W(n) = (1/2 pi i) int_{(sigma)} w~(s) L(1-s)/L(s) n^s ds, sigma < 3/4
VerticalLineTransform fe_table(const SmoothWeight& w, double T, const VerticalLineConfig& cfg);
TransformResult fe_transform_W(double n, const SmoothWeight& w, double T, const VerticalLineConfig& cfg);

struct VoronoiSetup {
  double N = 1e4;
  int r = 1;
  double b = 200.0;
  double T = 30.0;
  int sign = 1;

  double B() const;
};

struct AsymptoticW {
  double modulus_scale = 0.0;
  double phase = 0.0;  // h_2(xi_0), radians
  double xi0 = 0.0;
  bool valid = false;
};

double lemma_w_xi0(double y, const VoronoiSetup& v);
AsymptoticW asymptotic_W_main(double y, const VoronoiSetup& v);

// V(x/N) e(b sqrt(x/N)), V a unit bump on [1, 2].
SmoothWeight lemma_w_weight(double N, double b);

// y-range whose stationary point xi_0 = |tau|/|b| lies in [pi, pi sqrt 2], i.e. x in [N, 2N]
std::pair<double, double> lemma_w_bulk(const VoronoiSetup& v);
// y-range whose stationary point has x / N in [x0, x1]
std::pair<double, double> lemma_w_range(const VoronoiSetup& v, double x0, double x1);
// part of the bulk where the bump is at least half its peak: x / N in [1.180, 1.820]
std::pair<double, double> lemma_w_core(const VoronoiSetup& v);

struct LemmaISetup {
  double N = 2e4;
  double T = 30.0;
  double M = 3.8959;  // 30^0.4
  int r = 1;
  int sigma1 = 1;
};

// V(x/N) int e(sigma1 2 sqrt(x) cosh(v) / r) e(vT/pi) g(Mv) dv, g(u) = exp(-u^2).
// The v-integral is tabulated once (Chebyshev in 2 sqrt(x)/r); interpolation error <= 1e-11 relative.
SmoothWeight lemma_i_weight(const LemmaISetup& s);
// I^{+-}(n, r) = W^{+-}_Omega(n / r^3) with Omega = lemma_i_weight
VerticalLineTransform lemma_i_table(const LemmaISetup& s, int sign, const VerticalLineConfig& cfg = {});
// 2 pi (-+ n/r -+ 37 T^2 r / (12 pi^2 n)), radians
double lemma_i_phase(double n, const LemmaISetup& s, int sign);
// n-range of the v = 0 stationary point: r^3 * lemma_w_bulk
std::pair<double, double> lemma_i_bulk(const LemmaISetup& s);
std::pair<double, double> lemma_i_core(const LemmaISetup& s);

struct LemmaW1Setup {
  double N = 1e4;
  double T = 30.0;
  double M = 3.8959;
  int r = 1;
  int sign = 1;  // +1: e(-37 T^2 r / (12 pi^2 y)), -1: e(+...)
  double lo = 0.5, hi = 3.0;  // support of V in y / sqrt N
  double bump_power = 3.0;    // V = exp(1 - (1 - u^2)^{-p}), u linear in log y over the support
  double Y() const;  // 37 T^2 r / (6 pi sqrt N)
};

// e(-+37 T^2 r / (12 pi^2 y)) V(y / sqrt N)
SmoothWeight lemma_w1_weight(const LemmaW1Setup& s);
// n(xi) = Y xi^2 (4T^2 - Y^2 xi^2) / (8 pi^3 sqrt N) over xi = sqrt N / y in [1/hi, 1/lo]
std::pair<double, double> lemma_w1_bulk(const LemmaW1Setup& s);
// T^{3/2} / M^{1/2}
double lemma_w1_scale(const LemmaW1Setup& s);

struct VoronoiTruncation {
  long n_dual_max = 0;  // 0: run until |W+-(n / r^3)| stays below tol of its maximum for 64 consecutive n
  double tol = 1e-10;
};

struct VoronoiCheck {
  cplx lhs, rhs;
  double gap = 0.0;  // |lhs - rhs| / (|lhs| + |rhs|), 0 when both vanish
  long n_dual = 0;
  double rhs_err = 0.0;
};

// sum_{n2 | r} sum_{n1} n2 A(n1, n2) S(n1, abar, r/n2) w(n1 n2^2)
//   vs sum_{+-} sum_n A(1, n) / r e(+-a n / r) W+-(n / r^3)
VoronoiCheck voronoi_identity_check(const GL3Coefficients& A, long a, long r, const SmoothWeight& w, double T,
                                    const VoronoiTruncation& tr = {}, const VerticalLineConfig& cfg = {0.5});

// sum_k c_k x^{i theta_k} exp(-log^2(x/X) / (2 width^2)), cut where the Gaussian is below 1e-17,
// with c chosen so the Mellin transform vanishes at s = 0, 1, +-2iT, 1 +- 2iT.
SmoothWeight pole_free_weight(double X, double width, double T);

}  // namespace qm
