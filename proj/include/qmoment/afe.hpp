#pragma once

#include <vector>

#include "qmoment/archimedean.hpp"
#include "qmoment/arithmetic.hpp"

namespace qm {

// Completed L at s = 1/2 with mollifier G(s) = exp(s^2).
struct AfeInstance {
  ArchimedeanFactor arch;
  double U = 10.0;
  double eps = 0.01;
  double conductor_scale = 0.0;  // 0: arch.conductor()

  double conductor() const { return conductor_scale > 0.0 ? conductor_scale : arch.conductor(); }
};

// U = max(10, (log T)^2)
AfeInstance make_afe_instance(const ArchimedeanFactor& arch, double T);

struct VValue {
  cplx value;
  double trunc_err = 0.0;  // |Im s| > U
  double quad_err = 0.0;
  double line = 0.0;       // real part of the contour used
};

// (1/2 pi i) int_{eps - iU}^{eps + iU} L(1/2+s)/L(1/2) y^{-s} G(s) ds / s.
// Small y: erfc(log y / 2)/2 plus the regular remainder on Re s = eps.
// Large y: the contour moves right to Re s = log(y/q)/2 (no poles crossed).
VValue afe_weight_V(double y, const AfeInstance& inst);

// Chebyshev table of V in log y on [y0, y1], accurate to tol absolute.
class AfeWeightTable {
 public:
  AfeWeightTable(const AfeInstance& inst, double y0, double y1, double tol = 1e-14);
  double operator()(double y) const;  // real part; imaginary part is zero for self-dual arch
  int nodes() const { return int(vals_.size()); }

 private:
  double l0_, l1_;
  std::vector<double> vals_;
};

struct CentralValueResult {
  cplx value;
  long truncation_n_max = 0;
  double tail_bound = 0.0;
  cplx polar_correction = 0.0;
};

// 2 sum_n A(1,n) n^{-1/2} V(n), or 2 sum_{m,n} A(m,n) lambda(n) / (m n^{1/2}) V(m^2 n) with a twist.
// Tables flagged polar_caveat (shifts {-2iT, 0, 2iT}) get the residues at s = +-1/2, +-1/2 +- 2iT removed.
CentralValueResult afe_central_value(const GL3Coefficients& A, const AfeInstance& inst, double tol,
                                     const HeckeEigenvalues* twist = nullptr);

// residue terms of Lambda(1/2+s) G(s)/s for zeta(s-2iT) zeta(s) zeta(s+2iT), divided by L_inf(1/2)
cplx surrogate_polar_term(double T);

struct TruncationProfile {
  long n_max = 0;     // ceil(T^{2+eps})
  double window = 0;  // |t| <= T^eps
};
TruncationProfile afe_truncation_profile(double T, double eps);

// prod_+- Gamma((1/2+s+-it)/2) / Gamma((1/2+-it)/2) = (t^2/4)^{s/2} (1 + P2(s)/t^2 + P4(s)/t^4 + O(t^-6))
cplx stirling_P2(cplx s);
cplx stirling_P4(cplx s);

}  // namespace qm
