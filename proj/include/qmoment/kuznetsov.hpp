#pragma once

#include "qmoment/oscillatory.hpp"

namespace qm {

struct SpectralWindow {
  double T = 100.0;
  double M = 10.0;
  // T^{1/3} <= M <= T^{1/2}
  bool paper_regime() const;
};

struct KernelEvalConfig {
  double t_cutoff = 0.0;  // 0: 8 M sqrt(log(1/tol))
  double u_cutoff = 60.0; // discard path pieces where the integrand is below e^{-u_cutoff}
  double tol = 1e-10;

  double t_half_width(const SpectralWindow& win) const;
};

double h_gaussian(double t, const SpectralWindow& win);

double kernel_H(const SpectralWindow& win, const KernelEvalConfig& cfg = {});

// Exponentially scaled Bessel functions of real argument x > 0:
// J_nu(x) e^{-pi |Im nu| / 2} and K_nu(x) e^{pi |Im nu| / 2}.
cplx bessel_J_scaled(cplx nu, double x, double tol = 1e-13);
cplx bessel_K_scaled(cplx nu, double x, double tol = 1e-13);

cplx bessel_J_imag_order(cplx nu, double x);
cplx bessel_K_imag_order(cplx nu, double x);

// Classical Schlaefli form, direct. Accurate only while |Im nu| is small.
cplx bessel_J_schlafli(cplx nu, double x);

OscIntegralResult kernel_Hplus(double x, const SpectralWindow& win, const KernelEvalConfig& cfg = {});
OscIntegralResult kernel_Hminus(double x, const SpectralWindow& win, const KernelEvalConfig& cfg = {});

// Integrands of the defining t-integrals (full line, before folding to t >= 0).
cplx hplus_integrand(double t, double x, const SpectralWindow& win);
cplx hminus_integrand(double t, double x, const SpectralWindow& win);

}  // namespace qm
