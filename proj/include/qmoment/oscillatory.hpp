#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qmoment/complex_core.hpp"

namespace qm {

struct SmoothWeight {
  std::function<cplx(double)> f;
  double lo = 0.0;
  double hi = 1.0;
  double X = 1.0;          // inert scale
  double amplitude = 1.0;  // sup-norm scale

  cplx operator()(double x) const {
    if (x < lo || x > hi) return 0.0;
    return f(x);
  }
};

// Smooth compactly supported bump exp(1 - 1/(1-u^2)) on [lo, hi], peak 1.
SmoothWeight bump_weight(double lo, double hi, double height = 1.0);

// Units of the phase: integrand is e^{i h} (radians) or e(h) = e^{2 pi i h} (cycles).
enum class PhaseUnits { radians, cycles };

struct DerivativeBounds {
  double R = 0.0;  // |h'| >= R
  double Y = 1.0;  // |h^{(j)}| <= Y Q^{-j}
  double Q = 1.0;
};

struct PhaseFunction {
  std::function<double(double)> h;
  std::function<double(double)> dh;
  std::function<double(double)> d2h;
  PhaseUnits units = PhaseUnits::cycles;
  std::optional<DerivativeBounds> bounds;

  double radians_per_unit() const { return units == PhaseUnits::cycles ? 2.0 * kPi : 1.0; }
};

// Adds a constant to the phase.
PhaseFunction shifted(const PhaseFunction& p, double c);

struct OscIntegralResult {
  cplx value;
  double abs_err = 0.0;
  int panels = 0;
  bool converged = true;
};

struct OscOptions {
  int max_panels = 400000;
  double rel_tol = 0.0;  // optional relative target on |value|
};

OscIntegralResult integrate_oscillatory(const SmoothWeight& w, const PhaseFunction& h, double tol,
                                        const OscOptions& opt = {});

// Same engine on an explicit interval with a plain integrand; extra breakpoints
// become panel boundaries.
OscIntegralResult integrate_panels(const std::function<cplx(double)>& f, double a, double b,
                                   const std::function<double(double)>& freq, double tol,
                                   std::vector<double> breaks = {}, const OscOptions& opt = {});

// Roots of dh in [lo, hi]; grid of at least 64 * X points, bisection, Newton to 1e-12.
// Throws DomainError on a degenerate stationary point.
std::vector<double> find_stationary_points(const PhaseFunction& h, double lo, double hi,
                                           double X = 1.0);

cplx stationary_phase_leading(const SmoothWeight& w, const PhaseFunction& h, double xi0);

double decay_certificate(double X, double V, double R, double Q, double Y, double support_length,
                         double A = 3.0);

// Max relative discrepancy of dh, d2h against 5-point finite differences at probes.
double derivative_consistency(const PhaseFunction& h, const std::vector<double>& probes,
                              double scale);

}  // namespace qm
