#pragma once

#include <string>
#include <vector>

#include "qmoment/complex_core.hpp"

namespace qm {

enum class Parity { even, odd };
enum class CoeffSource { file, surrogate };

struct HeckeEigenvalues {
  double R = 0.0;
  Parity parity = Parity::even;
  std::vector<double> lambda;  // lambda[n], n = 1..n_max; lambda[0] unused
  CoeffSource source = CoeffSource::file;

  long n_max() const { return long(lambda.size()) - 1; }
  double operator()(long n) const;
};

// Throws HeckeViolation naming (m, n, gcd) for the first pair with
// |lambda(m) lambda(n) - sum_{d | (m,n)} lambda(mn/d^2)| > tol, or (1, 1, 1) when lambda(1) != 1.
void validate_hecke(const HeckeEigenvalues& h, double tol);

// Text format: "# R <x>", "# parity <even|odd>", then "<n> <lambda_n>" with n = 1, 2, ...
// Other lines starting with '#' are comments. Loading validates the Hecke relations at 1e-4.
HeckeEigenvalues load_maass_data(const std::string& path);
void write_maass_data(const HeckeEigenvalues& h, const std::string& path);

// lambda(n) = eta_t(n): Hecke eigenvalues of the Eisenstein series E(z, 1/2 + it)
HeckeEigenvalues eisenstein_hecke(double t, long n_max);

struct GL3Coefficients {
  long m_max = 0, n_max = 0;
  std::vector<cplx> a;  // row-major, (m_max + 1) x (n_max + 1), index 0 unused
  bool self_dual = true;
  std::vector<cplx> mu;
  bool polar_caveat = false;  // L-function has poles (surrogate); Voronoi identities need polar terms

  cplx operator()(long m, long n) const;
  cplx& at(long m, long n) { return a[size_t(m) * size_t(n_max + 1) + size_t(n)]; }
};

// A(1, n) = sum_{d^2 k = n} lambda(k^2), then A(m, n) = sum_{d | (m,n)} mu(d) A(m/d, 1) A(1, n/d).
GL3Coefficients sym_square_coeffs(const HeckeEigenvalues& h, long m_max, long n_max);

// L(s) = zeta(s - 2iT) zeta(s) zeta(s + 2iT): A(1, n) = sum_{d1 d2 d3 = n} d1^{2iT} d3^{-2iT}
GL3Coefficients surrogate_gl3_eisenstein(double T, long m_max, long n_max);

// Max over stored pairs of |A(m,1) A(1,n) - sum_{d | (m,n)} A(m/d, n/d)|.
double gl3_hecke_defect(const GL3Coefficients& t);

// sum_{m^2 n <= x} |A(m, n)|^2
double rs_partial_sum(const GL3Coefficients& t, double x);
// Least-squares slope of log S(x) against log x at `points` log-spaced x in [x0, x1].
double rs_slope(const GL3Coefficients& t, double x0, double x1, int points = 41);

cplx eta_divisor(long n, double t);

// sum_{d mod c, (d,c) = 1} e((a d + b dbar) / c), c <= 1e5
double kloosterman(long a, long b, long c);

long mod_inverse(long a, long m);
int moebius(long n);

}  // namespace qm
