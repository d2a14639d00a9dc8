#pragma once

#include <vector>

#include "qmoment/archimedean.hpp"

namespace qm {

struct TripleSpectralData {
  double tj = 0.0;
  double T = 0.0;
  double tk = 0.0;
};

// |tj+T+tk|/2 + |tj+T-tk|/2 + |tj-T+tk|/2 + |tj-T-tk|/2 + tj + |tj+2T|/2 + |tj-2T|/2 - tk - 2tj - 3T.
// Checked against the piecewise form; RegimeError when tk >= T.
double q_exponent(const TripleSpectralData& d);

//   2tj - 3T - tk    tj >= 2T
//   tj - T - tk      T + tk <= tj < 2T
//   0                T - tk <= tj < T + tk
//   T - tj - tk      tj < T - tk
double q_exponent_piecewise(const TripleSpectralData& d);

// log H(tj; T, tk) with
// H = L(1/2, phi_k x phi x phi_j)^{1/2} L(1/2, phi_j)^{1/2} L(1/2, Sym^2 phi x phi_j)^{1/2}
//     / (L(1, Sym^2 phi_k)^{1/2} L(1, Sym^2 phi_j) L(1, Sym^2 phi)^{3/2}),  all archimedean factors.
double watson_arch_weight(const TripleSpectralData& d);

// Finite part times archimedean factor at a point; log-space modulus.
struct CompletedLValue {
  cplx finite_part = 1.0;
  ArchimedeanFactor arch;
  cplx point = 0.5;

  cplx log_value() const;  // log finite_part + log L_inf(point)
};

// Lambda(1/2, triple) / (8 Lambda(1, Sym^2 phi_k) Lambda(1, Sym^2 phi) Lambda(1, Sym^2 phi_j))
double watson_inner_product_sq(const CompletedLValue& triple, const CompletedLValue& sym_k,
                               const CompletedLValue& sym_phi, const CompletedLValue& sym_j);

enum class InnerProductCase {
  cusp_eisenstein,      // <phi_k phi, E_tau>    = rho_k rho_phi Lambda(1/2 - i tau, phi_k x phi) / (2 Lambda(1 - 2i tau))
  eisenstein_square,    // <E_tau, phi^2>        = rho_phi^2 xi(1/2 + i tau) Lambda(1/2 + i tau, Sym^2 phi) / (2 Lambda(1 + 2i tau))
  eisenstein_cusp,      // <E_t phi, phi_j>      = rho_j rho_phi Lambda(1/2 + it, phi_j x phi) / (2 Lambda(1 + 2it))
  eisenstein_eisenstein // <E_t phi, E_tau>      = rho_t rho_phi Lambda(1/2 - i tau + it, phi) Lambda(1/2 - i tau - it, phi) / (2 Lambda(1 - 2i tau))
};

// rho_a rho_b prod(numerators) / (2 denominator); the case fixes the number of numerator factors.
cplx rankin_selberg_inner(InnerProductCase c, const std::vector<CompletedLValue>& numerators, cplx rho_a, cplx rho_b,
                          const CompletedLValue& denominator);

// log |rho_t(1)|^2 = log cosh(pi t) - 2 log |zeta(1 + 2it)|
double log_rho_t_sq(double t);

// pi^{-s/2} Gamma(s/2) zeta(s) as a CompletedLValue
CompletedLValue completed_zeta(cplx s);

}  // namespace qm
