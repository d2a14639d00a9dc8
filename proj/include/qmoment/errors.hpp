#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qm {

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Asymptotic formula used outside its accuracy range.
struct PrecisionError : std::runtime_error {
  double remainder;
  PrecisionError(const std::string& what, double rem)
      : std::runtime_error(what), remainder(rem) {}
};

// Adaptive routine ran out of panels; carries the best partial answer.
struct BudgetExceeded : std::runtime_error {
  std::complex<double> partial;
  double abs_err;
  BudgetExceeded(const std::string& what, std::complex<double> p, double e)
      : std::runtime_error(what), partial(p), abs_err(e) {}
};

struct RangeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RegimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(const std::string& what, int l, int c)
      : std::runtime_error(what + " (line " + std::to_string(l) + ", column " +
                           std::to_string(c) + ")"),
        line(l), column(c) {}
};

struct HeckeViolation : std::runtime_error {
  long m, n, d;
  HeckeViolation(const std::string& what, long m_, long n_, long d_)
      : std::runtime_error(what), m(m_), n(n_), d(d_) {}
};

}  // namespace qm
