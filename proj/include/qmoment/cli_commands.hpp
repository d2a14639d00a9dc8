#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qmoment/arithmetic.hpp"

namespace qm {

inline constexpr const char* kVersion = "qmoment 0.1.0";

enum ExitCode { kPass = 0, kUsage = 1, kToleranceFailure = 2, kBudget = 3 };

// Unset reals are 0 and take the per-command default.
struct RunConfig {
  std::string command;
  double T = 0.0, M = 0.0, tk = 0.0, tol = 0.0;
  double N = 0.0;
  int r = 1;
  double max_height = 6000.0;
  std::string grid;    // "a,b,c" or "lo:hi:count" (log-spaced)
  std::string coeffs;  // path | surrogate[:T] | zero | trivial
  std::string out;     // empty: stdout
  std::string format = "csv";
  unsigned long seed = 1;

  std::string canonical() const;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> summary;
};

// csv: "# config: ...", "# version: ...", header, rows. json: same fields in one object.
void write_table(const Table& t, const RunConfig& cfg, std::ostream& os);

std::vector<double> parse_grid(const std::string& spec);

// Coefficient table for afe-check and moment-explore; T is the surrogate height when the spec has none.
GL3Coefficients load_coefficients(const std::string& spec, double T, long m_max, long n_max);

int cmd_verify_g_identity(const RunConfig& cfg, Table& out);
int cmd_kernel_scan(const RunConfig& cfg, Table& out);
int cmd_afe_check(const RunConfig& cfg, Table& out);
int cmd_phase_lab(const RunConfig& cfg, Table& out);
int cmd_watson_table(const RunConfig& cfg, Table& out);
int cmd_moment_explore(const RunConfig& cfg, Table& out);

// Parses argv, dispatches, writes the table; returns the exit code.
int run_cli(int argc, char** argv);

}  // namespace qm
