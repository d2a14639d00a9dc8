#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "qmoment/cli_commands.hpp"

using namespace qm;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("qmoment_cli_" + name)).string();
}

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "qmoment");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run_cli(int(argv.size()), argv.data());
}

std::string slurp(const std::string& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli-harness") {

TEST_CASE("grid parsing") {
  CHECK(parse_grid("") .empty());
  CHECK(parse_grid("1,2.5,3") == std::vector<double>{1.0, 2.5, 3.0});
  auto g = parse_grid("1:100:3");
  REQUIRE(g.size() == 3);
  CHECK(g[1] == doctest::Approx(10.0));
  CHECK(g[2] == doctest::Approx(100.0));
  CHECK_THROWS(parse_grid("1:2"));
}

TEST_CASE("verify-g-identity table and determinism") {
  RunConfig cfg;
  cfg.command = "verify-g-identity";
  cfg.T = 5.0;
  Table t;
  CHECK(cmd_verify_g_identity(cfg, t) == kPass);
  CHECK(t.columns.size() == 5);
  CHECK(t.rows.size() == 50);
  std::ostringstream a, b;
  write_table(t, cfg, a);
  Table t2;
  cmd_verify_g_identity(cfg, t2);
  write_table(t2, cfg, b);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("# config:", 0) == 0);
  CHECK(a.str().find(kVersion) != std::string::npos);

  cfg.format = "json";
  std::ostringstream j;
  write_table(t, cfg, j);
  auto doc = nlohmann::json::parse(j.str());
  CHECK(doc["rows"].size() == 50);
  CHECK(doc["columns"].size() == 5);
}

TEST_CASE("coefficient sources") {
  GL3Coefficients z = load_coefficients("zero", 5.0, 1, 16);
  for (long n = 1; n <= 16; ++n) CHECK(std::abs(z(1, n)) == 0.0);
  GL3Coefficients t = load_coefficients("trivial", 5.0, 1, 16);
  CHECK(std::abs(t(1, 1) - 1.0) == 0.0);
  GL3Coefficients s = load_coefficients("surrogate:0", 5.0, 1, 16);
  CHECK(std::abs(s(1, 4) - 6.0) < 1e-12);
  GL3Coefficients f = load_coefficients(std::string(QM_DATA_DIR) + "/synthetic_hecke.txt", 0.0, 2, 100);
  CHECK(std::abs(f(1, 1) - 1.0) < 1e-12);
  CHECK_THROWS(load_coefficients(temp_path("missing.txt"), 5.0, 1, 16));
}

TEST_CASE("exit codes") {
  const std::string out = temp_path("out.csv");
  CHECK(run({"no-such-command"}) == kUsage);
  CHECK(run({"verify-g-identity", "--bogus", "1"}) == kUsage);
  CHECK(run({"verify-g-identity", "--T", "5", "--out", out}) == kPass);
  CHECK(slurp(out).find("max_rel_err") != std::string::npos);
  CHECK(run({"verify-g-identity", "--T", "5", "--tol", "1e-18", "--out", out}) == kToleranceFailure);
  CHECK(run({"afe-check", "--coeffs", temp_path("missing.txt"), "--out", out}) == kUsage);
  CHECK(run({"afe-check", "--coeffs", std::string(QM_DATA_DIR) + "/corrupted_hecke.txt", "--out", out}) == kUsage);
  CHECK(run({"moment-explore", "--T", "50", "--N", "1e9", "--out", out}) == kUsage);
  CHECK(run({"phase-lab", "--max-height", "50", "--out", out}) == kBudget);
  CHECK(run({"watson-table", "--T", "100", "--tk", "200", "--out", out}) == kUsage);
  CHECK(run({"watson-table", "--out", out, "--format", "json"}) == kPass);
  auto doc = nlohmann::json::parse(slurp(out));
  CHECK(doc["rows"].size() == 41);
  std::filesystem::remove(out);
}

}
