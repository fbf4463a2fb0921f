#pragma once

#include "hartree/diagnostics.hpp"
#include "hartree/grid.hpp"
#include "hartree/params.hpp"
#include "hartree/solver.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hartree::cli {

enum ExitCode : int {
  kOk = 0,
  kNotConverged = 1,
  kRefused = 2,
  kOutsideTheory = 3,
  kUsage = 64,
  kNoInput = 66,
};

// Malformed or inconsistent configuration (maps to kUsage).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Contents of a run configuration file. Every object rejects unknown keys.
struct RunConfig {
  int N = 3;
  double alpha = 2.0;
  std::optional<double> p;
  std::optional<double> q;
  double L = 8.0;
  std::size_t M = 64;
  std::string init = "gaussian"; // "gaussian" or "random"
  std::uint64_t seed = 0;
  double step0 = 0.5;
  double tol = 1e-6;
  int max_iters = 5000;
  int symmetrize_every = 10;
  bool force = false;
  std::vector<FitWindow> windows; // empty: three staggered default windows
  std::string output_dir;         // empty: must come from --out
};

RunConfig parse_run_config(const std::string &json_text);
// Throws ConfigError when p or q is missing or a value is out of range.
SolveConfig to_solve_config(const RunConfig &rc);

struct SweepAxis {
  double lo;
  double hi;
  int count;
  std::vector<double> values() const;
};

// "p0:p1:n,q0:q1:m" -> inclusive linspaces; n = 1 gives p0 alone.
std::pair<SweepAxis, SweepAxis> parse_sweep_spec(const std::string &spec);

int cmd_check(int N, double alpha, double p, double q, bool json,
              std::ostream &out, std::ostream &err);
int cmd_solve(const std::filesystem::path &config,
              const std::optional<std::filesystem::path> &out_dir, bool verbose,
              std::ostream &out, std::ostream &err);
int cmd_sweep(const std::filesystem::path &config, const std::string &grid_pq,
              const std::optional<std::filesystem::path> &out_dir,
              std::ostream &out, std::ostream &err);

// Full command line, including the program name in argv[0].
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace hartree::cli
