#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bmtk/grid.hpp"
#include "bmtk/norms.hpp"
#include "bmtk/report.hpp"

namespace bmtk {

/// Everything a run depends on. Serialized into every report, so a run can
/// be repeated from its output alone.
struct RunConfig {
  std::string command;
  GridSpec grid{3, 32, 2.0 * std::numbers::pi};
  SpaceSpec space{Family::BesovMorrey, 0.0, 3.0, 2.0, 2.0};
  int ball_stride = 0;            // 0 selects max(1, N/32)
  bool exhaustive_balls = false;  // stride 1
  std::string input = "bump0";    // builtin name, BMGF path, or "corpus"
  std::string input_b = "bump1";
  std::vector<int> axes{0, 1};
  std::vector<double> lambdas{1.0, 2.0, 4.0, 8.0};
  std::vector<int> sizes{32, 64};
  std::vector<int> levels{3, 4, 5};
  int m = 2;
  double epsilon = 0.01;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  int max_iter = 100;
  double damping = 1.0;
  double epsilon_max = 0.05;
  double delta = 0.001;
  std::vector<int> conservation_sizes{};
  bool export_fields = false;
  std::string out;  // empty: JSON to stdout only
  int threads = 0;

  BallFamily balls() const;
};

Json to_json(const RunConfig& c);
/// Unknown keys and ill-typed values throw UsageError.
RunConfig config_from_json(const Json& j);

const std::vector<std::string>& subcommands();

/// Executes one subcommand and returns its report (already including the
/// config and version). Writes side files under config.out when set.
Json execute(const RunConfig& config);

/// Full command line handling. Returns the process exit code:
/// 0 success, 2 usage or input error, 3 numerical failure.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bmtk
