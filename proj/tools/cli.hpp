#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace asygeo::cli {

enum class Command {
  kCap,
  kCapSweep,
  kCondenser,
  kEigen,
  kMazya,
  kLambdaSweep,
  kEntropy,
  kVerifyChain,
  kExample31,
  kExample32,
  kReproduce,
};

enum class Format { kCsv, kJson };

/// Bad command line; the message names the offending flag.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::kCap;
  std::string manifold = "hyperbolic:2";
  double scale = 1.0;
  double r = 1.0;
  double r1 = 1.0;
  double r2 = 2.0;
  std::optional<double> R;
  std::optional<double> p;
  std::string p_grid;  // empty: the command's default
  int nodes = 400;
  double rel_tol = 1e-10;
  int max_depth = 60;
  std::vector<int> k_list{2, 3, 4};
  int terms = 4;
  Format format = Format::kJson;
  std::string out;  // empty: stdout
};

/// Arguments without the program name. Throws UsageError.
RunConfig parse_args(const std::vector<std::string>& args);

/// Runs the command and writes its artifact to `out` (or cfg.out).
/// Returns 0 on success and 1 when a numerical tolerance or assertion fails.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_args + run with exit code 2 on usage errors.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace asygeo::cli
