#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace etclosure::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kCap = 3 };

struct RunConfig {
  std::string subcommand;
  int M = 2;
  int N = 1;
  int h_max = 2;
  int k_max = 2;
  double lambda = 0.0;
  std::optional<double> gamma;
  std::array<std::optional<double>, 4> mu;  // contravariant
  double m = 1.0;
  std::string stats = "mb";
  std::optional<double> tol;
  std::uint64_t seed = 20240601;
  std::string format = "json";
  std::optional<std::string> out;
  std::optional<std::string> suite;
  int mutate = 0;
  double dev_scale = 0.0;  // moments: size of the random deviations
};

// Parses argv (flags win over --config file entries) and runs; the result
// goes to --out (atomic replace) or to `out`. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Executes an already parsed config.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// temp file in the same directory, then rename
void write_atomic(const std::string& path, const std::string& content);

}  // namespace etclosure::cli
