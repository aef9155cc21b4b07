#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sheafbetti::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCheckFailed = 3;

/// Environment variable naming the directory of the Hurwitz number cache.
inline constexpr const char* kCacheEnv = "SHEAFBETTI_CACHE_DIR";

struct RunConfig {
  std::string command;
  int rank = 3;
  std::optional<std::string> c1;
  std::string surface = "ruled";
  std::optional<std::string> polarization;
  long order = 8;  // cutoff = base exponent + order
  bool refined = false;
  std::string format;  // empty: per-command default
  std::string output;  // empty: stdout
  std::string c2_range = "2..6";
  std::string bound = "9/4";
  std::vector<std::string> only;
  std::optional<long> check_order;
};

/// Parses and runs; returns the process exit code. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sheafbetti::cli
