#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sheafbetti {

struct CheckResult {
  std::string id;  // "A1" .. "A10"
  std::string name;
  bool passed = false;
  std::string detail;
  bool reduced = false;  // ran below the full acceptance depth
  double seconds = 0;
};

struct CheckOptions {
  /// Ids or names to run; empty runs everything.
  std::vector<std::string> only;
  /// Caps every depth at base exponent + order.
  std::optional<long> order;
  unsigned seed = 20240917;
};

struct CheckInfo {
  std::string id;
  std::string name;
};

const std::vector<CheckInfo>& check_catalog();

/// Throws std::invalid_argument on an unknown id or name in `only`.
std::vector<CheckResult> run_checks(const CheckOptions& options);

std::string format_check_line(const CheckResult& r);
nlohmann::json checks_to_json(const std::vector<CheckResult>& results);

}  // namespace sheafbetti
