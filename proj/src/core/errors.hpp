#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace repi {

struct invalid_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Configuration validation collects every offending field before failing;
// `fields` holds entries like "p_grid: must be non-empty".
struct config_error : std::runtime_error {
  std::vector<std::string> fields;

  explicit config_error(std::vector<std::string> f)
      : std::runtime_error(join(f)), fields(std::move(f)) {}

  static std::string join(const std::vector<std::string>& f) {
    std::string msg = "invalid configuration";
    for (const auto& e : f) {
      msg += "; ";
      msg += e;
    }
    return msg;
  }
};

}  // namespace repi
