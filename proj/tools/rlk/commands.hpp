#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rlk/experiments.hpp"
#include "rlk/report.hpp"

namespace rlk::cli {

struct GlobalOptions {
  std::string precision{"double"};
  std::uint64_t seed{1};
  std::string out;

  Precision
  parsed_precision() const {
    return parse_precision(precision);
  }
};

/// Raised for flag combinations that CLI11 cannot check by itself; maps to
/// exit code 2 like any other usage error.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void
register_problem_commands(CLI::App& app, const GlobalOptions& global);

void
register_study_commands(CLI::App& app, const GlobalOptions& global);

/// Writes `text` to --out (plus `suffix`) when given, otherwise to stdout.
void
emit_text(const GlobalOptions& global, const std::string& suffix, const std::string& text);

} // namespace rlk::cli
