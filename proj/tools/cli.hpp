#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

namespace belyi::cli {

using Json = nlohmann::json;

struct Options {
  std::optional<std::string> command;  // overrides the input
  int max_tau = 64;
  std::uint64_t seed = 0;
  bool corrupt_weight = false;
};

/// Exit codes.
enum Exit : int { kOk = 0, kFailed = 1, kSchema = 2, kMath = 3, kInternal = 4 };

struct Outcome {
  int code = kOk;
  Json report;
};

/// Dispatches one problem. Module errors propagate.
Json run(const Json& spec, const Options& opt);
/// Parses text and runs it; errors become an error report and an exit code.
Outcome execute(const std::string& text, const Options& opt);

}  // namespace belyi::cli
