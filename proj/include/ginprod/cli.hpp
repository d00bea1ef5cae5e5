#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ginprod/types.hpp"

namespace ginprod {

enum class OutputFormat { kJson, kCsv };

struct Command {
  std::string verb;  // density, survival, hole, overcrowd, sample, validate
  EnsembleParams params;
  std::optional<double> r;
  std::optional<double> r2;
  std::optional<int> k;
  std::optional<long> m;
  std::optional<std::vector<double>> grid;
  std::optional<long> mc_samples;
  std::optional<std::string> check;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  OutputFormat format = OutputFormat::kJson;
  int threads = 1;
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 2 usage, 3 accuracy, 4 statistical failure
  std::string output;
};

// Executes one command and renders its report; never prints or exits.
RunResult run(const Command& cmd);

// Parses "a:b:steps" into `steps` evenly spaced abscissae from a to b.
std::vector<double> parse_grid(const std::string& text);

}  // namespace ginprod
