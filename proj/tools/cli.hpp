#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "report.hpp"

namespace shearlab::cli {

struct Experiment {
  std::string name;
  std::string claim;   ///< what the experiment checks
  std::string anchor;  ///< the statement it reproduces
  Json defaults;
  std::function<Result(const Params&, std::uint64_t seed)> run;
};

const std::vector<Experiment>& experiments();

/// One line per experiment: name, claim and anchor.
std::vector<std::string> catalog_lines();

struct RunOptions {
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

struct RunOutcome {
  int exit_code = 0;  ///< 0 pass, 1 a check failed, 2 invalid config
  Json report;
  std::vector<std::string> files;
  std::vector<std::string> failed;
  std::string error;
};

/// Parses a config file; JSON syntax errors become ConfigInvalid.
Json load_config(const std::string& path);

/// Validates the config, runs the experiment in memory and only then writes
/// CSV, SVG and report.json into the output directory.
RunOutcome run_config(const Json& config, const RunOptions& options);

int main(int argc, char** argv);

}  // namespace shearlab::cli
