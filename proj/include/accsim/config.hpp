#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "accsim/pdp.hpp"

namespace accsim {

struct OutputConfig {
  std::filesystem::path directory = "out";
  int histogram_bins = 100;
};

/// Full run configuration: the path dynamics plus sampling and output
/// controls. Loaded from a JSON file with strict key checking; unknown keys
/// are rejected so typos cannot silently alter an experiment.
struct SimConfig {
  PathConfig path;
  std::uint64_t seed = 0;
  int samples = 1;
  int threads = 0;  // 0: one worker per hardware thread
  OutputConfig output;
};

SimConfig parse_config(const std::string& text, const std::string& origin);
SimConfig load_config(const std::filesystem::path& file);

/// Re-checks every invariant; parse_config calls this, and command-line
/// overrides re-validate through it as well.
void validate(const SimConfig& cfg);

}  // namespace accsim
