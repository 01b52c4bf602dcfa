#pragma once

#include <cstdint>
#include <vector>

#include "accsim/pdp.hpp"

namespace accsim {

/// Simulates n full paths. Path i always uses the stream derived from
/// (master_seed, i), so the result does not depend on the worker count or on
/// scheduling order.
std::vector<PathResult> run_paths(const PathConfig& cfg, std::uint64_t master_seed, int n,
                                  int workers);

int default_worker_count();

}  // namespace accsim
