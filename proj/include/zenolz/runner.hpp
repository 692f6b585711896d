// runner.hpp — experiment orchestration: fans a config's parameter grid out to
// a bounded worker pool, assembles results order-stably by grid index, and
// emits the per-mode CSV/SVG set.

#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "zenolz/config.hpp"

namespace zenolz {

struct RunOutcome {
  std::vector<std::filesystem::path> files;
  std::string summary;
};

RunOutcome run(const RunConfig& cfg);

// Runs fn(0..count-1) on up to `workers` threads; rethrows the first worker
// exception after all threads join. fn must only touch its own slot.
void parallel_for_indexed(std::size_t count, int workers,
                          const std::function<void(std::size_t)>& fn);

}  // namespace zenolz
