#pragma once

#include <cstdint>

#include "nsim/scenario.hpp"
#include "nsim/sim_engine.hpp"
#include "nsim/world.hpp"

namespace nsim::engine {

inline constexpr std::uint64_t kEventCap = 1'000'000;

struct RunResult {
  sim::Trace trace;
  sim::MetricsSeries metrics;
  World world;
  std::uint64_t seed = 0;
  std::uint64_t scenario_digest = 0;
};

// Deterministic single-threaded event loop: identical (scenario, seed) pairs
// produce identical traces. Throws HorizonExceeded past the event cap.
RunResult run(const scenario::Document& doc, std::uint64_t seed);

}  // namespace nsim::engine
