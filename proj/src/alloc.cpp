#include "nsim/alloc.hpp"

#include <algorithm>

#include "nsim/error.hpp"

namespace nsim::alloc {

std::map<std::string, Rat> water_fill(const std::vector<Request>& requests,
                                      const Rat& capacity) {
  std::map<std::string, Rat> out;
  Rat remaining = capacity;
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const Request& r = requests[i];
    if (r.demand < Rat(0) || r.weight <= Rat(0)) {
      throw Error(Errc::InvalidOperation, "bad water-fill request " + r.id);
    }
    const Rat base = std::min(r.demand, r.floor);
    out[r.id] = base;
    remaining -= base;
    if (base < r.demand) {
      active.push_back(i);
    }
  }
  if (remaining < Rat(0)) {
    throw Error(Errc::OverCommit, "floors exceed capacity");
  }
  while (remaining > Rat(0) && !active.empty()) {
    Rat weight_sum(0);
    for (std::size_t i : active) {
      weight_sum += requests[i].weight;
    }
    // Per-unit-weight level this round: bounded by the nearest saturation.
    Rat step = remaining / weight_sum;
    for (std::size_t i : active) {
      const Request& r = requests[i];
      step = std::min(step, (r.demand - out[r.id]) / r.weight);
    }
    std::vector<std::size_t> still;
    for (std::size_t i : active) {
      const Request& r = requests[i];
      out[r.id] += step * r.weight;
      remaining -= step * r.weight;
      if (out[r.id] < r.demand) {
        still.push_back(i);
      }
    }
    active.swap(still);
  }
  return out;
}

DedicatedResult dedicated(const std::vector<Request>& requests,
                          const Rat& capacity) {
  DedicatedResult result;
  Rat remaining = capacity;
  for (const Request& r : requests) {
    if (r.demand <= remaining) {
      result.granted[r.id] = r.demand;
      remaining -= r.demand;
    } else {
      result.rejected.push_back(r.id);
    }
  }
  return result;
}

}  // namespace nsim::alloc
