#pragma once

#include <map>
#include <string>
#include <vector>

#include "nsim/rational.hpp"

namespace nsim::alloc {

struct Request {
  std::string id;
  Rat demand;       // >= 0
  Rat floor;        // guaranteed minimum, effective up to the demand
  Rat weight{1};    // > 0
};

// Weighted max-min fair allocation with guaranteed floors. Each request first
// receives min(demand, floor); the surplus is water-filled in weight
// proportion until demands or capacity run out. Requires
// sum_i min(demand_i, floor_i) <= capacity.
std::map<std::string, Rat> water_fill(const std::vector<Request>& requests,
                                      const Rat& capacity);

struct DedicatedResult {
  std::map<std::string, Rat> granted;
  std::vector<std::string> rejected;
};

// First-come all-or-reject admission against a single capacity pool. Requests
// are considered in the given (arrival) order.
DedicatedResult dedicated(const std::vector<Request>& requests,
                          const Rat& capacity);

}  // namespace nsim::alloc
