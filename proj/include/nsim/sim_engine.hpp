#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nsim/rational.hpp"

namespace nsim::sim {

enum class EventKind {
  SliceRequest,
  LeaseChange,
  DemandChange,
  FaultInjection,
  MetricTick,
  BlockMessage,
};

const char* to_string(EventKind kind);

// Processing rank for events scheduled at the same time. Requests and lease
// changes land before demand changes; faults before the metric tick that
// observes them.
int rank(EventKind kind);

struct Event {
  Rat time;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::BlockMessage;
  std::string actor;
  std::string scope;    // slice id the event belongs to; empty = global
  std::string payload;
  std::int64_t cause = -1;  // seq of the causing event, -1 for roots
};

// Totally ordered by (time, seq); strictly append-only.
struct Trace {
  std::vector<Event> events;

  std::uint64_t append(const Rat& time, EventKind kind, const std::string& actor,
                       const std::string& scope, const std::string& payload,
                       std::int64_t cause = -1);
  std::string canonical() const;
  std::uint64_t digest() const;
};

std::uint64_t fnv1a(const std::string& bytes);
std::uint64_t fnv1a_mix(std::uint64_t seed, const std::string& bytes);
std::string hex64(std::uint64_t value);

struct SliceTick {
  Rat offered;
  Rat share;
  Rat achieved;
  Rat latency;
  std::string state;
};

struct MetricsSeries {
  std::vector<Rat> tick_times;
  std::map<std::string, std::vector<SliceTick>> slices;
  std::map<std::string, std::vector<Rat>> utilization;  // resource -> per tick
  std::vector<std::pair<Rat, std::string>> admissions;
};

enum class ProfileType { Constant, Step, Poisson };

struct WorkloadProfile {
  ProfileType type = ProfileType::Constant;
  Rat load;      // constant / step initial / poisson floor offset
  Rat load2;     // step target
  Rat step_at;   // step change time
  Rat rate;      // poisson arrival rate (events per tick)
  Rat mean;      // poisson mean load size
};

// Seeded, reproducible (time, offered load) change list for one slice.
// A step profile emits exactly one change after t=0. Times and loads are
// quantized to millitick rationals so replay is exact.
std::vector<std::pair<Rat, Rat>> generate_workload(const WorkloadProfile& profile,
                                                   std::uint64_t seed,
                                                   const Rat& horizon);

// Congestion signal: 1/(1-u), capped at 100 once u >= 0.99.
Rat latency_proxy(const Rat& utilization);

struct CongestionOutput {
  Rat achieved;
  Rat utilization;  // of the slice's bottleneck share
  Rat latency;
};

// Per-slice congestion on a hard share: achieved = min(offered, share).
CongestionOutput evaluate_congestion(const Rat& offered, const Rat& share);

}  // namespace nsim::sim
