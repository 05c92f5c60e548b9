#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nsim/rational.hpp"
#include "nsim/sim_engine.hpp"

namespace nsim::iso {

struct KpiBounds {
  Rat throughput_floor;                 // breach when achieved < min(offered, floor)
  std::optional<Rat> latency_ceiling;   // breach when latency proxy > ceiling
};

struct SecurityRule {
  std::string actor;
  std::string object_class;  // e.g. "kpi", "config", "placement"
  std::string verb;          // "read" | "write"
};

// Default-deny policy. A request is allowed only when an explicit rule matches
// AND the object lies in the actor's management scope. Slice scopes partition
// the slice-owned object space.
struct Policy {
  std::map<std::string, KpiBounds> performance;           // slice -> bounds
  std::vector<SecurityRule> security;                     // explicit allows
  std::map<std::string, std::set<std::string>> scopes;    // actor -> objects
  std::set<std::string> unscoped_actors;                  // e.g. the admin

  bool in_scope(const std::string& actor, const std::string& object) const;
  bool rule_allows(const std::string& actor, const std::string& object_class,
                   const std::string& verb) const;
};

std::string object_class_of(const std::string& object);

struct AuditRecord {
  Rat time;
  std::uint64_t seq = 0;
  std::string actor;
  std::string object;
  std::string verb;
  bool allowed = false;
};

// Serialized appender: every authorize call appends exactly one record,
// allow or deny alike.
class Enforcer {
 public:
  Policy policy;
  std::vector<AuditRecord> audit;

  bool authorize(const Rat& time, const std::string& actor,
                 const std::string& object, const std::string& verb);
};

enum class FaultKind { VnfCrash, TcCrash, ConfigCorruption };

const char* to_string(FaultKind kind);
std::optional<FaultKind> fault_from_string(const std::string& name);

struct PerfViolation {
  std::string slice;
  std::size_t tick = 0;
  std::string kpi;   // "throughput" | "latency"
  Rat value;
  Rat bound;
};

std::vector<PerfViolation> verify_performance(const sim::MetricsSeries& metrics,
                                              const Policy& policy);

struct ContainmentViolation {
  std::uint64_t event_seq = 0;
  std::string touched_scope;
  std::vector<std::uint64_t> causal_chain;  // fault root first
};

struct ContainmentReport {
  std::string faulted_slice;
  std::vector<ContainmentViolation> violations;
};

// Walks causality from FaultInjection events of the given slice and reports
// every reachable event whose scope lies outside that slice.
ContainmentReport verify_containment(const sim::Trace& trace,
                                     const std::string& faulted_slice);

}  // namespace nsim::iso
