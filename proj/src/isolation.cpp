#include "nsim/isolation.hpp"

#include <algorithm>
#include <deque>

namespace nsim::iso {

std::string object_class_of(const std::string& object) {
  auto slash = object.rfind('/');
  return slash == std::string::npos ? object : object.substr(slash + 1);
}

bool Policy::in_scope(const std::string& actor, const std::string& object) const {
  if (unscoped_actors.count(actor) > 0) {
    return true;
  }
  auto it = scopes.find(actor);
  return it != scopes.end() && it->second.count(object) > 0;
}

bool Policy::rule_allows(const std::string& actor,
                         const std::string& object_class,
                         const std::string& verb) const {
  for (const SecurityRule& rule : security) {
    if (rule.actor == actor &&
        (rule.object_class == object_class || rule.object_class == "*") &&
        (rule.verb == verb || rule.verb == "*")) {
      return true;
    }
  }
  return false;
}

bool Enforcer::authorize(const Rat& time, const std::string& actor,
                         const std::string& object, const std::string& verb) {
  const bool allowed = policy.in_scope(actor, object) &&
                       policy.rule_allows(actor, object_class_of(object), verb);
  AuditRecord rec;
  rec.time = time;
  rec.seq = audit.empty() ? 1 : audit.back().seq + 1;
  rec.actor = actor;
  rec.object = object;
  rec.verb = verb;
  rec.allowed = allowed;
  audit.push_back(std::move(rec));
  return allowed;
}

const char* to_string(FaultKind kind) {
  switch (kind) {
    case FaultKind::VnfCrash: return "vnf-crash";
    case FaultKind::TcCrash: return "tc-crash";
    case FaultKind::ConfigCorruption: return "config-corruption";
  }
  return "unknown";
}

std::optional<FaultKind> fault_from_string(const std::string& name) {
  if (name == "vnf-crash") return FaultKind::VnfCrash;
  if (name == "tc-crash") return FaultKind::TcCrash;
  if (name == "config-corruption") return FaultKind::ConfigCorruption;
  return std::nullopt;
}

std::vector<PerfViolation> verify_performance(const sim::MetricsSeries& metrics,
                                              const Policy& policy) {
  std::vector<PerfViolation> out;
  for (const auto& [slice, series] : metrics.slices) {
    auto bit = policy.performance.find(slice);
    if (bit == policy.performance.end()) {
      continue;
    }
    const KpiBounds& bounds = bit->second;
    for (std::size_t tick = 0; tick < series.size(); ++tick) {
      const sim::SliceTick& point = series[tick];
      if (point.state != "Active") {
        continue;
      }
      const Rat wanted = std::min(point.offered, bounds.throughput_floor);
      if (point.achieved < wanted) {
        out.push_back({slice, tick, "throughput", point.achieved,
                       bounds.throughput_floor});
      }
      if (bounds.latency_ceiling && point.latency > *bounds.latency_ceiling) {
        out.push_back({slice, tick, "latency", point.latency,
                       *bounds.latency_ceiling});
      }
    }
  }
  return out;
}

ContainmentReport verify_containment(const sim::Trace& trace,
                                     const std::string& faulted_slice) {
  ContainmentReport report;
  report.faulted_slice = faulted_slice;
  // seq -> index
  std::map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    index[trace.events[i].seq] = i;
  }
  // Roots: fault injections on the slice under scrutiny.
  std::set<std::uint64_t> tainted;
  std::map<std::uint64_t, std::uint64_t> parent;
  std::deque<std::uint64_t> frontier;
  for (const sim::Event& ev : trace.events) {
    if (ev.kind == sim::EventKind::FaultInjection && ev.scope == faulted_slice) {
      tainted.insert(ev.seq);
      frontier.push_back(ev.seq);
    }
  }
  while (!frontier.empty()) {
    std::uint64_t cur = frontier.front();
    frontier.pop_front();
    for (const sim::Event& ev : trace.events) {
      if (ev.cause >= 0 && static_cast<std::uint64_t>(ev.cause) == cur &&
          tainted.insert(ev.seq).second) {
        parent[ev.seq] = cur;
        frontier.push_back(ev.seq);
      }
    }
  }
  for (std::uint64_t seq : tainted) {
    const sim::Event& ev = trace.events[index.at(seq)];
    if (!ev.scope.empty() && ev.scope != faulted_slice) {
      ContainmentViolation v;
      v.event_seq = seq;
      v.touched_scope = ev.scope;
      std::uint64_t cur = seq;
      while (true) {
        v.causal_chain.push_back(cur);
        auto pit = parent.find(cur);
        if (pit == parent.end()) break;
        cur = pit->second;
      }
      std::reverse(v.causal_chain.begin(), v.causal_chain.end());
      report.violations.push_back(std::move(v));
    }
  }
  return report;
}

}  // namespace nsim::iso
