#include "nsim/report.hpp"

#include <set>

namespace nsim::report {

using nlohmann::json;

json emit(const scenario::Document& doc, const engine::RunResult& rr) {
  json j;
  j["tool_version"] = kToolVersion;
  j["scenario"] = doc.name;
  j["scenario_digest"] = sim::hex64(rr.scenario_digest);
  j["seed"] = rr.seed;
  j["trace_digest"] = sim::hex64(rr.trace.digest());

  j["slices"] = json::object();
  for (const auto& [sid, series] : rr.metrics.slices) {
    json js;
    js["series"] = json::array();
    Rat min_achieved;
    Rat max_achieved;
    Rat max_latency;
    bool first = true;
    for (std::size_t i = 0; i < series.size(); ++i) {
      const sim::SliceTick& point = series[i];
      js["series"].push_back(
          {{"offered", to_string(point.offered)},
           {"share", to_string(point.share)},
           {"achieved", to_string(point.achieved)},
           {"latency", to_string(point.latency)},
           {"state", point.state}});
      if (first || point.achieved < min_achieved) min_achieved = point.achieved;
      if (first || point.achieved > max_achieved) max_achieved = point.achieved;
      if (first || point.latency > max_latency) max_latency = point.latency;
      first = false;
    }
    if (!first) {
      js["kpi_summary"] = {{"min_achieved", to_string(min_achieved)},
                           {"max_achieved", to_string(max_achieved)},
                           {"max_latency", to_string(max_latency)}};
    }
    js["transcript"] = json::array();
    j["slices"][sid] = std::move(js);
  }
  // Lifecycle transcripts from the trace.
  for (const sim::Event& ev : rr.trace.events) {
    if (ev.kind == sim::EventKind::BlockMessage && !ev.scope.empty() &&
        j["slices"].contains(ev.scope)) {
      j["slices"][ev.scope]["transcript"].push_back(
          "t=" + to_string(ev.time) + " " + ev.actor + ": " + ev.payload);
    }
  }

  j["resources"] = json::object();
  for (const auto& [rid, series] : rr.metrics.utilization) {
    json arr = json::array();
    for (const Rat& u : series) {
      arr.push_back(to_string(u));
    }
    j["resources"][rid] = std::move(arr);
  }

  j["admissions"] = json::array();
  for (const auto& [time, what] : rr.metrics.admissions) {
    j["admissions"].push_back({{"time", to_string(time)}, {"what", what}});
  }

  j["audit"] = json::array();
  for (const iso::AuditRecord& rec : rr.world.enforcer.audit) {
    j["audit"].push_back({{"time", to_string(rec.time)},
                          {"actor", rec.actor},
                          {"object", rec.object},
                          {"verb", rec.verb},
                          {"decision", rec.allowed ? "allow" : "deny"}});
  }

  auto perf = iso::verify_performance(rr.metrics, rr.world.enforcer.policy);
  j["violations"]["performance"] = json::array();
  for (const iso::PerfViolation& v : perf) {
    j["violations"]["performance"].push_back({{"slice", v.slice},
                                              {"tick", v.tick},
                                              {"kpi", v.kpi},
                                              {"value", to_string(v.value)},
                                              {"bound", to_string(v.bound)}});
  }

  std::set<std::string> faulted;
  for (const sim::Event& ev : rr.trace.events) {
    if (ev.kind == sim::EventKind::FaultInjection && !ev.scope.empty()) {
      faulted.insert(ev.scope);
    }
  }
  j["violations"]["containment"] = json::object();
  for (const std::string& sid : faulted) {
    auto rep = iso::verify_containment(rr.trace, sid);
    json arr = json::array();
    for (const iso::ContainmentViolation& v : rep.violations) {
      json chain = json::array();
      for (std::uint64_t seq : v.causal_chain) chain.push_back(seq);
      arr.push_back({{"event_seq", v.event_seq},
                     {"touched_scope", v.touched_scope},
                     {"causal_chain", std::move(chain)}});
    }
    j["violations"]["containment"][sid] = std::move(arr);
  }
  return j;
}

std::size_t violation_count(const json& report) {
  std::size_t count = report.at("violations").at("performance").size();
  for (const auto& [sid, arr] :
       report.at("violations").at("containment").items()) {
    count += arr.size();
  }
  return count;
}

std::vector<std::string> slice_transcript(const json& report,
                                          const std::string& slice_id) {
  std::vector<std::string> out;
  const auto& slices = report.at("slices");
  if (!slices.contains(slice_id)) {
    return out;
  }
  for (const auto& line : slices.at(slice_id).at("transcript")) {
    out.push_back(line.get<std::string>());
  }
  return out;
}

}  // namespace nsim::report
