#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nsim/engine.hpp"
#include "nsim/isolation.hpp"

namespace nsim::report {

inline constexpr const char* kToolVersion = "0.1.0";

// Self-contained machine-readable run report: digests, per-slice KPI series,
// utilization, audit log, verifier outputs and lifecycle transcripts.
nlohmann::json emit(const scenario::Document& doc, const engine::RunResult& rr);

// Total number of isolation violations recorded in a report.
std::size_t violation_count(const nlohmann::json& report);

// Lifecycle transcript lines for one slice, as stored in the report.
std::vector<std::string> slice_transcript(const nlohmann::json& report,
                                          const std::string& slice_id);

}  // namespace nsim::report
