#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nsim/mano.hpp"
#include "nsim/rational.hpp"
#include "nsim/resource_model.hpp"
#include "nsim/sim_engine.hpp"

namespace nsim::scenario {

struct PopDef {
  std::string id;
  Rat compute;
  Rat networking;
};

struct LinkDef {
  std::string id;
  std::string a;
  std::string b;
  Rat capacity;
};

struct WanDef {
  std::string id;
  std::vector<LinkDef> links;
};

struct InpDef {
  std::string id;
  std::vector<PopDef> pops;
  std::optional<WanDef> wan;
};

struct VnfDef {
  std::string name;
  std::set<std::string> capabilities;
  Rat compute;
  std::string pop;
  bool is_switch = false;
};

struct DescriptorDef {
  std::string id;
  std::vector<VnfDef> vnfs;
  std::vector<mano::DescriptorEdge> edges;
};

struct BlueprintDef {
  std::string id;
  std::string descriptor;
  Rat throughput_floor;
  std::optional<Rat> latency_ceiling;
};

struct LeaseDef {
  std::string vim;       // exactly one of vim / wim / provider is set
  std::string wim;
  std::string provider;  // another tenant acting as InP (recursion)
  res::ResKind kind = res::ResKind::Compute;
  std::string location;
  Rat quantity;
};

struct SliceDef {
  std::string id;
  std::string blueprint;
  std::string user;
  Rat request_time;
  Rat reservation;  // networking reservation / dedicated share
  Rat floor;        // shared-with-floors guaranteed bandwidth
  sim::WorkloadProfile workload;
};

struct TenantDef {
  std::string id;
  mano::RoPolicy ro_policy = mano::RoPolicy::Dedicated;
  std::vector<LeaseDef> leases;
  std::vector<SliceDef> slices;
};

struct ScheduledEvent {
  Rat time;
  std::string kind;  // "fault" | "lease-change"
  // fault
  std::string slice;
  std::string fault;
  // lease-change
  std::string tenant;
  res::ResKind res_kind = res::ResKind::Networking;
  std::string location;
  Rat delta;
};

struct Document {
  std::string name;
  std::uint64_t seed = 0;
  Rat horizon;
  std::vector<InpDef> inps;
  std::vector<std::pair<std::string, std::string>> peerings;  // wim id pairs
  std::vector<DescriptorDef> descriptors;
  std::vector<BlueprintDef> blueprints;
  std::vector<TenantDef> tenants;
  std::vector<ScheduledEvent> events;
  std::set<std::string> oss_whitelist{"throughput", "latency", "state"};
};

nlohmann::json to_json(const Document& doc);
nlohmann::json rat_to_json(const Rat& value);

struct ParseResult {
  std::optional<Document> doc;
  std::vector<std::string> errors;

  bool ok() const { return doc.has_value() && errors.empty(); }
};

// Full-document parse + semantic validation. Collects every error instead of
// stopping at the first.
ParseResult parse_validate(const std::string& text);

std::vector<std::string> validate(const Document& doc);

std::uint64_t scenario_digest(const Document& doc);

const DescriptorDef* find_descriptor(const Document& doc, const std::string& id);
const BlueprintDef* find_blueprint(const Document& doc, const std::string& id);

}  // namespace nsim::scenario
