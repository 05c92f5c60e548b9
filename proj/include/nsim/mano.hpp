#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nsim/alloc.hpp"
#include "nsim/resource_model.hpp"

namespace nsim::mano {

struct Lease {
  std::string id;
  std::string tenant;
  res::ResKind kind = res::ResKind::Compute;
  std::string location;
  Rat quantity;
  std::string backing;  // resource-model id of the leased partition
};

struct UsageRow {
  std::string tenant;
  res::ResKind kind = res::ResKind::Compute;
  std::string location;
  Rat amount;
};

struct UsageSnapshot {
  std::string block;
  std::vector<UsageRow> rows;
  Rat total;
};

// Virtualized Infrastructure Manager: owns NFVI-PoP inventory, hands out
// multi-tenant leases backed by resource-model partitions.
class Vim {
 public:
  std::string id;
  std::string ic_id;
  std::set<std::string> tenants;
  // location -> kind -> backing inventory resource
  std::map<std::string, std::map<res::ResKind, std::string>> inventory;
  std::vector<Lease> leases;

  Lease lease(res::ResourceModel& model, const std::string& tenant,
              res::ResKind kind, const Rat& quantity,
              const std::string& location, std::uint64_t& lease_counter);
  void release_lease(res::ResourceModel& model, const std::string& lease_id);
  UsageSnapshot usage() const;
};

struct WanLink {
  std::string id;
  std::string a;
  std::string b;
  Rat capacity;
  Rat used;

  bool touches(const std::string& endpoint) const {
    return a == endpoint || b == endpoint;
  }
  std::string other(const std::string& endpoint) const {
    return a == endpoint ? b : a;
  }
};

// WAN Infrastructure Manager. Peerings are mutual; path delegation crosses at
// most one peer.
class Wim {
 public:
  std::string id;
  std::string ic_id;
  std::string pool;  // resource-model id backing networking leases
  std::vector<WanLink> links;
  std::set<std::string> peers;
  std::set<std::string> tenants;
  std::vector<Lease> leases;

  bool covers(const std::string& endpoint) const;
  Lease lease(res::ResourceModel& model, const std::string& tenant,
              const Rat& quantity, std::uint64_t& lease_counter);
  UsageSnapshot usage() const;
};

struct PathSegment {
  std::string wim;
  std::string link;
};

struct Path {
  std::vector<PathSegment> segments;
};

// Capacity-feasible path between PoP endpoints. Direct on the origin WIM when
// possible, otherwise two segments through exactly one peered WIM.
Path wim_path(const std::map<std::string, Wim>& wims, const std::string& origin,
              const std::string& from, const std::string& to, const Rat& bandwidth);

enum class VnfState { Null, Instantiated, Configured, Running, Terminated };

const char* to_string(VnfState state);

struct VnfInstance {
  std::string id;
  std::string slice;
  std::string vm;
  std::string location;  // PoP id
  VnfState state = VnfState::Null;
  int scale = 1;
  bool is_switch = false;
  bool faulted = false;
  // EM counters (fault/performance bookkeeping only)
  int fault_events = 0;
  int perf_events = 0;
  std::set<std::string> capabilities;
  std::map<res::ResKind, Rat> demand;
};

// Per-tenant VNF manager. Legal lifecycle edges:
// Null -> Instantiated -> Configured -> Running -> Terminated, plus
// Running -> Running for scale changes.
class Vnfm {
 public:
  std::string id;
  std::string tenant;
  std::map<std::string, VnfInstance> vnfs;

  VnfState transition(const std::string& vnf_id, VnfState target, int scale = 0);
};

bool legal_vnf_edge(VnfState from, VnfState to);

enum class RoPolicy { Dedicated, SharedFloors };

using PoolKey = std::pair<res::ResKind, std::string>;  // (kind, location)

// Per-tenant resource orchestrator: tracks leases, per-slice reservations and
// the run-time bandwidth split across the tenant's slices.
class Ro {
 public:
  std::string tenant;
  RoPolicy policy = RoPolicy::Dedicated;
  std::map<PoolKey, Rat> leased;
  std::map<std::string, std::map<PoolKey, Rat>> reservations;  // slice -> pool
  std::map<std::string, Rat> floors;  // shared policy: per-slice bandwidth floor

  void add_lease(res::ResKind kind, const std::string& location, const Rat& qty);
  void remove_lease(res::ResKind kind, const std::string& location, const Rat& qty);
  void reserve(const std::string& slice, res::ResKind kind,
               const std::string& location, const Rat& qty);
  void release_slice(const std::string& slice);
  Rat reserved_total(res::ResKind kind, const std::string& location) const;
  Rat networking_lease_total() const;

  // Per-tick bandwidth shares over the tenant's networking pool.
  // Dedicated: each slice gets its reservation, independent of offered loads.
  // SharedFloors: floors first, surplus water-filled against offered loads.
  std::map<std::string, Rat> allocate(
      const std::map<std::string, Rat>& offered) const;

  UsageSnapshot usage() const;
};

struct DescriptorEdge {
  int from = 0;
  int to = 0;
  Rat bandwidth;
};

struct VnfSpec {
  std::string name;
  std::set<std::string> capabilities;
  Rat compute;
  std::string pop;
  bool is_switch = false;
};

struct NetworkServiceDescriptor {
  std::string id;
  std::vector<VnfSpec> vnfs;
  std::vector<DescriptorEdge> edges;
};

struct Sla {
  Rat throughput_floor;
  std::optional<Rat> latency_ceiling;
};

struct SliceBlueprint {
  std::string id;
  std::string descriptor;
  Sla sla;
  std::vector<std::string> pop_affinities;
};

enum class SliceState { Requested, Creating, Active, Faulted, Terminated };

const char* to_string(SliceState state);

struct ServiceInstance {
  std::string id;
  std::string descriptor;
  std::vector<std::string> vnf_ids;
};

// Per-slice network service orchestrator.
struct Nso {
  std::string id;
  std::string slice;
  std::set<std::string> descriptors;
  std::map<std::string, ServiceInstance> instances;
};

struct OverlayRule {
  std::string id;
  std::string from_vnf;
  std::string to_vnf;
  Rat bandwidth;
};

// Per-slice tenant SDN controller (deployed as a VNF). Sees the network only
// in terms of VNFs.
class Tc {
 public:
  std::string id;
  std::string slice;
  std::string host_vm;
  bool faulted = false;
  std::vector<OverlayRule> rules;

  std::vector<OverlayRule> compose(const NetworkServiceDescriptor& descriptor,
                                   const std::vector<std::string>& vnf_ids,
                                   const Vnfm& vnfm, std::uint64_t& rule_counter);
};

struct UnderlayRule {
  std::string id;
  std::string src_vm;
  std::string dst_vm;
  std::vector<std::string> link_ids;  // empty for intra-PoP rules
  Rat bandwidth;
};

// Infrastructure SDN controller, owned by a VIM or WIM. Rules are keyed by
// VM/host/link ids only; slice and tenant identity never reaches this layer.
class Ic {
 public:
  std::string id;
  std::string owner_block;  // vim or wim id
  std::vector<UnderlayRule> rules;

  std::string serialize() const;
};

struct Oss {
  std::string id;
  std::string slice;
  std::set<std::string> whitelist;  // queryable fields, set by the tenant
  bool config_corrupted = false;
};

struct NetworkSlice {
  std::string id;
  std::string tenant;
  std::string blueprint;
  std::string user;
  std::string oss_id;
  std::string tc_id;
  std::string nso_id;
  std::vector<std::string> vnf_ids;
  SliceState state = SliceState::Requested;
  Sla sla;
  Rat reservation;  // networking reservation (dedicated share)
};

bool legal_slice_edge(SliceState from, SliceState to);

}  // namespace nsim::mano
