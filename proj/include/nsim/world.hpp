#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nsim/isolation.hpp"
#include "nsim/mano.hpp"
#include "nsim/resource_model.hpp"
#include "nsim/scenario.hpp"
#include "nsim/sim_engine.hpp"

namespace nsim {

struct TenantState {
  std::string id;
  mano::Ro ro;
  mano::Vnfm vnfm;
  std::string networking_location;  // location of the tenant's bandwidth pool
  std::string origin_wim;           // WIM the tenant leases WAN capacity from
  std::vector<std::string> lease_backings;      // resource-model ids, in order
  std::map<std::string, Rat> sublease_pool;     // capacity re-offered, per kind
};

// Thrown by the creation-phase test hook.
struct InjectedFailure {
  int step;
};

// The complete deployment: resource model, MANO blocks, slices, isolation
// enforcer and current offered loads. Value type; copying takes a consistent
// snapshot, which is how creation-phase rollback works.
class World {
 public:
  res::ResourceModel model;
  std::map<std::string, mano::Vim> vims;
  std::map<std::string, mano::Wim> wims;
  std::map<std::string, mano::Ic> ics;
  std::map<std::string, TenantState> tenants;
  std::map<std::string, mano::NetworkServiceDescriptor> descriptors;
  std::map<std::string, mano::SliceBlueprint> blueprints;
  std::map<std::string, mano::NetworkSlice> slices;
  std::map<std::string, mano::Nso> nsos;    // keyed by nso id
  std::map<std::string, mano::Tc> tcs;      // keyed by tc id
  std::map<std::string, mano::Oss> osses;   // keyed by oss id
  std::map<std::string, std::vector<std::string>> slice_wan_links;
  iso::Enforcer enforcer;
  std::set<std::string> oss_whitelist;
  std::map<std::string, Rat> offered;       // slice -> current offered load
  std::map<std::string, sim::SliceTick> last_tick;

  std::uint64_t vm_counter = 1;
  std::uint64_t vnf_counter = 1;
  std::uint64_t rule_counter = 1;
  std::uint64_t lease_counter = 1;

  static World from_scenario(const scenario::Document& doc);

  // Executes the five-step creation phase atomically. `inject_fail_at`
  // (1..5) aborts just before completing that step; the world is rolled back
  // to the pre-call snapshot and the error rethrown.
  void create_slice(const std::string& tenant_id, const std::string& slice_id,
                    const std::string& blueprint_id, const std::string& user,
                    const Rat& reservation, const Rat& floor, const Rat& now,
                    sim::Trace& trace, std::int64_t cause,
                    int inject_fail_at = 0);

  // NSO-level network service lifecycle on an already Active slice.
  std::string ns_instantiate(const std::string& slice_id,
                             const std::string& descriptor_id);
  void ns_terminate(const std::string& slice_id, const std::string& instance_id);

  void terminate_slice(const std::string& slice_id, const Rat& now,
                       sim::Trace& trace, std::int64_t cause);

  void inject_fault(const std::string& slice_id, iso::FaultKind kind,
                    const Rat& now, sim::Trace& trace, std::int64_t cause);

  void apply_lease_change(const std::string& tenant_id, res::ResKind kind,
                          const std::string& location, const Rat& delta,
                          const Rat& now, sim::Trace& trace, std::int64_t cause);

  struct ExposeResult {
    bool allowed = false;
    std::string value;
  };
  ExposeResult oss_expose(const std::string& slice_id, const std::string& actor,
                          const std::string& field, const Rat& now);

  mano::UsageSnapshot usage_report_ro(const std::string& tenant_id) const;

  void set_slice_state(const std::string& slice_id, mano::SliceState next,
                       const Rat& now, sim::Trace& trace, std::int64_t cause);

  // Canonical serialization of all mutable block state (trace and audit log
  // excluded; both are append-only histories, not state).
  std::string canonical_state() const;
  std::uint64_t state_digest() const;

  std::vector<std::string> sorted_slice_ids() const;
  const TenantState& tenant(const std::string& id) const;
  TenantState& tenant(const std::string& id);
};

}  // namespace nsim
