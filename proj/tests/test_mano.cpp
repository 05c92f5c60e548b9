#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "nsim/engine.hpp"
#include "nsim/mano.hpp"
#include "nsim/world.hpp"

using namespace nsim;
using namespace nsim::mano;

namespace {

scenario::Document load(const std::string& name) {
  std::ifstream in(std::string(SCENARIO_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  auto parsed = scenario::parse_validate(buf.str());
  REQUIRE(parsed.ok());
  return *parsed.doc;
}

}  // namespace

TEST_CASE("vim leases carve hard partitions out of PoP inventory") {
  res::ResourceModel model;
  Vim vim;
  vim.id = "vim1";
  vim.tenants = {"t1", "t2"};
  vim.inventory["pop1"][res::ResKind::Compute] =
      model.add_physical(res::ResKind::Compute, rat(100), "inp1");
  std::uint64_t counter = 1;

  Lease l1 = vim.lease(model, "t1", res::ResKind::Compute, rat(40), "pop1",
                       counter);
  CHECK(l1.quantity == rat(40));
  CHECK(model.effective_capacity(l1.backing) == rat(40));
  Lease l2 = vim.lease(model, "t2", res::ResKind::Compute, rat(40), "pop1",
                       counter);
  // Third request exceeds the remaining 20.
  CHECK_THROWS_AS(
      vim.lease(model, "t1", res::ResKind::Compute, rat(30), "pop1", counter),
      Error);
  // Unregistered tenants are refused.
  CHECK_THROWS_AS(
      vim.lease(model, "ghost", res::ResKind::Compute, rat(1), "pop1", counter),
      Error);

  auto usage = vim.usage();
  CHECK(usage.rows.size() == 2);
  CHECK(usage.total == rat(80));

  vim.release_lease(model, l2.id);
  CHECK(vim.usage().total == rat(40));
  Lease l3 = vim.lease(model, "t1", res::ResKind::Compute, rat(60), "pop1",
                       counter);
  CHECK(l3.quantity == rat(60));
}

TEST_CASE("wim paths go direct or through exactly one peer") {
  std::map<std::string, Wim> wims;
  Wim w2;
  w2.id = "wan2";
  w2.links = {{"wan2-l1", "pop1", "ixp", rat(100), rat(0)}};
  Wim w3;
  w3.id = "wan3";
  w3.links = {{"wan3-l1", "ixp", "pop2", rat(100), rat(0)}};
  wims["wan2"] = w2;
  wims["wan3"] = w3;

  // Direct hop inside the origin WIM.
  auto direct = wim_path(wims, "wan2", "pop1", "ixp", rat(10));
  REQUIRE(direct.segments.size() == 1);
  CHECK(direct.segments[0].link == "wan2-l1");

  // Unpeered WIMs cannot delegate.
  CHECK_THROWS_AS(wim_path(wims, "wan2", "pop1", "pop2", rat(10)), Error);

  wims.at("wan2").peers.insert("wan3");
  wims.at("wan3").peers.insert("wan2");
  auto peered = wim_path(wims, "wan2", "pop1", "pop2", rat(10));
  REQUIRE(peered.segments.size() == 2);
  CHECK(peered.segments[0].link == "wan2-l1");
  CHECK(peered.segments[1].link == "wan3-l1");

  // Saturated links are capacity-infeasible.
  wims.at("wan3").links[0].used = rat(95);
  CHECK_THROWS_AS(wim_path(wims, "wan2", "pop1", "pop2", rat(10)), Error);
}

TEST_CASE("vnf lifecycle allows only the documented edges") {
  CHECK(legal_vnf_edge(VnfState::Null, VnfState::Instantiated));
  CHECK(legal_vnf_edge(VnfState::Instantiated, VnfState::Configured));
  CHECK(legal_vnf_edge(VnfState::Configured, VnfState::Running));
  CHECK(legal_vnf_edge(VnfState::Running, VnfState::Running));
  CHECK(legal_vnf_edge(VnfState::Running, VnfState::Terminated));
  CHECK_FALSE(legal_vnf_edge(VnfState::Null, VnfState::Running));
  CHECK_FALSE(legal_vnf_edge(VnfState::Instantiated, VnfState::Running));
  CHECK_FALSE(legal_vnf_edge(VnfState::Terminated, VnfState::Instantiated));
  CHECK_FALSE(legal_vnf_edge(VnfState::Configured, VnfState::Configured));

  Vnfm vnfm;
  vnfm.vnfs["v1"] = VnfInstance{"v1"};
  CHECK(vnfm.transition("v1", VnfState::Instantiated) ==
        VnfState::Instantiated);
  CHECK_THROWS_AS(vnfm.transition("v1", VnfState::Running), Error);
  vnfm.transition("v1", VnfState::Configured);
  vnfm.transition("v1", VnfState::Running);
  // Running -> Running carries a scale change.
  vnfm.transition("v1", VnfState::Running, 3);
  CHECK(vnfm.vnfs.at("v1").scale == 3);
  CHECK_THROWS_AS(vnfm.transition("v1", VnfState::Running, -1), Error);
  vnfm.transition("v1", VnfState::Terminated);
  CHECK_THROWS_AS(vnfm.transition("ghost", VnfState::Instantiated), Error);
}

TEST_CASE("ro reservations are bounded by the lease") {
  Ro ro;
  ro.tenant = "t1";
  ro.add_lease(res::ResKind::Networking, "wan", rat(200));
  ro.reserve("s1", res::ResKind::Networking, "wan", rat(100));
  ro.reserve("s2", res::ResKind::Networking, "wan", rat(100));
  CHECK_THROWS_AS(ro.reserve("s3", res::ResKind::Networking, "wan", rat(1)),
                  Error);
  CHECK(ro.reserved_total(res::ResKind::Networking, "wan") == rat(200));
  // The lease cannot shrink below what is reserved.
  CHECK_THROWS_AS(ro.remove_lease(res::ResKind::Networking, "wan", rat(10)),
                  Error);
  ro.release_slice("s2");
  ro.remove_lease(res::ResKind::Networking, "wan", rat(10));
  CHECK(ro.networking_lease_total() == rat(190));
}

TEST_CASE("ro allocation follows the installed policy") {
  Ro ro;
  ro.tenant = "t1";
  ro.policy = RoPolicy::Dedicated;
  ro.add_lease(res::ResKind::Networking, "wan", rat(200));
  ro.reserve("s1", res::ResKind::Networking, "wan", rat(100));
  ro.reserve("s2", res::ResKind::Networking, "wan", rat(100));

  // Dedicated: reservations regardless of offered load.
  auto shares = ro.allocate({{"s1", rat(80)}, {"s2", rat(400)}});
  CHECK(shares.at("s1") == rat(100));
  CHECK(shares.at("s2") == rat(100));

  ro.policy = RoPolicy::SharedFloors;
  ro.floors["s1"] = rat(20);
  ro.floors["s2"] = rat(20);
  // Shared: floors then water-fill; s2's surge soaks up s1's slack.
  auto shared = ro.allocate({{"s1", rat(80)}, {"s2", rat(400)}});
  CHECK(shared.at("s1") == rat(80));
  CHECK(shared.at("s2") == rat(120));
}

TEST_CASE("tc composes overlay rules only over running vnfs") {
  NetworkServiceDescriptor nsd;
  nsd.id = "nsd";
  nsd.vnfs = {{"a", {"fw"}, rat(1), "pop1", true},
              {"b", {"fw"}, rat(1), "pop1", false}};
  nsd.edges = {{0, 1, rat(10)}};

  Vnfm vnfm;
  vnfm.vnfs["v1"] = VnfInstance{"v1", "s1", "vm-1", "pop1"};
  vnfm.vnfs["v2"] = VnfInstance{"v2", "s1", "vm-2", "pop1"};
  std::uint64_t rules = 1;

  Tc tc;
  tc.id = "tc@s1";
  CHECK_THROWS_AS(tc.compose(nsd, {"v1", "v2"}, vnfm, rules), Error);

  for (const char* vid : {"v1", "v2"}) {
    vnfm.transition(vid, VnfState::Instantiated);
    vnfm.transition(vid, VnfState::Configured);
    vnfm.transition(vid, VnfState::Running);
  }
  auto overlay = tc.compose(nsd, {"v1", "v2"}, vnfm, rules);
  REQUIRE(overlay.size() == 1);
  CHECK(overlay[0].from_vnf == "v1");
  CHECK(overlay[0].to_vnf == "v2");
  CHECK(tc.rules.size() == 1);
}

TEST_CASE("slice creation wires every block and scopes the oss") {
  auto doc = load("fig6.json");
  World w = World::from_scenario(doc);
  sim::Trace trace;
  w.create_slice("tenant1", "t1-s1", "bp-a", "user1", rat(100), rat(20),
                 rat(0), trace, -1);

  REQUIRE(w.slices.count("t1-s1") == 1);
  const NetworkSlice& s = w.slices.at("t1-s1");
  CHECK(s.state == SliceState::Active);
  CHECK(s.vnf_ids.size() == 3);
  CHECK(w.nsos.count("nso@t1-s1") == 1);
  CHECK(w.tcs.at("tc@t1-s1").rules.size() == 2);
  CHECK(w.osses.count("oss@t1-s1") == 1);
  for (const std::string& vid : s.vnf_ids) {
    CHECK(w.tenant("tenant1").vnfm.vnfs.at(vid).state == VnfState::Running);
  }
  // Cross-PoP edge landed on the WAN and consumed link budget.
  CHECK(w.slice_wan_links.at("t1-s1") ==
        std::vector<std::string>{"wan2-l1", "wan3-l1"});
  CHECK(w.ics.at("ic-wan2").rules.size() == 1);

  auto usage = w.usage_report_ro("tenant1");
  CHECK(usage.total == rat(100) + rat(2) + rat(4) + rat(2));
}

TEST_CASE("slice creation rolls back atomically on any step failure") {
  auto doc = load("fig6.json");
  World w = World::from_scenario(doc);
  sim::Trace trace;
  const auto before = w.state_digest();
  for (int step = 1; step <= 5; ++step) {
    CHECK_THROWS_AS(w.create_slice("tenant1", "t1-s1", "bp-a", "user1",
                                   rat(100), rat(20), rat(0), trace, -1, step),
                    Error);
    CHECK(w.state_digest() == before);
    CHECK(w.slices.count("t1-s1") == 0);
  }
  // The same request then succeeds cleanly.
  w.create_slice("tenant1", "t1-s1", "bp-a", "user1", rat(100), rat(20),
                 rat(0), trace, -1);
  CHECK(w.slices.at("t1-s1").state == SliceState::Active);
}

TEST_CASE("network service lifecycle needs an ro grant") {
  auto doc = load("fig6.json");
  World w = World::from_scenario(doc);
  sim::Trace trace;
  w.create_slice("tenant1", "t1-s1", "bp-a", "user1", rat(100), rat(20),
                 rat(0), trace, -1);
  auto inst = w.ns_instantiate("t1-s1", "nsd-chain");
  CHECK(w.nsos.at("nso@t1-s1").instances.size() == 2);
  CHECK_THROWS_AS(w.ns_instantiate("t1-s1", "nsd-nope"), Error);
  CHECK_THROWS_AS(w.ns_instantiate("ghost", "nsd-chain"), Error);
  w.ns_terminate("t1-s1", inst);
  CHECK(w.nsos.at("nso@t1-s1").instances.size() == 1);
  CHECK_THROWS_AS(w.ns_terminate("t1-s1", inst), Error);

  w.terminate_slice("t1-s1", rat(1), trace, -1);
  CHECK(w.slices.at("t1-s1").state == SliceState::Terminated);
  CHECK(w.tenant("tenant1").ro.reservations.count("t1-s1") == 0);
}

TEST_CASE("oss exposes only whitelisted fields to authorized actors") {
  auto doc = load("fig6.json");
  World w = World::from_scenario(doc);
  sim::Trace trace;
  w.create_slice("tenant1", "t1-s1", "bp-a", "user1", rat(100), rat(20),
                 rat(0), trace, -1);
  w.last_tick["t1-s1"] = {rat(80), rat(100), rat(80), rat(5), "Active"};

  auto r = w.oss_expose("t1-s1", "tenant1", "throughput", rat(1));
  CHECK(r.allowed);
  CHECK(r.value == "80");
  CHECK(w.oss_expose("t1-s1", "user1", "latency", rat(1)).allowed);
  CHECK(w.oss_expose("t1-s1", "admin", "state", rat(1)).value == "Active");
  // Placement detail is not on the whitelist and users hold kpi-read only.
  CHECK_FALSE(w.oss_expose("t1-s1", "user1", "placement", rat(1)).allowed);
  CHECK_FALSE(w.oss_expose("t1-s1", "tenant2", "throughput", rat(1)).allowed);
  CHECK_FALSE(w.oss_expose("t1-s1", "tenant1", "topology", rat(1)).allowed);
}
