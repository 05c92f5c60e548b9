#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nsim/sdn_controller.hpp"

using namespace nsim;
using namespace nsim::sdn;

namespace {

struct Fixture {
  res::ResourceModel model;
  std::string net;
  Controller ctrl{"ctrl1", "inp1", "admin", model};

  Fixture() {
    net = model.add_physical(res::ResKind::Networking, rat(100), "inp1");
    ctrl.create_server_context("admin", {"substrate", {net}}, "southbound:phys");
  }
};

}  // namespace

TEST_CASE("context creation is administrator-only") {
  Fixture f;
  CHECK_THROWS_AS(f.ctrl.create_client_context("mallory", "tenant1",
                                               {"g1", {f.net}}, {}),
                  Error);
  auto id = f.ctrl.create_client_context("admin", "tenant1", {"g1", {f.net}},
                                         {}, "cc-t1");
  CHECK(id == "cc-t1");
  CHECK(f.ctrl.client_context("cc-t1").client == "tenant1");
  CHECK_THROWS_AS(f.ctrl.create_client_context("admin", "tenant2",
                                               {"g2", {f.net}}, {}, "cc-t1"),
                  Error);
  SupportPolicy no_verbs;
  no_verbs.allowed_verbs.clear();
  CHECK_THROWS_AS(
      f.ctrl.create_client_context("admin", "tenant2", {"g2", {f.net}}, no_verbs),
      Error);
  CHECK_THROWS_AS(f.ctrl.client_context("nope"), Error);
}

TEST_CASE("demand validation distinguishes the four verdicts") {
  Fixture f;
  auto other = f.model.add_physical(res::ResKind::Networking, rat(5), "inp2");
  f.ctrl.create_client_context("admin", "tenant1", {"g1", {f.net}}, {});

  Demand ok;
  ok.requested[res::ResKind::Networking] = rat(40);
  CHECK(f.ctrl.validate_demand("tenant1", ok) == Verdict::Accepted);

  Demand invisible = ok;
  invisible.resource_refs = {other};
  CHECK(f.ctrl.validate_demand("tenant1", invisible) == Verdict::NotVisible);

  Demand bad_verb = ok;
  bad_verb.verb = "reconfigure";
  CHECK(f.ctrl.validate_demand("tenant1", bad_verb) == Verdict::PolicyDenied);

  Demand too_big = ok;
  too_big.requested[res::ResKind::Networking] = rat(101);
  CHECK(f.ctrl.validate_demand("tenant1", too_big) == Verdict::Insufficient);

  CHECK_THROWS_AS(f.ctrl.validate_demand("ghost", ok), Error);
}

TEST_CASE("dedicated orchestration is all-or-reject in arrival order") {
  Fixture f;
  f.ctrl.create_client_context("admin", "tenant1", {"g1", {f.net}}, {});
  f.ctrl.create_client_context("admin", "tenant2", {"g2", {f.net}}, {});
  f.ctrl.install_policy("admin", OrchestrationPolicy::Dedicated);

  Demand d1;
  d1.requested[res::ResKind::Networking] = rat(60);
  Demand d2 = d1;
  CHECK(f.ctrl.validate_demand("tenant1", d1) == Verdict::Accepted);
  CHECK(f.ctrl.validate_demand("tenant2", d2) == Verdict::Accepted);

  Plan plan = f.ctrl.orchestrate();
  REQUIRE(plan.allocations.size() == 1);
  CHECK(plan.allocations[0].client == "tenant1");
  CHECK(plan.allocations[0].amount == rat(60));
  REQUIRE(plan.rejected.size() == 1);
}

TEST_CASE("shared orchestration splits contention by weighted max-min") {
  Fixture f;
  f.ctrl.create_client_context("admin", "tenant1", {"g1", {f.net}}, {});
  f.ctrl.create_client_context("admin", "tenant2", {"g2", {f.net}}, {});
  f.ctrl.install_policy("admin", OrchestrationPolicy::SharedMaxMin);

  Demand d1;
  d1.requested[res::ResKind::Networking] = rat(80);
  Demand d2 = d1;
  CHECK(f.ctrl.validate_demand("tenant1", d1) == Verdict::Accepted);
  CHECK(f.ctrl.validate_demand("tenant2", d2) == Verdict::Accepted);

  Plan plan = f.ctrl.orchestrate();
  std::map<std::string, Rat> by_client;
  for (const Allocation& a : plan.allocations) {
    by_client[a.client] += a.amount;
  }
  CHECK(by_client.at("tenant1") == rat(50));
  CHECK(by_client.at("tenant2") == rat(50));
  CHECK(plan.rejected.empty());
}

TEST_CASE("notifications reach subscribed clients in their own scope only") {
  Fixture f;
  f.ctrl.create_client_context("admin", "tenant1", {"g1", {f.net}}, {});
  f.ctrl.create_client_context("admin", "tenant2", {"g2", {f.net}}, {});
  f.ctrl.subscribe("tenant1", "link-down");
  f.ctrl.subscribe("tenant2", "link-down");

  f.ctrl.emit("link-down", "tenant1", "link l1 lost");
  f.ctrl.emit("link-down", "tenant2", "link l2 lost");
  f.ctrl.emit("link-up", "tenant1", "filtered out by kind");

  auto in1 = f.ctrl.inbox("tenant1");
  REQUIRE(in1.size() == 1);
  CHECK(in1[0].detail == "link l1 lost");
  auto in2 = f.ctrl.inbox("tenant2");
  REQUIRE(in2.size() == 1);
  CHECK(in2[0].detail == "link l2 lost");

  f.ctrl.unsubscribe("tenant2");
  f.ctrl.emit("link-down", "tenant2", "after unsubscribe");
  CHECK(f.ctrl.inbox("tenant2").size() == 1);
  CHECK_THROWS_AS(f.ctrl.subscribe("ghost", "*"), Error);
}

TEST_CASE("controllers stack recursively with shrinking capacity") {
  res::ResourceModel model;
  auto phys = model.add_physical(res::ResKind::Networking, rat(100), "inp1");

  Controller inp("ctrl-inp", "inp1", "admin", model);
  inp.create_server_context("admin", {"s0", {phys}}, "southbound:phys");
  auto kids = model.partition(phys, {rat(60)}, "tenant-a");
  auto cc_a =
      inp.create_client_context("admin", "tenant-a", {"ga", {kids[0]}}, {});

  Controller mid("ctrl-a", "tenant-a", "admin", model);
  sdn::Controller::attach_as_client(mid, inp, cc_a);
  auto grand = model.partition(kids[0], {rat(25)}, "tenant-b");
  auto cc_b =
      mid.create_client_context("admin", "tenant-b", {"gb", {grand[0]}}, {});

  Controller top("ctrl-b", "tenant-b", "admin", model);
  sdn::Controller::attach_as_client(top, mid, cc_b);

  CHECK(inp.group_capacity({"s", {phys}}, res::ResKind::Networking) == rat(100));
  CHECK(mid.group_capacity({"s", {kids[0]}}, res::ResKind::Networking) ==
        rat(60));
  CHECK(top.group_capacity({"s", {grand[0]}}, res::ResKind::Networking) ==
        rat(25));

  // A demand that fits one level down is rejected against the thinner view.
  Demand d;
  d.requested[res::ResKind::Networking] = rat(30);
  CHECK(inp.validate_demand("tenant-a", d) == Verdict::Accepted);
  CHECK(mid.validate_demand("tenant-b", d) == Verdict::Insufficient);

  // Cycles are refused.
  CHECK_THROWS_AS(sdn::Controller::attach_as_client(inp, inp, cc_a), Error);
  auto cc_back = top.create_client_context("admin", "inp1", {"gx", {grand[0]}},
                                           {});
  CHECK_THROWS_AS(sdn::Controller::attach_as_client(inp, top, cc_back), Error);
}
