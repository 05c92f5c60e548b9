#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nsim/isolation.hpp"

using namespace nsim;
using namespace nsim::iso;

TEST_CASE("authorization is default-deny and always audited") {
  Enforcer e;
  e.policy.security.push_back({"tenant1", "kpi", "read"});
  e.policy.scopes["tenant1"] = {"s1/kpi"};

  CHECK(e.authorize(rat(0), "tenant1", "s1/kpi", "read"));
  // Right rule, wrong scope.
  CHECK_FALSE(e.authorize(rat(1), "tenant1", "s2/kpi", "read"));
  // Right scope, no rule for the verb.
  CHECK_FALSE(e.authorize(rat(2), "tenant1", "s1/kpi", "write"));
  // No rule at all.
  CHECK_FALSE(e.authorize(rat(3), "tenant2", "s1/kpi", "read"));
  REQUIRE(e.audit.size() == 4);
  CHECK(e.audit[0].allowed);
  CHECK_FALSE(e.audit[1].allowed);
  CHECK(e.audit[3].actor == "tenant2");

  // Wildcards widen rules; unscoped actors skip the scope check.
  e.policy.security.push_back({"admin", "*", "*"});
  e.policy.unscoped_actors.insert("admin");
  CHECK(e.authorize(rat(4), "admin", "s2/config", "write"));
  CHECK(e.audit.size() == 5);
}

TEST_CASE("object class is the suffix after the last slash") {
  CHECK(object_class_of("s1/kpi") == "kpi");
  CHECK(object_class_of("t1/s1/config") == "config");
  CHECK(object_class_of("plain") == "plain");
}

TEST_CASE("performance verifier flags throughput floors and latency ceilings") {
  Policy p;
  p.performance["s1"] = {rat(20), rat(10)};
  sim::MetricsSeries m;
  m.tick_times = {rat(0), rat(1), rat(2), rat(3)};
  m.slices["s1"] = {
      {rat(30), rat(30), rat(30), rat(2), "Active"},   // fine
      {rat(30), rat(15), rat(15), rat(2), "Active"},   // floor breach: 15 < 20
      {rat(10), rat(10), rat(10), rat(2), "Active"},   // idle below floor: fine
      {rat(30), rat(30), rat(30), rat(11), "Active"},  // latency breach
  };
  auto violations = verify_performance(m, p);
  REQUIRE(violations.size() == 2);
  CHECK(violations[0].tick == 1);
  CHECK(violations[0].kpi == "throughput");
  CHECK(violations[0].value == rat(15));
  CHECK(violations[0].bound == rat(20));
  CHECK(violations[1].tick == 3);
  CHECK(violations[1].kpi == "latency");

  // Non-active ticks are not judged.
  m.slices["s1"][1].state = "Faulted";
  m.slices["s1"][3].state = "Terminated";
  CHECK(verify_performance(m, p).empty());
}

TEST_CASE("containment verifier follows causal chains across scopes") {
  sim::Trace t;
  auto fault = t.append(rat(5), sim::EventKind::FaultInjection, "engine", "s1",
                        "vnf-crash");
  auto inside = t.append(rat(5), sim::EventKind::BlockMessage, "oss@s1", "s1",
                         "fault reported", static_cast<std::int64_t>(fault));
  t.append(rat(5), sim::EventKind::BlockMessage, "lifecycle", "",
           "global bookkeeping", static_cast<std::int64_t>(fault));
  // Unrelated event in another slice, not caused by the fault.
  t.append(rat(6), sim::EventKind::BlockMessage, "oss@s2", "s2", "own business");

  CHECK(verify_containment(t, "s1").violations.empty());

  // A fault-caused event that touches another slice is a violation.
  auto leak = t.append(rat(7), sim::EventKind::BlockMessage, "oss@s2", "s2",
                       "spilled over", static_cast<std::int64_t>(inside));
  auto report = verify_containment(t, "s1");
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].event_seq == leak);
  CHECK(report.violations[0].touched_scope == "s2");
  CHECK(report.violations[0].causal_chain ==
        std::vector<std::uint64_t>{fault, inside, leak});

  // Faults in other slices are judged independently.
  CHECK(verify_containment(t, "s2").violations.empty());
}

TEST_CASE("fault kinds round-trip through their names") {
  for (FaultKind k : {FaultKind::VnfCrash, FaultKind::TcCrash,
                      FaultKind::ConfigCorruption}) {
    auto back = fault_from_string(to_string(k));
    REQUIRE(back.has_value());
    CHECK(*back == k);
  }
  CHECK_FALSE(fault_from_string("meteor-strike").has_value());
}
