#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "nsim/scenario.hpp"

using namespace nsim;
using namespace nsim::scenario;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(SCENARIO_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("the bundled scenarios parse and validate") {
  auto fig6 = parse_validate(slurp("fig6.json"));
  REQUIRE(fig6.ok());
  const Document& doc = *fig6.doc;
  CHECK(doc.name == "fig6");
  CHECK(doc.seed == 7);
  CHECK(doc.horizon == rat(100));
  CHECK(doc.inps.size() == 3);
  CHECK(doc.inps[0].pops.size() == 2);
  CHECK(doc.tenants.size() == 2);
  CHECK(doc.peerings.size() == 1);
  CHECK(doc.tenants[0].slices.size() == 2);
  CHECK(doc.tenants[1].slices.size() == 2);
  CHECK(find_blueprint(doc, "bp-a") != nullptr);
  CHECK(find_descriptor(doc, "nsd-chain") != nullptr);
  CHECK(find_blueprint(doc, "nope") == nullptr);

  auto rec = parse_validate(slurp("recursion3.json"));
  REQUIRE(rec.ok());
  CHECK(rec.doc->tenants[1].leases[1].provider == "tenant-a");
}

TEST_CASE("a dangling blueprint reference yields exactly one error") {
  auto text = slurp("fig6.json");
  auto pos = text.find("\"nsd-chain\"");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 11, "\"nsd-typo\"");  // first hit is the descriptor id
  auto parsed = parse_validate(text);
  CHECK_FALSE(parsed.ok());
  // All four blueprints now dangle, each reported once; nothing else breaks.
  CHECK(parsed.errors.size() == 4);
  for (const auto& e : parsed.errors) {
    CHECK(e.find("unknown descriptor") != std::string::npos);
  }
}

TEST_CASE("semantic validation rejects bad documents") {
  auto base = parse_validate(slurp("fig6.json"));
  REQUIRE(base.ok());

  Document zero_horizon = *base.doc;
  zero_horizon.horizon = rat(0);
  auto errors = validate(zero_horizon);
  REQUIRE(!errors.empty());

  Document dup = *base.doc;
  dup.tenants[1].slices[0].id = dup.tenants[0].slices[0].id;
  CHECK(!validate(dup).empty());

  Document fat_floors = *base.doc;
  fat_floors.tenants[0].slices[0].floor = rat(500);
  CHECK(!validate(fat_floors).empty());

  Document bad_event = *base.doc;
  ScheduledEvent ev;
  ev.time = rat(5);
  ev.kind = "fault";
  ev.slice = "no-such-slice";
  ev.fault = "vnf-crash";
  bad_event.events.push_back(ev);
  CHECK(!validate(bad_event).empty());

  Document bad_fault = *base.doc;
  ev.slice = "t1-s1";
  ev.fault = "meteor-strike";
  bad_fault.events.push_back(ev);
  CHECK(!validate(bad_fault).empty());

  CHECK_FALSE(parse_validate("this is not json").ok());
  CHECK_FALSE(parse_validate("{}").ok());
}

TEST_CASE("documents survive a serialization round trip") {
  for (const char* name : {"fig6.json", "recursion3.json"}) {
    auto first = parse_validate(slurp(name));
    REQUIRE(first.ok());
    auto second = parse_validate(to_json(*first.doc).dump());
    REQUIRE(second.ok());
    CHECK(to_json(*first.doc) == to_json(*second.doc));
    CHECK(scenario_digest(*first.doc) == scenario_digest(*second.doc));
  }
}

TEST_CASE("rationals serialize as integers or fraction strings") {
  CHECK(rat_to_json(rat(5)) == nlohmann::json(5));
  CHECK(rat_to_json(rat(1, 2)) == nlohmann::json("1/2"));
  CHECK(rat_to_json(rat(-7, 3)) == nlohmann::json("-7/3"));
}
