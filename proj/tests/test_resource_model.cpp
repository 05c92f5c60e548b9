#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nsim/resource_model.hpp"

using namespace nsim;
using namespace nsim::res;

TEST_CASE("physical resources enter the model at layer zero") {
  ResourceModel m;
  auto id = m.add_physical(ResKind::Compute, rat(100), "inp1",
                           {{"location", "pop1"}});
  REQUIRE(m.contains(id));
  const Resource& r = m.get(id);
  CHECK(r.layer == 0);
  CHECK(r.provenance == Provenance::Physical);
  CHECK(r.capacity == rat(100));
  CHECK(m.free_capacity(id) == rat(100));
  CHECK_THROWS_AS(m.get("res-999"), Error);
}

TEST_CASE("abstraction exposes only whitelisted attributes") {
  ResourceModel m;
  auto id = m.add_physical(ResKind::Networking, rat(14), "inp1",
                           {{"location", "pop1"}, {"vendor", "acme"}});
  AbstractionCriteria c;
  c.whitelist = {"location"};
  auto view = m.abstract(id, c);
  CHECK(view.capacity == rat(14));
  CHECK(view.attributes.size() == 1);
  CHECK(view.attributes.at("location") == "pop1");
  CHECK(view.attributes.count("vendor") == 0);

  c.granularity = rat(4);
  auto coarse = m.abstract(id, c);
  CHECK(coarse.capacity == rat(12));

  AbstractionCriteria empty;
  CHECK_THROWS_AS(m.abstract(id, empty), Error);
}

TEST_CASE("partition subtracts hard reservations from the parent") {
  ResourceModel m;
  auto root = m.add_physical(ResKind::Networking, rat(100), "inp1");
  auto kids = m.partition(root, {rat(60)}, "tenant-a");
  REQUIRE(kids.size() == 1);
  CHECK(m.free_capacity(root) == rat(40));
  CHECK(m.get(kids[0]).layer == 1);
  CHECK(m.get(kids[0]).share == rat(60));
  CHECK(m.effective_capacity(kids[0]) == rat(60));

  auto grand = m.partition(kids[0], {rat(25)}, "tenant-b");
  CHECK(m.free_capacity(kids[0]) == rat(35));
  CHECK(m.get(grand[0]).layer == 2);
  CHECK(m.effective_capacity(grand[0]) == rat(25));
  CHECK(m.effective_capacity(root) == rat(100));

  // Over-committing the remaining free pool is rejected.
  CHECK_THROWS_AS(m.partition(root, {rat(41)}, "x"), Error);
  CHECK_THROWS_AS(m.partition(root, {rat(0)}, "x"), Error);
  CHECK_THROWS_AS(m.partition(root, std::vector<Rat>{}, "x"), Error);
  m.audit();
}

TEST_CASE("release returns the share to the parent's free pool") {
  ResourceModel m;
  auto root = m.add_physical(ResKind::Compute, rat(50), "inp1");
  auto kids = m.partition(root, {rat(20), rat(10)});
  CHECK(m.free_capacity(root) == rat(20));
  m.release(kids[1]);
  CHECK(m.free_capacity(root) == rat(30));
  // A released share can be handed out again.
  auto again = m.partition(root, {rat(30)});
  CHECK(m.free_capacity(root) == rat(0));
  m.release(again[0]);
  m.release(kids[0]);
  CHECK(m.free_capacity(root) == rat(50));
  // Physical roots are not releasable; neither are parents of live children.
  CHECK_THROWS_AS(m.release(root), Error);
  auto a = m.partition(root, {rat(10)});
  m.partition(a[0], {rat(5)});
  CHECK_THROWS_AS(m.release(a[0]), Error);
}

TEST_CASE("aggregation sums capacity and intersects attributes") {
  ResourceModel m;
  auto a = m.add_physical(ResKind::Networking, rat(30), "inp1",
                          {{"location", "pop1"}, {"tier", "gold"}});
  auto b = m.add_physical(ResKind::Networking, rat(70), "inp1",
                          {{"location", "pop2"}, {"tier", "gold"}});
  auto agg = m.aggregate({a, b}, "inp1");
  const Resource& r = m.get(agg);
  CHECK(r.capacity == rat(100));
  CHECK(r.layer == 1);
  CHECK(r.provenance == Provenance::Aggregation);
  CHECK(r.attributes.size() == 1);
  CHECK(r.attributes.at("tier") == "gold");

  auto c = m.add_physical(ResKind::Compute, rat(10), "inp1");
  CHECK_THROWS_AS(m.aggregate({a, c}), Error);
  CHECK_THROWS_AS(m.aggregate({}), Error);
}

TEST_CASE("forged over-committed child trips the conservation audit") {
  ResourceModel m;
  auto root = m.add_physical(ResKind::Networking, rat(100), "inp1");
  auto kids = m.partition(root, {rat(60)});
  // Bypass the public API and inflate the child's share beyond the parent.
  m.mutable_node(kids[0]).share = rat(150);
  m.mutable_node(kids[0]).capacity = rat(150);
  CHECK_THROWS_AS(m.effective_capacity(kids[0]), Error);
  CHECK_THROWS_AS(m.audit(), Error);
}

TEST_CASE("randomized partition/release sequences conserve capacity") {
  std::mt19937_64 rng(42);
  for (int iter = 0; iter < 200; ++iter) {
    ResourceModel m;
    auto root = m.add_physical(ResKind::Networking, rat(1000), "inp1");
    std::vector<std::string> live{root};
    for (int step = 0; step < 40; ++step) {
      if (rng() % 3 != 0 || live.size() == 1) {
        const std::string& parent = live[rng() % live.size()];
        Rat free = m.free_capacity(parent);
        if (free <= rat(0)) continue;
        Rat share(BigInt(1 + static_cast<long long>(
                      rng() % 1000)) * free.numerator(),
                  BigInt(1000) * free.denominator());
        if (share <= rat(0)) continue;
        auto kids = m.partition(parent, {share});
        live.push_back(kids[0]);
      } else {
        const std::string& victim = live[rng() % live.size()];
        try {
          m.release(victim);
          live.erase(std::find(live.begin(), live.end(), victim));
        } catch (const Error&) {
          // roots and parents of live children stay put
        }
      }
      m.audit();
    }
    CHECK(m.effective_capacity(root) == rat(1000));
  }
}
