#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nsim/error.hpp"
#include "nsim/rational.hpp"

namespace nsim::res {

enum class ResKind { Compute, Storage, Networking, RadioAccess };

const char* to_string(ResKind kind);
std::optional<ResKind> kind_from_string(const std::string& name);

enum class Provenance { Physical, Partition, Aggregation };

struct Resource {
  std::string id;
  ResKind kind = ResKind::Compute;
  Rat capacity;
  std::map<std::string, std::string> attributes;
  std::string owner;
  int layer = 0;
  Provenance provenance = Provenance::Physical;
  std::vector<std::string> parents;  // Partition: exactly one; Aggregation: >= 1
  Rat share;                         // Partition provenance only
  bool released = false;
};

struct AbstractionCriteria {
  std::set<std::string> whitelist;   // attribute names to expose; must be non-empty
  std::optional<Rat> granularity;    // advertised capacity is floored to this
};

struct AbstractView {
  ResKind kind = ResKind::Compute;
  Rat capacity;
  std::map<std::string, std::string> attributes;
};

struct NetworkFunction {
  std::string id;
  bool virtualized = true;
  std::set<std::string> capabilities;         // at least one tag
  std::map<ResKind, Rat> demand;
};

struct ResourceGroup {
  std::string id;
  std::vector<std::string> members;  // resource ids, no duplicates
};

// Layered capacity tree. Partitions are hard reservations: the parent's free
// capacity shrinks when children are created and grows back on release.
// Single-writer; copies are independent snapshots.
class ResourceModel {
 public:
  std::string add_physical(ResKind kind, const Rat& capacity,
                           const std::string& owner,
                           std::map<std::string, std::string> attributes = {});

  bool contains(const std::string& id) const;
  const Resource& get(const std::string& id) const;

  AbstractView abstract(const std::string& id,
                        const AbstractionCriteria& criteria) const;

  std::vector<std::string> partition(const std::string& id,
                                     const std::vector<Rat>& shares,
                                     const std::string& owner = "");

  std::string aggregate(const std::vector<std::string>& ids,
                        const std::string& owner = "");

  // Inverse of partition. Only a partition child with no live children of its
  // own may be released; its share returns to the parent's free pool.
  void release(const std::string& id);

  Rat free_capacity(const std::string& id) const;

  // Capacity of the node, after auditing conservation along the provenance
  // chain up to the physical roots.
  Rat effective_capacity(const std::string& id) const;

  // Whole-model conservation audit.
  void audit() const;

  std::vector<std::string> ids() const;

  // Test hook: direct node access, bypassing the public invariant-preserving
  // operations. Used to forge corrupt states for detector tests.
  Resource& mutable_node(const std::string& id);

 private:
  const Resource& require(const std::string& id) const;
  Rat live_partition_sum(const std::string& id) const;
  void audit_chain(const std::string& id, std::set<std::string>& seen) const;

  std::map<std::string, Resource> nodes_;
  unsigned long long next_id_ = 1;
};

}  // namespace nsim::res
