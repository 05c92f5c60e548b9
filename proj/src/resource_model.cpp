#include "nsim/resource_model.hpp"

#include <algorithm>

namespace nsim::res {

using nsim::to_string;

const char* to_string(ResKind kind) {
  switch (kind) {
    case ResKind::Compute: return "compute";
    case ResKind::Storage: return "storage";
    case ResKind::Networking: return "networking";
    case ResKind::RadioAccess: return "radio-access";
  }
  return "unknown";
}

std::optional<ResKind> kind_from_string(const std::string& name) {
  if (name == "compute") return ResKind::Compute;
  if (name == "storage") return ResKind::Storage;
  if (name == "networking") return ResKind::Networking;
  if (name == "radio-access") return ResKind::RadioAccess;
  return std::nullopt;
}

std::string ResourceModel::add_physical(
    ResKind kind, const Rat& capacity, const std::string& owner,
    std::map<std::string, std::string> attributes) {
  if (capacity < Rat(0)) {
    throw Error(Errc::InvalidOperation, "capacity must be non-negative");
  }
  Resource r;
  r.id = "res-" + std::to_string(next_id_++);
  r.kind = kind;
  r.capacity = capacity;
  r.attributes = std::move(attributes);
  r.owner = owner;
  r.layer = 0;
  r.provenance = Provenance::Physical;
  nodes_.emplace(r.id, r);
  return r.id;
}

bool ResourceModel::contains(const std::string& id) const {
  auto it = nodes_.find(id);
  return it != nodes_.end() && !it->second.released;
}

const Resource& ResourceModel::require(const std::string& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end() || it->second.released) {
    throw Error(Errc::UnknownResource, id);
  }
  return it->second;
}

const Resource& ResourceModel::get(const std::string& id) const {
  return require(id);
}

AbstractView ResourceModel::abstract(const std::string& id,
                                     const AbstractionCriteria& criteria) const {
  const Resource& r = require(id);
  if (criteria.whitelist.empty()) {
    throw Error(Errc::InvalidOperation, "abstraction whitelist must be non-empty");
  }
  AbstractView view;
  view.kind = r.kind;
  view.capacity = criteria.granularity
                      ? floor_to_granularity(r.capacity, *criteria.granularity)
                      : r.capacity;
  for (const auto& [key, value] : r.attributes) {
    if (criteria.whitelist.count(key) > 0) {
      view.attributes.emplace(key, value);
    }
  }
  return view;
}

Rat ResourceModel::live_partition_sum(const std::string& id) const {
  Rat sum(0);
  for (const auto& [cid, child] : nodes_) {
    if (!child.released && child.provenance == Provenance::Partition &&
        child.parents.front() == id) {
      sum += child.share;
    }
  }
  return sum;
}

Rat ResourceModel::free_capacity(const std::string& id) const {
  const Resource& r = require(id);
  return r.capacity - live_partition_sum(id);
}

std::vector<std::string> ResourceModel::partition(const std::string& id,
                                                  const std::vector<Rat>& shares,
                                                  const std::string& owner) {
  const Resource& parent = require(id);
  if (shares.empty()) {
    throw Error(Errc::EmptyInput, "partition requires at least one share");
  }
  Rat total(0);
  for (const Rat& s : shares) {
    if (s <= Rat(0)) {
      throw Error(Errc::InvalidOperation, "partition shares must be positive");
    }
    total += s;
  }
  if (total + live_partition_sum(id) > parent.capacity) {
    throw Error(Errc::OverCommit,
                "partition of " + id + " exceeds capacity " +
                    to_string(parent.capacity));
  }
  std::vector<std::string> children;
  for (const Rat& s : shares) {
    Resource child;
    child.id = "res-" + std::to_string(next_id_++);
    child.kind = parent.kind;
    child.capacity = s;
    child.attributes = parent.attributes;
    child.owner = owner.empty() ? parent.owner : owner;
    child.layer = parent.layer + 1;
    child.provenance = Provenance::Partition;
    child.parents = {id};
    child.share = s;
    children.push_back(child.id);
    nodes_.emplace(child.id, std::move(child));
  }
  return children;
}

std::string ResourceModel::aggregate(const std::vector<std::string>& ids,
                                     const std::string& owner) {
  if (ids.empty()) {
    throw Error(Errc::EmptyInput, "aggregate requires at least one resource");
  }
  const Resource& first = require(ids.front());
  Rat total(0);
  int max_layer = 0;
  for (const auto& rid : ids) {
    const Resource& member = require(rid);
    if (member.kind != first.kind) {
      throw Error(Errc::KindMismatch,
                  rid + " is " + std::string(to_string(member.kind)) +
                      ", expected " + to_string(first.kind));
    }
    total += member.capacity;
    max_layer = std::max(max_layer, member.layer);
  }
  Resource agg;
  agg.id = "res-" + std::to_string(next_id_++);
  agg.kind = first.kind;
  agg.capacity = total;
  agg.owner = owner.empty() ? first.owner : owner;
  agg.layer = max_layer + 1;
  agg.provenance = Provenance::Aggregation;
  agg.parents = ids;
  // Exposed attributes: keys present on every member with agreeing values.
  agg.attributes = first.attributes;
  for (const auto& rid : ids) {
    const Resource& member = require(rid);
    for (auto it = agg.attributes.begin(); it != agg.attributes.end();) {
      auto found = member.attributes.find(it->first);
      if (found == member.attributes.end() || found->second != it->second) {
        it = agg.attributes.erase(it);
      } else {
        ++it;
      }
    }
  }
  std::string id = agg.id;
  nodes_.emplace(id, std::move(agg));
  return id;
}

void ResourceModel::release(const std::string& id) {
  const Resource& r = require(id);
  if (r.provenance != Provenance::Partition) {
    throw Error(Errc::InvalidOperation, "only partition children can be released");
  }
  if (live_partition_sum(id) > Rat(0)) {
    throw Error(Errc::InvalidOperation,
                id + " still has live partitions and cannot be released");
  }
  nodes_.at(id).released = true;
}

void ResourceModel::audit_chain(const std::string& id,
                                std::set<std::string>& seen) const {
  if (!seen.insert(id).second) {
    return;
  }
  const Resource& r = require(id);
  if (r.provenance == Provenance::Partition) {
    const std::string& pid = r.parents.front();
    const Resource& parent = require(pid);
    if (live_partition_sum(pid) > parent.capacity) {
      throw Error(Errc::ConservationViolation,
                  "live shares under " + pid + " exceed capacity " +
                      to_string(parent.capacity));
    }
    audit_chain(pid, seen);
  } else if (r.provenance == Provenance::Aggregation) {
    for (const auto& pid : r.parents) {
      audit_chain(pid, seen);
    }
  }
}

Rat ResourceModel::effective_capacity(const std::string& id) const {
  const Resource& r = require(id);
  std::set<std::string> seen;
  audit_chain(id, seen);
  return r.capacity;
}

void ResourceModel::audit() const {
  for (const auto& [id, r] : nodes_) {
    if (r.released) {
      continue;
    }
    if (live_partition_sum(id) > r.capacity) {
      throw Error(Errc::ConservationViolation,
                  "live shares under " + id + " exceed capacity " +
                      to_string(r.capacity));
    }
  }
}

std::vector<std::string> ResourceModel::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, r] : nodes_) {
    if (!r.released) {
      out.push_back(id);
    }
  }
  return out;
}

Resource& ResourceModel::mutable_node(const std::string& id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) {
    // Forge a fresh node under the given id.
    Resource r;
    r.id = id;
    it = nodes_.emplace(id, std::move(r)).first;
  }
  return it->second;
}

}  // namespace nsim::res
