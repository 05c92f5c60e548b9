#include "nsim/mano.hpp"

#include <algorithm>
#include <sstream>

#include "nsim/error.hpp"

namespace nsim::mano {

using nsim::to_string;

Lease Vim::lease(res::ResourceModel& model, const std::string& tenant,
                 res::ResKind kind, const Rat& quantity,
                 const std::string& location, std::uint64_t& lease_counter) {
  if (tenants.count(tenant) == 0) {
    throw Error(Errc::UnknownTenant, tenant + " not registered with " + id);
  }
  auto loc = inventory.find(location);
  if (loc == inventory.end() || loc->second.count(kind) == 0) {
    throw Error(Errc::Insufficient,
                "no " + std::string(res::to_string(kind)) + " inventory at " +
                    location);
  }
  const std::string& backing = loc->second.at(kind);
  if (quantity > model.free_capacity(backing)) {
    throw Error(Errc::Insufficient,
                "requested " + to_string(quantity) + " of " +
                    res::to_string(kind) + " at " + location);
  }
  auto children = model.partition(backing, {quantity}, tenant);
  Lease l{"lease-" + std::to_string(lease_counter++), tenant, kind, location,
          quantity, children.front()};
  leases.push_back(l);
  return l;
}

void Vim::release_lease(res::ResourceModel& model, const std::string& lease_id) {
  auto it = std::find_if(leases.begin(), leases.end(),
                         [&](const Lease& l) { return l.id == lease_id; });
  if (it == leases.end()) {
    throw Error(Errc::UnknownResource, lease_id);
  }
  model.release(it->backing);
  leases.erase(it);
}

UsageSnapshot Vim::usage() const {
  UsageSnapshot snap{id, {}, Rat(0)};
  for (const Lease& l : leases) {
    snap.rows.push_back({l.tenant, l.kind, l.location, l.quantity});
    snap.total += l.quantity;
  }
  return snap;
}

bool Wim::covers(const std::string& endpoint) const {
  for (const WanLink& l : links) {
    if (l.touches(endpoint)) {
      return true;
    }
  }
  return false;
}

Lease Wim::lease(res::ResourceModel& model, const std::string& tenant,
                 const Rat& quantity, std::uint64_t& lease_counter) {
  if (tenants.count(tenant) == 0) {
    throw Error(Errc::UnknownTenant, tenant + " not registered with " + id);
  }
  if (quantity > model.free_capacity(pool)) {
    throw Error(Errc::Insufficient,
                "requested " + to_string(quantity) + " WAN bandwidth from " + id);
  }
  auto children = model.partition(pool, {quantity}, tenant);
  Lease l{"lease-" + std::to_string(lease_counter++), tenant,
          res::ResKind::Networking, "wan", quantity, children.front()};
  leases.push_back(l);
  return l;
}

UsageSnapshot Wim::usage() const {
  UsageSnapshot snap{id, {}, Rat(0)};
  for (const Lease& l : leases) {
    snap.rows.push_back({l.tenant, l.kind, l.location, l.quantity});
    snap.total += l.quantity;
  }
  return snap;
}

Path wim_path(const std::map<std::string, Wim>& wims, const std::string& origin,
              const std::string& from, const std::string& to,
              const Rat& bandwidth) {
  auto oit = wims.find(origin);
  if (oit == wims.end()) {
    throw Error(Errc::UnknownResource, origin);
  }
  const Wim& o = oit->second;
  // Direct link on the origin WIM.
  for (const WanLink& l : o.links) {
    if (l.touches(from) && l.touches(to)) {
      if (l.capacity - l.used < bandwidth) {
        throw Error(Errc::NoCapacity, l.id);
      }
      return Path{{{o.id, l.id}}};
    }
  }
  // Delegate across exactly one peering hop: origin covers `from`, peer
  // covers `to`, and the two segments meet at a shared endpoint.
  bool structure_found = false;
  for (const WanLink& l1 : o.links) {
    if (!l1.touches(from)) continue;
    const std::string mid = l1.other(from);
    for (const auto& [pid, peer] : wims) {
      if (pid == origin || o.peers.count(pid) == 0) continue;
      for (const WanLink& l2 : peer.links) {
        if (!l2.touches(mid) || !l2.touches(to)) continue;
        structure_found = true;
        if (l1.capacity - l1.used >= bandwidth &&
            l2.capacity - l2.used >= bandwidth) {
          return Path{{{o.id, l1.id}, {peer.id, l2.id}}};
        }
      }
    }
  }
  if (structure_found) {
    throw Error(Errc::NoCapacity, from + " -> " + to);
  }
  // Somebody covers the destination but no agreement reaches them.
  for (const auto& [pid, wim] : wims) {
    if (pid != origin && wim.covers(to)) {
      throw Error(Errc::NoPeering, origin + " has no agreement with " + pid);
    }
  }
  throw Error(Errc::NoCapacity, "no WAN covers " + to);
}

const char* to_string(VnfState state) {
  switch (state) {
    case VnfState::Null: return "Null";
    case VnfState::Instantiated: return "Instantiated";
    case VnfState::Configured: return "Configured";
    case VnfState::Running: return "Running";
    case VnfState::Terminated: return "Terminated";
  }
  return "unknown";
}

bool legal_vnf_edge(VnfState from, VnfState to) {
  switch (from) {
    case VnfState::Null: return to == VnfState::Instantiated;
    case VnfState::Instantiated: return to == VnfState::Configured;
    case VnfState::Configured: return to == VnfState::Running;
    case VnfState::Running:
      return to == VnfState::Running || to == VnfState::Terminated;
    case VnfState::Terminated: return false;
  }
  return false;
}

VnfState Vnfm::transition(const std::string& vnf_id, VnfState target, int scale) {
  auto it = vnfs.find(vnf_id);
  if (it == vnfs.end()) {
    throw Error(Errc::UnknownVnf, vnf_id);
  }
  VnfInstance& vnf = it->second;
  if (!legal_vnf_edge(vnf.state, target)) {
    throw Error(Errc::IllegalTransition,
                vnf_id + ": " + to_string(vnf.state) + " -> " +
                    to_string(target));
  }
  if (vnf.state == VnfState::Running && target == VnfState::Running) {
    if (scale < 1) {
      throw Error(Errc::IllegalTransition, "scale level must be positive");
    }
    vnf.scale = scale;
  }
  vnf.state = target;
  return vnf.state;
}

void Ro::add_lease(res::ResKind kind, const std::string& location,
                   const Rat& qty) {
  leased[{kind, location}] += qty;
}

void Ro::remove_lease(res::ResKind kind, const std::string& location,
                      const Rat& qty) {
  PoolKey key{kind, location};
  auto it = leased.find(key);
  if (it == leased.end() || it->second < qty) {
    throw Error(Errc::InvalidOperation, "lease underflow");
  }
  if (it->second - qty < reserved_total(kind, location)) {
    throw Error(Errc::InvalidOperation,
                "cannot shrink lease below reserved quantity");
  }
  it->second -= qty;
}

Rat Ro::reserved_total(res::ResKind kind, const std::string& location) const {
  Rat sum(0);
  for (const auto& [slice, pools] : reservations) {
    auto it = pools.find({kind, location});
    if (it != pools.end()) {
      sum += it->second;
    }
  }
  return sum;
}

Rat Ro::networking_lease_total() const {
  Rat sum(0);
  for (const auto& [key, qty] : leased) {
    if (key.first == res::ResKind::Networking) {
      sum += qty;
    }
  }
  return sum;
}

void Ro::reserve(const std::string& slice, res::ResKind kind,
                 const std::string& location, const Rat& qty) {
  PoolKey key{kind, location};
  auto it = leased.find(key);
  Rat have = it == leased.end() ? Rat(0) : it->second;
  if (reserved_total(kind, location) + qty > have) {
    throw Error(Errc::InsufficientLease,
                tenant + " lacks " + to_string(qty) + " of " +
                    res::to_string(kind) + " at " + location);
  }
  reservations[slice][key] += qty;
}

void Ro::release_slice(const std::string& slice) {
  reservations.erase(slice);
  floors.erase(slice);
}

std::map<std::string, Rat> Ro::allocate(
    const std::map<std::string, Rat>& offered) const {
  std::map<std::string, Rat> out;
  if (policy == RoPolicy::Dedicated) {
    for (const auto& [slice, pools] : reservations) {
      Rat share(0);
      for (const auto& [key, qty] : pools) {
        if (key.first == res::ResKind::Networking) {
          share += qty;
        }
      }
      out[slice] = share;
    }
    return out;
  }
  std::vector<alloc::Request> requests;
  for (const auto& [slice, pools] : reservations) {
    Rat demand(0);
    auto it = offered.find(slice);
    if (it != offered.end()) {
      demand = it->second;
    }
    Rat floor(0);
    auto fit = floors.find(slice);
    if (fit != floors.end()) {
      floor = fit->second;
    }
    requests.push_back({slice, demand, floor, Rat(1)});
  }
  return alloc::water_fill(requests, networking_lease_total());
}

UsageSnapshot Ro::usage() const {
  UsageSnapshot snap{"ro:" + tenant, {}, Rat(0)};
  for (const auto& [slice, pools] : reservations) {
    for (const auto& [key, qty] : pools) {
      snap.rows.push_back({slice, key.first, key.second, qty});
      snap.total += qty;
    }
  }
  return snap;
}

std::vector<OverlayRule> Tc::compose(const NetworkServiceDescriptor& descriptor,
                                     const std::vector<std::string>& vnf_ids,
                                     const Vnfm& vnfm,
                                     std::uint64_t& rule_counter) {
  std::vector<OverlayRule> out;
  for (const DescriptorEdge& edge : descriptor.edges) {
    const std::string& from = vnf_ids.at(static_cast<std::size_t>(edge.from));
    const std::string& to = vnf_ids.at(static_cast<std::size_t>(edge.to));
    for (const std::string& vid : {from, to}) {
      const VnfInstance& vnf = vnfm.vnfs.at(vid);
      if (vnf.state != VnfState::Running) {
        throw Error(Errc::VnfNotRunning,
                    vid + " is " + to_string(vnf.state));
      }
    }
    out.push_back({"ovr-" + std::to_string(rule_counter++), from, to,
                   edge.bandwidth});
  }
  rules.insert(rules.end(), out.begin(), out.end());
  return out;
}

std::string Ic::serialize() const {
  std::ostringstream os;
  os << "ic " << id << "\n";
  for (const UnderlayRule& r : rules) {
    os << r.id << " " << r.src_vm << " -> " << r.dst_vm << " bw="
       << to_string(r.bandwidth);
    for (const std::string& link : r.link_ids) {
      os << " via " << link;
    }
    os << "\n";
  }
  return os.str();
}

const char* to_string(SliceState state) {
  switch (state) {
    case SliceState::Requested: return "Requested";
    case SliceState::Creating: return "Creating";
    case SliceState::Active: return "Active";
    case SliceState::Faulted: return "Faulted";
    case SliceState::Terminated: return "Terminated";
  }
  return "unknown";
}

bool legal_slice_edge(SliceState from, SliceState to) {
  switch (from) {
    case SliceState::Requested:
      return to == SliceState::Creating || to == SliceState::Terminated;
    case SliceState::Creating:
      return to == SliceState::Active || to == SliceState::Terminated;
    case SliceState::Active:
      return to == SliceState::Faulted || to == SliceState::Terminated;
    case SliceState::Faulted:
      return to == SliceState::Terminated;
    case SliceState::Terminated:
      return false;
  }
  return false;
}

}  // namespace nsim::mano
