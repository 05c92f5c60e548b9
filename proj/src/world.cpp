#include "nsim/world.hpp"

#include <algorithm>
#include <sstream>

#include "nsim/error.hpp"

namespace nsim {

using mano::SliceState;
using mano::VnfState;

const TenantState& World::tenant(const std::string& id) const {
  auto it = tenants.find(id);
  if (it == tenants.end()) {
    throw Error(Errc::UnknownTenant, id);
  }
  return it->second;
}

TenantState& World::tenant(const std::string& id) {
  auto it = tenants.find(id);
  if (it == tenants.end()) {
    throw Error(Errc::UnknownTenant, id);
  }
  return it->second;
}

World World::from_scenario(const scenario::Document& doc) {
  World w;
  w.oss_whitelist = doc.oss_whitelist;

  for (const scenario::InpDef& inp : doc.inps) {
    if (!inp.pops.empty()) {
      mano::Vim vim;
      vim.id = "vim-" + inp.id;
      vim.ic_id = "ic-" + vim.id;
      for (const scenario::PopDef& pop : inp.pops) {
        vim.inventory[pop.id][res::ResKind::Compute] = w.model.add_physical(
            res::ResKind::Compute, pop.compute, inp.id, {{"location", pop.id}});
        vim.inventory[pop.id][res::ResKind::Networking] = w.model.add_physical(
            res::ResKind::Networking, pop.networking, inp.id,
            {{"location", pop.id}});
      }
      w.ics.emplace(vim.ic_id, mano::Ic{vim.ic_id, vim.id, {}});
      w.vims.emplace(vim.id, std::move(vim));
    }
    if (inp.wan) {
      mano::Wim wim;
      wim.id = inp.wan->id;
      wim.ic_id = "ic-" + wim.id;
      Rat pool_cap(0);
      for (const scenario::LinkDef& link : inp.wan->links) {
        wim.links.push_back({link.id, link.a, link.b, link.capacity, Rat(0)});
        pool_cap = std::max(pool_cap, link.capacity);
      }
      // Leasable WAN bandwidth is bounded by the thinnest usable link.
      for (const mano::WanLink& link : wim.links) {
        pool_cap = std::min(pool_cap, link.capacity);
      }
      wim.pool = w.model.add_physical(res::ResKind::Networking, pool_cap,
                                      inp.id, {{"location", "wan"}});
      w.ics.emplace(wim.ic_id, mano::Ic{wim.ic_id, wim.id, {}});
      w.wims.emplace(wim.id, std::move(wim));
    }
  }
  for (const auto& [a, b] : doc.peerings) {
    w.wims.at(a).peers.insert(b);
    w.wims.at(b).peers.insert(a);
  }

  for (const scenario::DescriptorDef& d : doc.descriptors) {
    mano::NetworkServiceDescriptor nsd;
    nsd.id = d.id;
    for (const scenario::VnfDef& v : d.vnfs) {
      nsd.vnfs.push_back({v.name, v.capabilities, v.compute, v.pop, v.is_switch});
    }
    nsd.edges = d.edges;
    w.descriptors.emplace(d.id, std::move(nsd));
  }
  for (const scenario::BlueprintDef& b : doc.blueprints) {
    mano::SliceBlueprint bp;
    bp.id = b.id;
    bp.descriptor = b.descriptor;
    bp.sla.throughput_floor = b.throughput_floor;
    bp.sla.latency_ceiling = b.latency_ceiling;
    w.blueprints.emplace(b.id, std::move(bp));
  }

  // Administrator sees everything; tenants get class-level rules scoped to
  // their own slices (scopes grow as slices activate).
  w.enforcer.policy.unscoped_actors.insert("admin");
  w.enforcer.policy.security.push_back({"admin", "*", "*"});

  for (const scenario::TenantDef& t : doc.tenants) {
    TenantState ts;
    ts.id = t.id;
    ts.ro.tenant = t.id;
    ts.ro.policy = t.ro_policy;
    ts.vnfm.id = "vnfm-" + t.id;
    ts.vnfm.tenant = t.id;
    w.enforcer.policy.security.push_back({t.id, "*", "*"});
    w.tenants.emplace(t.id, std::move(ts));
  }

  // Leases: VIM/WIM leases first, then tenant-to-tenant subleases so that a
  // provider's backing resources already exist.
  for (const scenario::TenantDef& t : doc.tenants) {
    TenantState& ts = w.tenants.at(t.id);
    for (const scenario::LeaseDef& l : t.leases) {
      if (!l.vim.empty()) {
        mano::Vim& vim = w.vims.at(l.vim);
        vim.tenants.insert(t.id);
        mano::Lease lease =
            vim.lease(w.model, t.id, l.kind, l.quantity, l.location,
                      w.lease_counter);
        ts.ro.add_lease(l.kind, l.location, l.quantity);
        ts.lease_backings.push_back(lease.backing);
        if (l.kind == res::ResKind::Networking) {
          ts.networking_location = l.location;
        }
      } else if (!l.wim.empty()) {
        mano::Wim& wim = w.wims.at(l.wim);
        wim.tenants.insert(t.id);
        mano::Lease lease = wim.lease(w.model, t.id, l.quantity, w.lease_counter);
        ts.ro.add_lease(res::ResKind::Networking, "wan", l.quantity);
        ts.lease_backings.push_back(lease.backing);
        ts.networking_location = "wan";
        ts.origin_wim = l.wim;
      }
    }
  }
  for (const scenario::TenantDef& t : doc.tenants) {
    TenantState& ts = w.tenants.at(t.id);
    for (const scenario::LeaseDef& l : t.leases) {
      if (l.provider.empty()) {
        continue;
      }
      // Recursion: the provider tenant re-offers part of its own lease.
      TenantState& provider = w.tenants.at(l.provider);
      std::string source;
      for (const std::string& backing : provider.lease_backings) {
        const res::Resource& r = w.model.get(backing);
        if (r.kind == l.kind &&
            w.model.free_capacity(backing) >= l.quantity &&
            r.attributes.count("location") > 0 &&
            r.attributes.at("location") == l.location) {
          source = backing;
          break;
        }
      }
      if (source.empty()) {
        throw Error(Errc::Insufficient,
                    l.provider + " cannot sublease to " + t.id);
      }
      auto children = w.model.partition(source, {l.quantity}, t.id);
      ts.ro.add_lease(l.kind, l.location, l.quantity);
      ts.lease_backings.push_back(children.front());
      provider.sublease_pool[res::to_string(l.kind)] += l.quantity;
      if (l.kind == res::ResKind::Networking) {
        ts.networking_location = l.location;
        ts.origin_wim = provider.origin_wim;
      }
    }
  }
  return w;
}

void World::set_slice_state(const std::string& slice_id, SliceState next,
                            const Rat& now, sim::Trace& trace,
                            std::int64_t cause) {
  mano::NetworkSlice& s = slices.at(slice_id);
  if (!mano::legal_slice_edge(s.state, next)) {
    throw Error(Errc::IllegalTransition,
                slice_id + ": " + mano::to_string(s.state) + " -> " +
                    mano::to_string(next));
  }
  trace.append(now, sim::EventKind::BlockMessage, "lifecycle", slice_id,
               std::string("slice-state ") + mano::to_string(s.state) + " -> " +
                   mano::to_string(next),
               cause);
  s.state = next;
}

void World::create_slice(const std::string& tenant_id,
                         const std::string& slice_id,
                         const std::string& blueprint_id,
                         const std::string& user, const Rat& reservation,
                         const Rat& floor, const Rat& now, sim::Trace& trace,
                         std::int64_t cause, int inject_fail_at) {
  auto bit = blueprints.find(blueprint_id);
  if (bit == blueprints.end()) {
    throw Error(Errc::UnknownBlueprint, blueprint_id);
  }
  TenantState& ts = tenant(tenant_id);
  const mano::SliceBlueprint& bp = bit->second;
  const mano::NetworkServiceDescriptor& nsd = descriptors.at(bp.descriptor);

  World snapshot = *this;
  try {
    mano::NetworkSlice s;
    s.id = slice_id;
    s.tenant = tenant_id;
    s.blueprint = blueprint_id;
    s.user = user;
    s.oss_id = "oss@" + slice_id;
    s.tc_id = "tc@" + slice_id;
    s.nso_id = "nso@" + slice_id;
    s.sla = bp.sla;
    s.reservation = reservation;
    slices.emplace(slice_id, s);
    set_slice_state(slice_id, SliceState::Creating, now, trace, cause);

    // Step 1: RO reserves compute per VNF and the slice's bandwidth share.
    for (const mano::VnfSpec& spec : nsd.vnfs) {
      if (ts.ro.leased.count({res::ResKind::Compute, spec.pop}) == 0) {
        throw Error(Errc::PlacementInfeasible,
                    tenant_id + " holds no compute lease at " + spec.pop);
      }
      ts.ro.reserve(slice_id, res::ResKind::Compute, spec.pop, spec.compute);
    }
    ts.ro.reserve(slice_id, res::ResKind::Networking, ts.networking_location,
                  reservation);
    ts.ro.floors[slice_id] = floor;
    trace.append(now, sim::EventKind::BlockMessage, "ro:" + tenant_id, slice_id,
                 "reserved resources for " + slice_id, cause);
    if (inject_fail_at == 1) throw InjectedFailure{1};

    // Step 2: NSO instantiates the network service descriptor.
    mano::Nso nso;
    nso.id = s.nso_id;
    nso.slice = slice_id;
    nso.descriptors.insert(nsd.id);
    mano::ServiceInstance inst;
    inst.id = "nsi-" + std::to_string(vnf_counter);
    inst.descriptor = nsd.id;
    for (const mano::VnfSpec& spec : nsd.vnfs) {
      mano::VnfInstance vnf;
      vnf.id = "vnf-" + std::to_string(vnf_counter++);
      vnf.slice = slice_id;
      vnf.vm = "vm-" + std::to_string(vm_counter++);
      vnf.location = spec.pop;
      vnf.is_switch = spec.is_switch;
      vnf.capabilities = spec.capabilities;
      vnf.demand[res::ResKind::Compute] = spec.compute;
      inst.vnf_ids.push_back(vnf.id);
      ts.vnfm.vnfs.emplace(vnf.id, std::move(vnf));
    }
    nso.instances.emplace(inst.id, inst);
    nsos.emplace(nso.id, std::move(nso));
    slices.at(slice_id).vnf_ids = inst.vnf_ids;
    trace.append(now, sim::EventKind::BlockMessage, s.nso_id, slice_id,
                 "instantiated " + nsd.id + " as " + inst.id, cause);
    if (inject_fail_at == 2) throw InjectedFailure{2};

    // Step 3: VNFM drives every VNF to Running.
    for (const std::string& vid : inst.vnf_ids) {
      ts.vnfm.transition(vid, VnfState::Instantiated);
      ts.vnfm.transition(vid, VnfState::Configured);
      ts.vnfm.transition(vid, VnfState::Running);
      trace.append(now, sim::EventKind::BlockMessage, ts.vnfm.id, slice_id,
                   vid + " -> Running", cause);
    }
    if (inject_fail_at == 3) throw InjectedFailure{3};

    // Step 4: TC composes the forwarding graph as overlay rules.
    mano::Tc tc;
    tc.id = s.tc_id;
    tc.slice = slice_id;
    for (const std::string& vid : inst.vnf_ids) {
      if (ts.vnfm.vnfs.at(vid).is_switch) {
        tc.host_vm = ts.vnfm.vnfs.at(vid).vm;
        break;
      }
    }
    auto overlay = tc.compose(nsd, inst.vnf_ids, ts.vnfm, rule_counter);
    tcs.emplace(tc.id, std::move(tc));
    trace.append(now, sim::EventKind::BlockMessage, s.tc_id, slice_id,
                 "composed " + std::to_string(overlay.size()) + " overlay rules",
                 cause);
    if (inject_fail_at == 4) throw InjectedFailure{4};

    // Step 5: IC programs underlay connectivity for every graph edge.
    int underlay_rules = 0;
    for (const mano::DescriptorEdge& edge : nsd.edges) {
      const mano::VnfInstance& from =
          ts.vnfm.vnfs.at(inst.vnf_ids.at(static_cast<std::size_t>(edge.from)));
      const mano::VnfInstance& to =
          ts.vnfm.vnfs.at(inst.vnf_ids.at(static_cast<std::size_t>(edge.to)));
      if (from.location == to.location) {
        // Intra-PoP: rule on the hosting VIM's IC, no WAN involvement.
        for (auto& [vid, vim] : vims) {
          if (vim.inventory.count(from.location) > 0) {
            ics.at(vim.ic_id).rules.push_back(
                {"und-" + std::to_string(rule_counter++), from.vm, to.vm, {},
                 edge.bandwidth});
            ++underlay_rules;
            break;
          }
        }
      } else {
        if (ts.origin_wim.empty()) {
          throw Error(Errc::NoCapacity,
                      tenant_id + " holds no WAN lease for a cross-PoP edge");
        }
        mano::Path path = mano::wim_path(wims, ts.origin_wim, from.location,
                                         to.location, edge.bandwidth);
        std::vector<std::string> link_ids;
        for (const mano::PathSegment& seg : path.segments) {
          for (mano::WanLink& link : wims.at(seg.wim).links) {
            if (link.id == seg.link) {
              link.used += edge.bandwidth;
            }
          }
          link_ids.push_back(seg.link);
          if (slice_wan_links.count(slice_id) == 0 ||
              std::find(slice_wan_links[slice_id].begin(),
                        slice_wan_links[slice_id].end(),
                        seg.link) == slice_wan_links[slice_id].end()) {
            slice_wan_links[slice_id].push_back(seg.link);
          }
        }
        ics.at(wims.at(ts.origin_wim).ic_id)
            .rules.push_back({"und-" + std::to_string(rule_counter++), from.vm,
                              to.vm, link_ids, edge.bandwidth});
        ++underlay_rules;
      }
    }
    trace.append(now, sim::EventKind::BlockMessage,
                 "ic:" + (ts.origin_wim.empty() ? "local" : ts.origin_wim),
                 slice_id,
                 "programmed " + std::to_string(underlay_rules) +
                     " underlay rules",
                 cause);
    if (inject_fail_at == 5) throw InjectedFailure{5};

    // Per-slice OSS, management scope and KPI policy.
    mano::Oss oss;
    oss.id = s.oss_id;
    oss.slice = slice_id;
    oss.whitelist = oss_whitelist;
    osses.emplace(oss.id, std::move(oss));

    for (const std::string& obj :
         {slice_id + "/config", slice_id + "/kpi", slice_id + "/placement"}) {
      enforcer.policy.scopes[tenant_id].insert(obj);
      enforcer.policy.scopes[s.oss_id].insert(obj);
    }
    enforcer.policy.scopes[user].insert(slice_id + "/kpi");
    enforcer.policy.security.push_back({s.oss_id, "*", "*"});
    enforcer.policy.security.push_back({user, "kpi", "read"});
    enforcer.policy.performance[slice_id] =
        iso::KpiBounds{bp.sla.throughput_floor, bp.sla.latency_ceiling};

    set_slice_state(slice_id, SliceState::Active, now, trace, cause);
  } catch (const InjectedFailure& f) {
    trace.append(now, sim::EventKind::BlockMessage, "lifecycle", slice_id,
                 "creation failed at step " + std::to_string(f.step) +
                     ", rolled back; slice Terminated",
                 cause);
    *this = std::move(snapshot);
    throw Error(Errc::PlacementInfeasible,
                "injected failure at step " + std::to_string(f.step));
  } catch (const Error& e) {
    trace.append(now, sim::EventKind::BlockMessage, "lifecycle", slice_id,
                 std::string("creation failed (") + errc_name(e.code()) +
                     "), rolled back; slice Terminated",
                 cause);
    *this = std::move(snapshot);
    throw;
  }
}

std::string World::ns_instantiate(const std::string& slice_id,
                                  const std::string& descriptor_id) {
  auto sit = slices.find(slice_id);
  if (sit == slices.end()) {
    throw Error(Errc::UnknownSlice, slice_id);
  }
  mano::Nso& nso = nsos.at(sit->second.nso_id);
  if (nso.descriptors.count(descriptor_id) == 0) {
    throw Error(Errc::UnknownDescriptor, descriptor_id);
  }
  TenantState& ts = tenant(sit->second.tenant);
  if (ts.ro.reservations.count(slice_id) == 0) {
    throw Error(Errc::NoGrant, slice_id + " holds no RO grant");
  }
  const mano::NetworkServiceDescriptor& nsd = descriptors.at(descriptor_id);
  mano::ServiceInstance inst;
  inst.id = "nsi-" + std::to_string(vnf_counter);
  inst.descriptor = descriptor_id;
  for (const mano::VnfSpec& spec : nsd.vnfs) {
    mano::VnfInstance vnf;
    vnf.id = "vnf-" + std::to_string(vnf_counter++);
    vnf.slice = slice_id;
    vnf.vm = "vm-" + std::to_string(vm_counter++);
    vnf.location = spec.pop;
    vnf.is_switch = spec.is_switch;
    vnf.capabilities = spec.capabilities;
    inst.vnf_ids.push_back(vnf.id);
    ts.vnfm.vnfs.emplace(vnf.id, std::move(vnf));
  }
  std::string id = inst.id;
  nso.instances.emplace(id, std::move(inst));
  return id;
}

void World::ns_terminate(const std::string& slice_id,
                         const std::string& instance_id) {
  auto sit = slices.find(slice_id);
  if (sit == slices.end()) {
    throw Error(Errc::UnknownSlice, slice_id);
  }
  mano::Nso& nso = nsos.at(sit->second.nso_id);
  auto iit = nso.instances.find(instance_id);
  if (iit == nso.instances.end()) {
    throw Error(Errc::UnknownDescriptor, instance_id);
  }
  TenantState& ts = tenant(sit->second.tenant);
  for (const std::string& vid : iit->second.vnf_ids) {
    mano::VnfInstance& vnf = ts.vnfm.vnfs.at(vid);
    if (vnf.state == VnfState::Running) {
      ts.vnfm.transition(vid, VnfState::Terminated);
    } else {
      vnf.state = VnfState::Terminated;
    }
    ts.vnfm.vnfs.erase(vid);
  }
  nso.instances.erase(iit);
  if (nso.instances.empty()) {
    ts.ro.release_slice(slice_id);
  }
}

void World::terminate_slice(const std::string& slice_id, const Rat& now,
                            sim::Trace& trace, std::int64_t cause) {
  auto sit = slices.find(slice_id);
  if (sit == slices.end()) {
    throw Error(Errc::UnknownSlice, slice_id);
  }
  mano::NetworkSlice& s = sit->second;
  TenantState& ts = tenant(s.tenant);
  for (const std::string& vid : s.vnf_ids) {
    auto vit = ts.vnfm.vnfs.find(vid);
    if (vit != ts.vnfm.vnfs.end()) {
      vit->second.state = VnfState::Terminated;
    }
  }
  ts.ro.release_slice(slice_id);
  set_slice_state(slice_id, SliceState::Terminated, now, trace, cause);
  offered.erase(slice_id);
}

void World::inject_fault(const std::string& slice_id, iso::FaultKind kind,
                         const Rat& now, sim::Trace& trace,
                         std::int64_t cause) {
  auto sit = slices.find(slice_id);
  if (sit == slices.end() ||
      sit->second.state == SliceState::Terminated) {
    throw Error(Errc::UnknownSlice, slice_id);
  }
  mano::NetworkSlice& s = sit->second;
  TenantState& ts = tenant(s.tenant);
  std::string detail;
  switch (kind) {
    case iso::FaultKind::VnfCrash: {
      std::vector<std::string> ids = s.vnf_ids;
      std::sort(ids.begin(), ids.end());
      if (!ids.empty()) {
        mano::VnfInstance& vnf = ts.vnfm.vnfs.at(ids.front());
        vnf.faulted = true;
        vnf.fault_events += 1;
        detail = "vnf-crash " + ids.front();
      }
      break;
    }
    case iso::FaultKind::TcCrash:
      tcs.at(s.tc_id).faulted = true;
      detail = "tc-crash " + s.tc_id;
      break;
    case iso::FaultKind::ConfigCorruption:
      osses.at(s.oss_id).config_corrupted = true;
      detail = "config-corruption " + s.oss_id;
      break;
  }
  if (s.state == SliceState::Active) {
    set_slice_state(slice_id, SliceState::Faulted, now, trace, cause);
  }
  // Fault notification goes to this slice's OSS only.
  trace.append(now, sim::EventKind::BlockMessage, s.oss_id, slice_id,
               "fault reported: " + detail, cause);
}

void World::apply_lease_change(const std::string& tenant_id, res::ResKind kind,
                               const std::string& location, const Rat& delta,
                               const Rat& now, sim::Trace& trace,
                               std::int64_t cause) {
  TenantState& ts = tenant(tenant_id);
  if (delta >= Rat(0)) {
    ts.ro.add_lease(kind, location, delta);
  } else {
    ts.ro.remove_lease(kind, location, -delta);
  }
  trace.append(now, sim::EventKind::BlockMessage, "ro:" + tenant_id, "",
               "lease " + std::string(res::to_string(kind)) + "@" + location +
                   " " + (delta >= Rat(0) ? "+" : "") + to_string(delta),
               cause);
}

World::ExposeResult World::oss_expose(const std::string& slice_id,
                                      const std::string& actor,
                                      const std::string& field,
                                      const Rat& now) {
  auto sit = slices.find(slice_id);
  if (sit == slices.end()) {
    throw Error(Errc::UnknownSlice, slice_id);
  }
  const std::string object =
      slice_id + (field == "placement" ? "/placement" : "/kpi");
  const bool authorized = enforcer.authorize(now, actor, object, "read");
  if (!authorized || oss_whitelist.count(field) == 0) {
    return {false, ""};
  }
  if (sit->second.state != SliceState::Active) {
    return {false, ""};
  }
  auto lit = last_tick.find(slice_id);
  if (field == "state") {
    return {true, mano::to_string(sit->second.state)};
  }
  if (lit == last_tick.end()) {
    return {true, "0"};
  }
  if (field == "throughput") {
    return {true, to_string(lit->second.achieved)};
  }
  if (field == "latency") {
    return {true, to_string(lit->second.latency)};
  }
  return {false, ""};
}

mano::UsageSnapshot World::usage_report_ro(const std::string& tenant_id) const {
  return tenant(tenant_id).ro.usage();
}

std::vector<std::string> World::sorted_slice_ids() const {
  std::vector<std::string> out;
  for (const auto& [id, s] : slices) {
    out.push_back(id);
  }
  return out;
}

std::string World::canonical_state() const {
  std::ostringstream os;
  os << "model\n";
  for (const std::string& id : model.ids()) {
    const res::Resource& r = model.get(id);
    os << id << " " << res::to_string(r.kind) << " cap=" << to_string(r.capacity)
       << " layer=" << r.layer << " owner=" << r.owner << " prov="
       << static_cast<int>(r.provenance) << " share=" << to_string(r.share)
       << "\n";
  }
  os << "vims\n";
  for (const auto& [id, vim] : vims) {
    for (const mano::Lease& l : vim.leases) {
      os << id << " " << l.id << " " << l.tenant << " "
         << res::to_string(l.kind) << "@" << l.location << " "
         << to_string(l.quantity) << "\n";
    }
  }
  os << "wims\n";
  for (const auto& [id, wim] : wims) {
    for (const mano::WanLink& link : wim.links) {
      os << id << " " << link.id << " used=" << to_string(link.used) << "\n";
    }
    for (const mano::Lease& l : wim.leases) {
      os << id << " " << l.id << " " << l.tenant << " "
         << to_string(l.quantity) << "\n";
    }
  }
  os << "tenants\n";
  for (const auto& [id, ts] : tenants) {
    for (const auto& [key, qty] : ts.ro.leased) {
      os << id << " lease " << res::to_string(key.first) << "@" << key.second
         << " " << to_string(qty) << "\n";
    }
    for (const auto& [slice, pools] : ts.ro.reservations) {
      for (const auto& [key, qty] : pools) {
        os << id << " resv " << slice << " " << res::to_string(key.first) << "@"
           << key.second << " " << to_string(qty) << "\n";
      }
    }
    for (const auto& [slice, floor] : ts.ro.floors) {
      os << id << " floor " << slice << " " << to_string(floor) << "\n";
    }
    for (const auto& [vid, vnf] : ts.vnfm.vnfs) {
      os << id << " vnf " << vid << " " << mano::to_string(vnf.state)
         << " scale=" << vnf.scale << " vm=" << vnf.vm
         << " faulted=" << vnf.faulted << "\n";
    }
  }
  os << "slices\n";
  for (const auto& [id, s] : slices) {
    os << id << " " << mano::to_string(s.state) << " tenant=" << s.tenant
       << " bp=" << s.blueprint << " resv=" << to_string(s.reservation) << "\n";
  }
  os << "nsos\n";
  for (const auto& [id, nso] : nsos) {
    for (const auto& [iid, inst] : nso.instances) {
      os << id << " " << iid << " " << inst.descriptor << " vnfs="
         << inst.vnf_ids.size() << "\n";
    }
  }
  os << "tcs\n";
  for (const auto& [id, tc] : tcs) {
    os << id << " rules=" << tc.rules.size() << " faulted=" << tc.faulted
       << "\n";
  }
  os << "ics\n";
  for (const auto& [id, ic] : ics) {
    os << ic.serialize();
  }
  os << "osses\n";
  for (const auto& [id, oss] : osses) {
    os << id << " corrupted=" << oss.config_corrupted << "\n";
  }
  os << "counters " << vm_counter << " " << vnf_counter << " " << rule_counter
     << " " << lease_counter << "\n";
  return os.str();
}

std::uint64_t World::state_digest() const { return sim::fnv1a(canonical_state()); }

}  // namespace nsim
