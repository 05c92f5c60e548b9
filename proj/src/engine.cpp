#include "nsim/engine.hpp"

#include <algorithm>
#include <tuple>

#include "nsim/error.hpp"

namespace nsim::engine {

namespace {

struct Pending {
  Rat time;
  int rank = 0;
  std::string tiebreak;
  sim::EventKind kind = sim::EventKind::MetricTick;
  std::string slice;
  std::string payload;
  // payload details
  Rat load;
  scenario::ScheduledEvent scheduled;
  const scenario::SliceDef* slice_def = nullptr;
  std::string tenant;
};

bool pending_before(const Pending& a, const Pending& b) {
  return std::tie(a.time, a.rank, a.tiebreak) <
         std::tie(b.time, b.rank, b.tiebreak);
}

}  // namespace

RunResult run(const scenario::Document& doc, std::uint64_t seed) {
  RunResult rr;
  rr.seed = seed;
  rr.scenario_digest = scenario::scenario_digest(doc);
  rr.world = World::from_scenario(doc);
  World& world = rr.world;
  sim::Trace& trace = rr.trace;
  sim::MetricsSeries& metrics = rr.metrics;

  std::vector<Pending> schedule;
  for (const scenario::TenantDef& t : doc.tenants) {
    for (const scenario::SliceDef& s : t.slices) {
      Pending req;
      req.time = s.request_time;
      req.rank = sim::rank(sim::EventKind::SliceRequest);
      req.tiebreak = s.id;
      req.kind = sim::EventKind::SliceRequest;
      req.slice = s.id;
      req.tenant = t.id;
      req.slice_def = &s;
      req.payload = "request " + s.id + " blueprint=" + s.blueprint +
                    " user=" + s.user;
      schedule.push_back(std::move(req));

      const std::uint64_t slice_seed = sim::fnv1a_mix(seed, s.id);
      for (const auto& [when, load] :
           sim::generate_workload(s.workload, slice_seed, doc.horizon)) {
        Pending dc;
        dc.time = when;
        dc.rank = sim::rank(sim::EventKind::DemandChange);
        dc.tiebreak = s.id;
        dc.kind = sim::EventKind::DemandChange;
        dc.slice = s.id;
        dc.load = load;
        dc.payload = s.id + " offered=" + to_string(load);
        schedule.push_back(std::move(dc));
      }
    }
  }
  for (const scenario::ScheduledEvent& e : doc.events) {
    Pending p;
    p.time = e.time;
    p.scheduled = e;
    if (e.kind == "fault") {
      p.rank = sim::rank(sim::EventKind::FaultInjection);
      p.kind = sim::EventKind::FaultInjection;
      p.slice = e.slice;
      p.tiebreak = e.slice;
      p.payload = e.fault + " on " + e.slice;
    } else {
      p.rank = sim::rank(sim::EventKind::LeaseChange);
      p.kind = sim::EventKind::LeaseChange;
      p.tiebreak = e.tenant;
      p.payload = e.tenant + " " + res::to_string(e.res_kind) + "@" +
                  e.location + " delta=" + to_string(e.delta);
    }
    schedule.push_back(std::move(p));
  }
  for (Rat t(0); t <= doc.horizon; t += Rat(1)) {
    Pending tick;
    tick.time = t;
    tick.rank = sim::rank(sim::EventKind::MetricTick);
    tick.kind = sim::EventKind::MetricTick;
    tick.payload = "tick";
    schedule.push_back(std::move(tick));
  }
  if (schedule.size() > kEventCap) {
    throw Error(Errc::HorizonExceeded,
                std::to_string(schedule.size()) + " scheduled events");
  }
  std::stable_sort(schedule.begin(), schedule.end(), pending_before);

  for (const Pending& p : schedule) {
    if (trace.events.size() > kEventCap) {
      throw Error(Errc::HorizonExceeded, "trace event cap exceeded");
    }
    const std::uint64_t seq =
        trace.append(p.time, p.kind, "engine", p.slice, p.payload);
    const auto cause = static_cast<std::int64_t>(seq);
    switch (p.kind) {
      case sim::EventKind::SliceRequest: {
        const scenario::SliceDef& s = *p.slice_def;
        try {
          world.create_slice(p.tenant, s.id, s.blueprint, s.user,
                             s.reservation, s.floor, p.time, trace, cause);
          metrics.admissions.emplace_back(p.time, s.id + " accepted");
        } catch (const Error& e) {
          metrics.admissions.emplace_back(
              p.time, s.id + " rejected " + errc_name(e.code()));
        }
        break;
      }
      case sim::EventKind::DemandChange:
        world.offered[p.slice] = p.load;
        break;
      case sim::EventKind::FaultInjection: {
        auto kind = iso::fault_from_string(p.scheduled.fault);
        try {
          world.inject_fault(p.slice, *kind, p.time, trace, cause);
        } catch (const Error& e) {
          trace.append(p.time, sim::EventKind::BlockMessage, "engine", "",
                       std::string("fault dropped: ") + errc_name(e.code()),
                       cause);
        }
        break;
      }
      case sim::EventKind::LeaseChange:
        try {
          world.apply_lease_change(p.scheduled.tenant, p.scheduled.res_kind,
                                   p.scheduled.location, p.scheduled.delta,
                                   p.time, trace, cause);
        } catch (const Error& e) {
          trace.append(p.time, sim::EventKind::BlockMessage, "engine", "",
                       std::string("lease change dropped: ") +
                           errc_name(e.code()),
                       cause);
        }
        break;
      case sim::EventKind::MetricTick: {
        metrics.tick_times.push_back(p.time);
        std::map<std::string, Rat> link_load;
        for (auto& [tid, ts] : world.tenants) {
          // Offered loads of this tenant's live slices; faulted slices carry
          // no traffic.
          std::map<std::string, Rat> offered;
          std::vector<std::string> tenant_slices;
          for (auto& [sid, s] : world.slices) {
            if (s.tenant != tid) continue;
            tenant_slices.push_back(sid);
            Rat load(0);
            if (s.state == mano::SliceState::Active &&
                world.offered.count(sid) > 0) {
              load = world.offered.at(sid);
            }
            offered[sid] = load;
          }
          if (tenant_slices.empty()) continue;
          auto shares = ts.ro.allocate(offered);
          Rat pool_achieved(0);
          std::map<std::string, sim::CongestionOutput> outs;
          for (const std::string& sid : tenant_slices) {
            Rat share = shares.count(sid) > 0 ? shares.at(sid) : Rat(0);
            auto out = sim::evaluate_congestion(offered.at(sid), share);
            outs[sid] = out;
            pool_achieved += out.achieved;
            for (const std::string& link : world.slice_wan_links[sid]) {
              link_load[link] += out.achieved;
            }
          }
          const Rat pool = ts.ro.networking_lease_total();
          const Rat pool_u = pool > Rat(0) ? pool_achieved / pool : Rat(0);
          metrics.utilization["pool:" + tid].push_back(pool_u);
          for (const std::string& sid : tenant_slices) {
            const auto& out = outs.at(sid);
            sim::SliceTick point;
            point.offered = offered.at(sid);
            point.share = shares.count(sid) > 0 ? shares.at(sid) : Rat(0);
            point.achieved = out.achieved;
            // Dedicated shares are hard partitions: the slice's bottleneck is
            // its own share. Under sharing the bottleneck is the tenant pool.
            point.latency = ts.ro.policy == mano::RoPolicy::Dedicated
                                ? out.latency
                                : sim::latency_proxy(pool_u);
            point.state = mano::to_string(world.slices.at(sid).state);
            world.last_tick[sid] = point;
            metrics.slices[sid].push_back(std::move(point));
          }
        }
        for (const auto& [wid, wim] : world.wims) {
          for (const mano::WanLink& link : wim.links) {
            Rat load = link_load.count(link.id) > 0 ? link_load.at(link.id)
                                                    : Rat(0);
            metrics.utilization[link.id].push_back(
                link.capacity > Rat(0) ? load / link.capacity : Rat(0));
          }
        }
        // Summarize allocations into the trace so the digest covers them.
        std::string summary;
        for (const auto& [sid, series] : metrics.slices) {
          if (series.size() == metrics.tick_times.size()) {
            const sim::SliceTick& point = series.back();
            summary += sid + "=" + to_string(point.achieved) + "/" +
                       to_string(point.share) + ";";
          }
        }
        trace.append(p.time, sim::EventKind::BlockMessage, "metrics", "",
                     "tick " + to_string(p.time) + " " + summary, cause);
        break;
      }
      case sim::EventKind::BlockMessage:
        break;
    }
  }
  return rr;
}

}  // namespace nsim::engine
