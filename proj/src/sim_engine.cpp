#include "nsim/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "nsim/error.hpp"

namespace nsim::sim {

using nsim::to_string;

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::SliceRequest: return "SliceRequest";
    case EventKind::LeaseChange: return "LeaseChange";
    case EventKind::DemandChange: return "DemandChange";
    case EventKind::FaultInjection: return "FaultInjection";
    case EventKind::MetricTick: return "MetricTick";
    case EventKind::BlockMessage: return "BlockMessage";
  }
  return "unknown";
}

int rank(EventKind kind) {
  switch (kind) {
    case EventKind::SliceRequest: return 0;
    case EventKind::LeaseChange: return 1;
    case EventKind::DemandChange: return 2;
    case EventKind::FaultInjection: return 3;
    case EventKind::MetricTick: return 4;
    case EventKind::BlockMessage: return 5;
  }
  return 6;
}

std::uint64_t Trace::append(const Rat& time, EventKind kind,
                            const std::string& actor, const std::string& scope,
                            const std::string& payload, std::int64_t cause) {
  Event ev;
  ev.time = time;
  ev.seq = events.empty() ? 1 : events.back().seq + 1;
  ev.kind = kind;
  ev.actor = actor;
  ev.scope = scope;
  ev.payload = payload;
  ev.cause = cause;
  events.push_back(std::move(ev));
  return events.back().seq;
}

std::string Trace::canonical() const {
  std::ostringstream os;
  for (const Event& ev : events) {
    os << "t=" << to_string(ev.time) << "|seq=" << ev.seq << "|kind="
       << sim::to_string(ev.kind) << "|actor=" << ev.actor << "|scope="
       << ev.scope << "|payload=" << ev.payload << "|cause=" << ev.cause
       << "\n";
  }
  return os.str();
}

std::uint64_t Trace::digest() const { return fnv1a(canonical()); }

std::uint64_t fnv1a_mix(std::uint64_t seed, const std::string& bytes) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t fnv1a(const std::string& bytes) {
  return fnv1a_mix(14695981039346656037ULL, bytes);
}

std::string hex64(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[value & 0xf];
    value >>= 4;
  }
  return out;
}

namespace {

// Portable exponential draw: inverse CDF over an explicit 53-bit uniform, so
// results do not depend on the standard library's distribution internals.
double exp_draw(std::mt19937_64& rng, double mean) {
  const double u =
      static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
  return -mean * std::log1p(-u);
}

Rat millirat(double value) {
  if (value < 0) {
    value = 0;
  }
  const auto scaled = static_cast<long long>(std::llround(value * 1000.0));
  return Rat(BigInt(scaled), BigInt(1000));
}

}  // namespace

std::vector<std::pair<Rat, Rat>> generate_workload(const WorkloadProfile& profile,
                                                   std::uint64_t seed,
                                                   const Rat& horizon) {
  std::vector<std::pair<Rat, Rat>> out;
  switch (profile.type) {
    case ProfileType::Constant:
      if (profile.load < Rat(0)) {
        throw Error(Errc::InvalidProfile, "constant load must be >= 0");
      }
      out.emplace_back(Rat(0), profile.load);
      break;
    case ProfileType::Step:
      if (profile.load < Rat(0) || profile.load2 < Rat(0) ||
          profile.step_at <= Rat(0)) {
        throw Error(Errc::InvalidProfile, "step parameters must be positive");
      }
      out.emplace_back(Rat(0), profile.load);
      out.emplace_back(profile.step_at, profile.load2);
      break;
    case ProfileType::Poisson: {
      if (profile.rate <= Rat(0) || profile.mean <= Rat(0)) {
        throw Error(Errc::InvalidProfile, "poisson rate and mean must be > 0");
      }
      std::mt19937_64 rng(seed);
      const double mean_gap = 1.0 / to_double(profile.rate);
      const double mean_load = to_double(profile.mean);
      const Rat offset = profile.load;
      out.emplace_back(Rat(0), offset + millirat(exp_draw(rng, mean_load)));
      double t = 0.0;
      while (true) {
        t += exp_draw(rng, mean_gap);
        Rat when = millirat(t);
        if (when > horizon) {
          break;
        }
        out.emplace_back(when, offset + millirat(exp_draw(rng, mean_load)));
      }
      break;
    }
  }
  return out;
}

Rat latency_proxy(const Rat& utilization) {
  if (utilization >= Rat(99, 100)) {
    return Rat(100);
  }
  return Rat(1) / (Rat(1) - utilization);
}

CongestionOutput evaluate_congestion(const Rat& offered, const Rat& share) {
  CongestionOutput out;
  out.achieved = std::min(offered, share);
  out.utilization = share > Rat(0) ? out.achieved / share : Rat(0);
  out.latency = latency_proxy(out.utilization);
  return out;
}

}  // namespace nsim::sim
