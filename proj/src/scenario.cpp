#include "nsim/scenario.hpp"

#include <algorithm>

#include "nsim/isolation.hpp"
#include <functional>
#include <map>

namespace nsim::scenario {

using nlohmann::json;

json rat_to_json(const Rat& value) {
  if (value.denominator() == 1 &&
      value.numerator() >= std::numeric_limits<long long>::min() &&
      value.numerator() <= std::numeric_limits<long long>::max()) {
    return value.numerator().convert_to<long long>();
  }
  return to_string(value);
}

namespace {

struct Reader {
  std::vector<std::string>* errors;

  void err(const std::string& where, const std::string& what) {
    errors->push_back(where + ": " + what);
  }

  Rat get_rat(const json& j, const std::string& where, const std::string& key,
              const Rat& fallback = Rat(0), bool required = true) {
    if (!j.contains(key)) {
      if (required) err(where, "missing field '" + key + "'");
      return fallback;
    }
    const json& v = j.at(key);
    if (v.is_number_integer()) {
      return Rat(BigInt(v.get<long long>()), BigInt(1));
    }
    if (v.is_string()) {
      auto parsed = parse_rational(v.get<std::string>());
      if (parsed) return *parsed;
    }
    err(where, "field '" + key + "' is not a rational (int or \"a/b\")");
    return fallback;
  }

  std::string get_str(const json& j, const std::string& where,
                      const std::string& key, const std::string& fallback = "",
                      bool required = true) {
    if (!j.contains(key)) {
      if (required) err(where, "missing field '" + key + "'");
      return fallback;
    }
    if (!j.at(key).is_string()) {
      err(where, "field '" + key + "' is not a string");
      return fallback;
    }
    return j.at(key).get<std::string>();
  }
};

sim::WorkloadProfile parse_workload(Reader& r, const json& j,
                                    const std::string& where) {
  sim::WorkloadProfile p;
  const std::string kind = r.get_str(j, where, "profile");
  if (kind == "constant") {
    p.type = sim::ProfileType::Constant;
    p.load = r.get_rat(j, where, "load");
  } else if (kind == "step") {
    p.type = sim::ProfileType::Step;
    p.load = r.get_rat(j, where, "load");
    p.load2 = r.get_rat(j, where, "load2");
    p.step_at = r.get_rat(j, where, "at");
  } else if (kind == "poisson") {
    p.type = sim::ProfileType::Poisson;
    p.rate = r.get_rat(j, where, "rate");
    p.mean = r.get_rat(j, where, "mean");
    p.load = r.get_rat(j, where, "offset", Rat(0), false);
  } else {
    r.err(where, "unknown workload profile '" + kind + "'");
  }
  return p;
}

}  // namespace

std::vector<std::string> validate(const Document& doc) {
  std::vector<std::string> errors;
  auto err = [&](const std::string& m) { errors.push_back(m); };

  if (doc.horizon <= Rat(0)) {
    err("horizon: must be > 0");
  }

  std::set<std::string> pops;
  std::set<std::string> wims;
  std::set<std::string> vims;
  std::set<std::string> inp_ids;
  for (const InpDef& inp : doc.inps) {
    if (!inp_ids.insert(inp.id).second) err("inp " + inp.id + ": duplicate id");
    for (const PopDef& pop : inp.pops) {
      if (!pops.insert(pop.id).second) err("pop " + pop.id + ": duplicate id");
      if (pop.compute < Rat(0) || pop.networking < Rat(0)) {
        err("pop " + pop.id + ": negative capacity");
      }
    }
    if (!inp.pops.empty()) vims.insert("vim-" + inp.id);
    if (inp.wan) {
      if (!wims.insert(inp.wan->id).second) {
        err("wan " + inp.wan->id + ": duplicate id");
      }
      for (const LinkDef& link : inp.wan->links) {
        if (link.capacity <= Rat(0)) {
          err("link " + link.id + ": capacity must be > 0");
        }
      }
    }
  }
  for (const auto& [a, b] : doc.peerings) {
    if (wims.count(a) == 0) err("peering: unknown wim " + a);
    if (wims.count(b) == 0) err("peering: unknown wim " + b);
  }

  std::set<std::string> descriptor_ids;
  for (const DescriptorDef& d : doc.descriptors) {
    if (!descriptor_ids.insert(d.id).second) {
      err("descriptor " + d.id + ": duplicate id");
    }
    if (d.vnfs.empty()) {
      err("descriptor " + d.id + ": needs at least one NF");
      continue;
    }
    for (const VnfDef& v : d.vnfs) {
      if (v.capabilities.empty()) {
        err("descriptor " + d.id + "/" + v.name +
            ": needs at least one capability tag");
      }
      if (v.compute < Rat(0)) {
        err("descriptor " + d.id + "/" + v.name + ": negative compute demand");
      }
      if (pops.count(v.pop) == 0) {
        err("descriptor " + d.id + "/" + v.name + ": unknown pop " + v.pop);
      }
    }
    const int n = static_cast<int>(d.vnfs.size());
    std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
    bool edges_ok = true;
    for (const mano::DescriptorEdge& e : d.edges) {
      if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n) {
        err("descriptor " + d.id + ": edge references NF index out of range");
        edges_ok = false;
        continue;
      }
      if (e.bandwidth < Rat(0)) {
        err("descriptor " + d.id + ": negative edge bandwidth");
      }
      adj[static_cast<std::size_t>(e.from)].insert(e.to);
      adj[static_cast<std::size_t>(e.to)].insert(e.from);
    }
    if (edges_ok && n > 1) {
      std::set<int> seen{0};
      std::vector<int> frontier{0};
      while (!frontier.empty()) {
        int cur = frontier.back();
        frontier.pop_back();
        for (int nb : adj[static_cast<std::size_t>(cur)]) {
          if (seen.insert(nb).second) frontier.push_back(nb);
        }
      }
      if (static_cast<int>(seen.size()) != n) {
        err("descriptor " + d.id + ": forwarding graph is not connected");
      }
    }
  }

  std::set<std::string> blueprint_ids;
  for (const BlueprintDef& b : doc.blueprints) {
    if (!blueprint_ids.insert(b.id).second) {
      err("blueprint " + b.id + ": duplicate id");
    }
    if (descriptor_ids.count(b.descriptor) == 0) {
      err("blueprint " + b.id + ": unknown descriptor " + b.descriptor);
    }
    if (b.throughput_floor <= Rat(0)) {
      err("blueprint " + b.id + ": SLA throughput floor must be > 0");
    }
    if (b.latency_ceiling && *b.latency_ceiling <= Rat(0)) {
      err("blueprint " + b.id + ": SLA latency ceiling must be > 0");
    }
  }

  std::set<std::string> tenant_ids;
  std::set<std::string> slice_ids;
  for (const TenantDef& t : doc.tenants) {
    if (!tenant_ids.insert(t.id).second) {
      err("tenant " + t.id + ": duplicate id");
    }
    Rat networking_lease(0);
    for (const LeaseDef& l : t.leases) {
      int sources = (l.vim.empty() ? 0 : 1) + (l.wim.empty() ? 0 : 1) +
                    (l.provider.empty() ? 0 : 1);
      if (sources != 1) {
        err("tenant " + t.id + ": lease must name exactly one of vim/wim/provider");
      }
      if (!l.vim.empty() && vims.count(l.vim) == 0) {
        err("tenant " + t.id + ": unknown vim " + l.vim);
      }
      if (!l.wim.empty() && wims.count(l.wim) == 0) {
        err("tenant " + t.id + ": unknown wim " + l.wim);
      }
      if (!l.provider.empty() && l.provider == t.id) {
        err("tenant " + t.id + ": cannot lease from itself");
      }
      if (l.quantity <= Rat(0)) {
        err("tenant " + t.id + ": lease quantity must be > 0");
      }
      if (l.kind == res::ResKind::Networking) {
        networking_lease += l.quantity;
      }
    }
    Rat floor_sum(0);
    for (const SliceDef& s : t.slices) {
      if (!slice_ids.insert(s.id).second) {
        err("slice " + s.id + ": duplicate id");
      }
      if (blueprint_ids.count(s.blueprint) == 0) {
        err("slice " + s.id + ": unknown blueprint " + s.blueprint);
      }
      if (s.user.empty()) {
        err("slice " + s.id + ": missing end user");
      }
      if (s.reservation <= Rat(0)) {
        err("slice " + s.id + ": reservation must be > 0");
      }
      if (s.floor < Rat(0)) {
        err("slice " + s.id + ": floor must be >= 0");
      }
      if (s.request_time < Rat(0) || s.request_time > doc.horizon) {
        err("slice " + s.id + ": request time outside horizon");
      }
      floor_sum += s.floor;
    }
    if (floor_sum > networking_lease) {
      err("tenant " + t.id + ": slice floors exceed networking lease");
    }
  }

  for (const ScheduledEvent& e : doc.events) {
    if (e.time < Rat(0) || e.time > doc.horizon) {
      err("event: time outside horizon");
    }
    if (e.kind == "fault") {
      if (slice_ids.count(e.slice) == 0) {
        err("event: fault targets unknown slice " + e.slice);
      }
      if (!iso::fault_from_string(e.fault)) {
        err("event: unknown fault kind " + e.fault);
      }
    } else if (e.kind == "lease-change") {
      if (tenant_ids.count(e.tenant) == 0) {
        err("event: lease change for unknown tenant " + e.tenant);
      }
    } else {
      err("event: unknown kind " + e.kind);
    }
  }
  return errors;
}

ParseResult parse_validate(const std::string& text) {
  ParseResult result;
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    result.errors.push_back("document: not valid JSON");
    return result;
  }
  Reader r{&result.errors};
  Document doc;
  doc.name = r.get_str(j, "document", "name");
  if (j.contains("seed") && j.at("seed").is_number_integer()) {
    doc.seed = j.at("seed").get<std::uint64_t>();
  } else {
    r.err("document", "missing integer field 'seed'");
  }
  doc.horizon = r.get_rat(j, "document", "horizon");

  for (const json& ji : j.value("inps", json::array())) {
    InpDef inp;
    inp.id = r.get_str(ji, "inp", "id");
    for (const json& jp : ji.value("pops", json::array())) {
      PopDef pop;
      pop.id = r.get_str(jp, "pop", "id");
      pop.compute = r.get_rat(jp, "pop " + pop.id, "compute");
      pop.networking = r.get_rat(jp, "pop " + pop.id, "networking");
      inp.pops.push_back(std::move(pop));
    }
    if (ji.contains("wan")) {
      WanDef wan;
      wan.id = r.get_str(ji.at("wan"), "wan", "id");
      for (const json& jl : ji.at("wan").value("links", json::array())) {
        LinkDef link;
        link.id = r.get_str(jl, "link", "id");
        link.a = r.get_str(jl, "link " + link.id, "a");
        link.b = r.get_str(jl, "link " + link.id, "b");
        link.capacity = r.get_rat(jl, "link " + link.id, "capacity");
        wan.links.push_back(std::move(link));
      }
      inp.wan = std::move(wan);
    }
    doc.inps.push_back(std::move(inp));
  }

  for (const json& jp : j.value("wim_peerings", json::array())) {
    if (jp.is_array() && jp.size() == 2 && jp[0].is_string() &&
        jp[1].is_string()) {
      doc.peerings.emplace_back(jp[0].get<std::string>(),
                                jp[1].get<std::string>());
    } else {
      r.err("wim_peerings", "each entry must be a [wim, wim] pair");
    }
  }

  for (const json& jd : j.value("descriptors", json::array())) {
    DescriptorDef d;
    d.id = r.get_str(jd, "descriptor", "id");
    for (const json& jv : jd.value("vnfs", json::array())) {
      VnfDef v;
      v.name = r.get_str(jv, "descriptor " + d.id + " vnf", "name");
      for (const json& jc : jv.value("capabilities", json::array())) {
        if (jc.is_string()) v.capabilities.insert(jc.get<std::string>());
      }
      v.compute = r.get_rat(jv, "vnf " + v.name, "compute");
      v.pop = r.get_str(jv, "vnf " + v.name, "pop");
      v.is_switch = jv.value("switch", false);
      d.vnfs.push_back(std::move(v));
    }
    for (const json& je : jd.value("edges", json::array())) {
      mano::DescriptorEdge e;
      e.from = je.value("from", -1);
      e.to = je.value("to", -1);
      e.bandwidth = r.get_rat(je, "descriptor " + d.id + " edge", "bandwidth");
      d.edges.push_back(std::move(e));
    }
    doc.descriptors.push_back(std::move(d));
  }

  for (const json& jb : j.value("blueprints", json::array())) {
    BlueprintDef b;
    b.id = r.get_str(jb, "blueprint", "id");
    b.descriptor = r.get_str(jb, "blueprint " + b.id, "descriptor");
    if (jb.contains("sla")) {
      const json& sla = jb.at("sla");
      b.throughput_floor =
          r.get_rat(sla, "blueprint " + b.id + " sla", "throughput_floor");
      if (sla.contains("latency_ceiling")) {
        b.latency_ceiling =
            r.get_rat(sla, "blueprint " + b.id + " sla", "latency_ceiling");
      }
    } else {
      r.err("blueprint " + b.id, "missing field 'sla'");
    }
    doc.blueprints.push_back(std::move(b));
  }

  for (const json& jt : j.value("tenants", json::array())) {
    TenantDef t;
    t.id = r.get_str(jt, "tenant", "id");
    const std::string policy = r.get_str(jt, "tenant " + t.id, "ro_policy");
    if (policy == "dedicated") {
      t.ro_policy = mano::RoPolicy::Dedicated;
    } else if (policy == "shared-with-floors") {
      t.ro_policy = mano::RoPolicy::SharedFloors;
    } else {
      r.err("tenant " + t.id, "unknown ro_policy '" + policy + "'");
    }
    for (const json& jl : jt.value("leases", json::array())) {
      LeaseDef l;
      l.vim = jl.value("vim", "");
      l.wim = jl.value("wim", "");
      l.provider = jl.value("provider", "");
      const std::string kind = r.get_str(jl, "tenant " + t.id + " lease", "kind");
      auto parsed = res::kind_from_string(kind);
      if (parsed) {
        l.kind = *parsed;
      } else {
        r.err("tenant " + t.id + " lease", "unknown kind '" + kind + "'");
      }
      l.location = jl.value("location", l.wim.empty() ? "" : "wan");
      l.quantity = r.get_rat(jl, "tenant " + t.id + " lease", "quantity");
      t.leases.push_back(std::move(l));
    }
    for (const json& js : jt.value("slices", json::array())) {
      SliceDef s;
      s.id = r.get_str(js, "slice", "id");
      s.blueprint = r.get_str(js, "slice " + s.id, "blueprint");
      s.user = r.get_str(js, "slice " + s.id, "user");
      s.request_time = r.get_rat(js, "slice " + s.id, "request_time", Rat(0), false);
      s.reservation = r.get_rat(js, "slice " + s.id, "reservation");
      s.floor = r.get_rat(js, "slice " + s.id, "floor", Rat(0), false);
      if (js.contains("workload")) {
        s.workload = parse_workload(r, js.at("workload"), "slice " + s.id);
      } else {
        r.err("slice " + s.id, "missing field 'workload'");
      }
      t.slices.push_back(std::move(s));
    }
    doc.tenants.push_back(std::move(t));
  }

  for (const json& je : j.value("events", json::array())) {
    ScheduledEvent e;
    e.time = r.get_rat(je, "event", "time");
    e.kind = r.get_str(je, "event", "kind");
    if (e.kind == "fault") {
      e.slice = r.get_str(je, "event", "slice");
      e.fault = r.get_str(je, "event", "fault");
    } else if (e.kind == "lease-change") {
      e.tenant = r.get_str(je, "event", "tenant");
      auto parsed = res::kind_from_string(r.get_str(je, "event", "res_kind"));
      if (parsed) e.res_kind = *parsed;
      e.location = r.get_str(je, "event", "location");
      e.delta = r.get_rat(je, "event", "delta");
    }
    doc.events.push_back(std::move(e));
  }

  if (j.contains("oss_whitelist")) {
    doc.oss_whitelist.clear();
    for (const json& jw : j.at("oss_whitelist")) {
      if (jw.is_string()) doc.oss_whitelist.insert(jw.get<std::string>());
    }
  }

  auto semantic = validate(doc);
  result.errors.insert(result.errors.end(), semantic.begin(), semantic.end());
  if (result.errors.empty()) {
    result.doc = std::move(doc);
  }
  return result;
}

json to_json(const Document& doc) {
  json j;
  j["name"] = doc.name;
  j["seed"] = doc.seed;
  j["horizon"] = rat_to_json(doc.horizon);
  j["inps"] = json::array();
  for (const InpDef& inp : doc.inps) {
    json ji;
    ji["id"] = inp.id;
    ji["pops"] = json::array();
    for (const PopDef& pop : inp.pops) {
      ji["pops"].push_back({{"id", pop.id},
                            {"compute", rat_to_json(pop.compute)},
                            {"networking", rat_to_json(pop.networking)}});
    }
    if (inp.wan) {
      json jw;
      jw["id"] = inp.wan->id;
      jw["links"] = json::array();
      for (const LinkDef& link : inp.wan->links) {
        jw["links"].push_back({{"id", link.id},
                               {"a", link.a},
                               {"b", link.b},
                               {"capacity", rat_to_json(link.capacity)}});
      }
      ji["wan"] = std::move(jw);
    }
    j["inps"].push_back(std::move(ji));
  }
  j["wim_peerings"] = json::array();
  for (const auto& [a, b] : doc.peerings) {
    j["wim_peerings"].push_back(json::array({a, b}));
  }
  j["descriptors"] = json::array();
  for (const DescriptorDef& d : doc.descriptors) {
    json jd;
    jd["id"] = d.id;
    jd["vnfs"] = json::array();
    for (const VnfDef& v : d.vnfs) {
      json jv;
      jv["name"] = v.name;
      jv["capabilities"] = json::array();
      for (const std::string& c : v.capabilities) jv["capabilities"].push_back(c);
      jv["compute"] = rat_to_json(v.compute);
      jv["pop"] = v.pop;
      jv["switch"] = v.is_switch;
      jd["vnfs"].push_back(std::move(jv));
    }
    jd["edges"] = json::array();
    for (const mano::DescriptorEdge& e : d.edges) {
      jd["edges"].push_back({{"from", e.from},
                             {"to", e.to},
                             {"bandwidth", rat_to_json(e.bandwidth)}});
    }
    j["descriptors"].push_back(std::move(jd));
  }
  j["blueprints"] = json::array();
  for (const BlueprintDef& b : doc.blueprints) {
    json jb;
    jb["id"] = b.id;
    jb["descriptor"] = b.descriptor;
    jb["sla"] = {{"throughput_floor", rat_to_json(b.throughput_floor)}};
    if (b.latency_ceiling) {
      jb["sla"]["latency_ceiling"] = rat_to_json(*b.latency_ceiling);
    }
    j["blueprints"].push_back(std::move(jb));
  }
  j["tenants"] = json::array();
  for (const TenantDef& t : doc.tenants) {
    json jt;
    jt["id"] = t.id;
    jt["ro_policy"] = t.ro_policy == mano::RoPolicy::Dedicated
                          ? "dedicated"
                          : "shared-with-floors";
    jt["leases"] = json::array();
    for (const LeaseDef& l : t.leases) {
      json jl;
      if (!l.vim.empty()) jl["vim"] = l.vim;
      if (!l.wim.empty()) jl["wim"] = l.wim;
      if (!l.provider.empty()) jl["provider"] = l.provider;
      jl["kind"] = res::to_string(l.kind);
      jl["location"] = l.location;
      jl["quantity"] = rat_to_json(l.quantity);
      jt["leases"].push_back(std::move(jl));
    }
    jt["slices"] = json::array();
    for (const SliceDef& s : t.slices) {
      json js;
      js["id"] = s.id;
      js["blueprint"] = s.blueprint;
      js["user"] = s.user;
      js["request_time"] = rat_to_json(s.request_time);
      js["reservation"] = rat_to_json(s.reservation);
      js["floor"] = rat_to_json(s.floor);
      json jw;
      switch (s.workload.type) {
        case sim::ProfileType::Constant:
          jw = {{"profile", "constant"}, {"load", rat_to_json(s.workload.load)}};
          break;
        case sim::ProfileType::Step:
          jw = {{"profile", "step"},
                {"load", rat_to_json(s.workload.load)},
                {"load2", rat_to_json(s.workload.load2)},
                {"at", rat_to_json(s.workload.step_at)}};
          break;
        case sim::ProfileType::Poisson:
          jw = {{"profile", "poisson"},
                {"rate", rat_to_json(s.workload.rate)},
                {"mean", rat_to_json(s.workload.mean)},
                {"offset", rat_to_json(s.workload.load)}};
          break;
      }
      js["workload"] = std::move(jw);
      jt["slices"].push_back(std::move(js));
    }
    j["tenants"].push_back(std::move(jt));
  }
  j["events"] = json::array();
  for (const ScheduledEvent& e : doc.events) {
    json je;
    je["time"] = rat_to_json(e.time);
    je["kind"] = e.kind;
    if (e.kind == "fault") {
      je["slice"] = e.slice;
      je["fault"] = e.fault;
    } else if (e.kind == "lease-change") {
      je["tenant"] = e.tenant;
      je["res_kind"] = res::to_string(e.res_kind);
      je["location"] = e.location;
      je["delta"] = rat_to_json(e.delta);
    }
    j["events"].push_back(std::move(je));
  }
  j["oss_whitelist"] = json::array();
  for (const std::string& field : doc.oss_whitelist) {
    j["oss_whitelist"].push_back(field);
  }
  return j;
}

std::uint64_t scenario_digest(const Document& doc) {
  return sim::fnv1a(to_json(doc).dump());
}

const DescriptorDef* find_descriptor(const Document& doc, const std::string& id) {
  for (const DescriptorDef& d : doc.descriptors) {
    if (d.id == id) return &d;
  }
  return nullptr;
}

const BlueprintDef* find_blueprint(const Document& doc, const std::string& id) {
  for (const BlueprintDef& b : doc.blueprints) {
    if (b.id == id) return &b;
  }
  return nullptr;
}

}  // namespace nsim::scenario
