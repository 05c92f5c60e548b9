#include "nsim/sdn_controller.hpp"

#include <algorithm>

#include "nsim/error.hpp"

namespace nsim::sdn {

using nsim::to_string;

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Accepted: return "Accepted";
    case Verdict::NotVisible: return "NotVisible";
    case Verdict::PolicyDenied: return "PolicyDenied";
    case Verdict::Insufficient: return "Insufficient";
  }
  return "unknown";
}

Controller::Controller(std::string id, std::string owner, std::string admin,
                       res::ResourceModel& model)
    : id_(std::move(id)),
      owner_(std::move(owner)),
      admin_(std::move(admin)),
      model_(&model) {}

void Controller::require_admin(const std::string& caller) const {
  if (caller != admin_) {
    throw Error(Errc::NotAdministrator, caller + " on controller " + id_);
  }
}

void Controller::append(const std::string& kind, const std::string& scope,
                        const std::string& detail) {
  Event ev{next_event_++, kind, scope, detail};
  log_.push_back(ev);
  // Deliver to subscribed clients, subject to visibility policy.
  for (const auto& [client, kinds] : subscriptions_) {
    if (kinds.count(kind) == 0 && kinds.count("*") == 0) {
      continue;
    }
    auto ctx = context_for_client(client);
    if (!ctx) {
      continue;
    }
    const ClientContext& cc = clients_.at(*ctx);
    if (cc.support.deliver_own_scope_only && ev.scope != client) {
      continue;
    }
    inboxes_[client].push_back(ev);
  }
}

std::string Controller::create_client_context(const std::string& caller,
                                              const std::string& client,
                                              res::ResourceGroup group,
                                              SupportPolicy support,
                                              const std::string& ctx_id) {
  require_admin(caller);
  if (support.allowed_verbs.empty()) {
    throw Error(Errc::MissingPolicy, "client context requires an action policy");
  }
  std::string id = ctx_id.empty() ? id_ + "-cc-" + std::to_string(next_ctx_++)
                                  : ctx_id;
  if (clients_.count(id) > 0 || servers_.count(id) > 0) {
    throw Error(Errc::DuplicateContext, id);
  }
  clients_.emplace(id, ClientContext{id, client, std::move(group),
                                     std::move(support)});
  append("context-created", client, "client context " + id);
  return id;
}

std::string Controller::create_server_context(const std::string& caller,
                                              res::ResourceGroup group,
                                              const std::string& southbound,
                                              const std::string& ctx_id) {
  require_admin(caller);
  if (group.members.empty()) {
    throw Error(Errc::MissingPolicy, "server context requires a resource group");
  }
  std::string id = ctx_id.empty() ? id_ + "-sc-" + std::to_string(next_ctx_++)
                                  : ctx_id;
  if (clients_.count(id) > 0 || servers_.count(id) > 0) {
    throw Error(Errc::DuplicateContext, id);
  }
  servers_.emplace(id, ServerContext{id, std::move(group), southbound});
  append("context-created", "", "server context " + id);
  return id;
}

void Controller::install_policy(const std::string& caller,
                                OrchestrationPolicy policy) {
  require_admin(caller);
  policy_ = policy;
  append("policy-installed", "", policy == OrchestrationPolicy::Dedicated
                                     ? "dedicated"
                                     : "shared-max-min");
}

const ClientContext& Controller::client_context(const std::string& ctx_id) const {
  auto it = clients_.find(ctx_id);
  if (it == clients_.end()) {
    throw Error(Errc::UnknownContext, ctx_id);
  }
  return it->second;
}

const ServerContext& Controller::server_context(const std::string& ctx_id) const {
  auto it = servers_.find(ctx_id);
  if (it == servers_.end()) {
    throw Error(Errc::UnknownContext, ctx_id);
  }
  return it->second;
}

std::optional<std::string> Controller::context_for_client(
    const std::string& client) const {
  for (const auto& [id, ctx] : clients_) {
    if (ctx.client == client) {
      return id;
    }
  }
  return std::nullopt;
}

Rat Controller::group_capacity(const res::ResourceGroup& group,
                               res::ResKind kind) const {
  Rat total(0);
  for (const auto& rid : group.members) {
    const res::Resource& r = model_->get(rid);
    if (r.kind == kind) {
      total += r.capacity;
    }
  }
  return total;
}

Verdict Controller::validate_demand(const std::string& client, Demand demand) {
  auto ctx_id = context_for_client(client);
  if (!ctx_id) {
    throw Error(Errc::UnknownClient, client);
  }
  const ClientContext& ctx = clients_.at(*ctx_id);
  for (const auto& ref : demand.resource_refs) {
    if (std::find(ctx.group.members.begin(), ctx.group.members.end(), ref) ==
        ctx.group.members.end()) {
      append("demand-rejected", client, "not visible: " + ref);
      return Verdict::NotVisible;
    }
  }
  if (ctx.support.allowed_verbs.count(demand.verb) == 0) {
    append("demand-rejected", client, "policy denies verb " + demand.verb);
    return Verdict::PolicyDenied;
  }
  for (const auto& [kind, qty] : demand.requested) {
    if (qty > group_capacity(ctx.group, kind)) {
      append("demand-rejected", client,
             std::string("insufficient ") + res::to_string(kind));
      return Verdict::Insufficient;
    }
  }
  demand.client = client;
  demand.seq = next_demand_++;
  pending_.push_back(std::move(demand));
  append("demand-accepted", client, "queued");
  return Verdict::Accepted;
}

Plan Controller::orchestrate() {
  Plan plan;
  // Substrate resources by kind, in deterministic (id) order.
  std::map<res::ResKind, std::vector<std::string>> substrate;
  for (const auto& [sid, sc] : servers_) {
    for (const auto& rid : sc.group.members) {
      substrate[model_->get(rid).kind].push_back(rid);
    }
  }
  for (auto& [kind, rids] : substrate) {
    std::sort(rids.begin(), rids.end());
    rids.erase(std::unique(rids.begin(), rids.end()), rids.end());
  }
  auto free_on = [&](const std::string& rid) {
    Rat used(0);
    auto it = allocated_.find(rid);
    if (it != allocated_.end()) {
      used = it->second;
    }
    return model_->get(rid).capacity - used;
  };

  if (policy_ == OrchestrationPolicy::Dedicated) {
    for (const Demand& d : pending_) {
      // All-or-reject: the whole vector must fit.
      std::vector<Allocation> staged;
      std::map<std::string, Rat> staged_use;
      bool feasible = true;
      for (const auto& [kind, qty] : d.requested) {
        Rat need = qty;
        for (const auto& rid : substrate[kind]) {
          if (need == Rat(0)) break;
          Rat avail = free_on(rid) - staged_use[rid];
          if (avail <= Rat(0)) continue;
          Rat take = std::min(avail, need);
          staged.push_back({d.seq, d.client, rid, take});
          staged_use[rid] += take;
          need -= take;
        }
        if (need > Rat(0)) {
          feasible = false;
          break;
        }
      }
      if (feasible) {
        for (auto& a : staged) {
          allocated_[a.resource] += a.amount;
          plan.allocations.push_back(a);
          append("resource-configured", a.client,
                 a.resource + " += " + to_string(a.amount));
        }
      } else {
        plan.rejected.push_back(d.seq);
        append("demand-unplaceable", d.client,
               "demand " + std::to_string(d.seq));
      }
    }
  } else {
    // Shared weighted max-min per resource kind, over the pooled capacity.
    std::map<res::ResKind, std::vector<alloc::Request>> by_kind;
    for (const Demand& d : pending_) {
      for (const auto& [kind, qty] : d.requested) {
        by_kind[kind].push_back(
            {std::to_string(d.seq), qty, d.floor, d.weight});
      }
    }
    for (const auto& [kind, requests] : by_kind) {
      Rat pool(0);
      for (const auto& rid : substrate[kind]) {
        pool += free_on(rid);
      }
      auto shares = alloc::water_fill(requests, pool);
      for (const Demand& d : pending_) {
        auto it = shares.find(std::to_string(d.seq));
        if (it == shares.end() || it->second == Rat(0)) continue;
        Rat need = it->second;
        for (const auto& rid : substrate[kind]) {
          if (need == Rat(0)) break;
          Rat avail = free_on(rid);
          if (avail <= Rat(0)) continue;
          Rat take = std::min(avail, need);
          allocated_[rid] += take;
          plan.allocations.push_back({d.seq, d.client, rid, take});
          append("resource-configured", d.client,
                 rid + " += " + to_string(take));
          need -= take;
        }
      }
    }
  }
  pending_.clear();
  append("plan-applied", "",
         std::to_string(plan.allocations.size()) + " allocations");
  return plan;
}

void Controller::subscribe(const std::string& client,
                           const std::string& kind_filter) {
  if (!context_for_client(client)) {
    throw Error(Errc::UnknownClient, client);
  }
  subscriptions_[client].insert(kind_filter);
}

void Controller::unsubscribe(const std::string& client) {
  subscriptions_.erase(client);
}

void Controller::emit(const std::string& kind, const std::string& scope,
                      const std::string& detail) {
  append(kind, scope, detail);
}

std::vector<Event> Controller::inbox(const std::string& client) const {
  auto it = inboxes_.find(client);
  if (it == inboxes_.end()) {
    return {};
  }
  return it->second;
}

bool Controller::reaches(const Controller* target) const {
  if (this == target) {
    return true;
  }
  for (const Controller* lower : downstream_) {
    if (lower->reaches(target)) {
      return true;
    }
  }
  return false;
}

std::string Controller::attach_as_client(Controller& upper, Controller& lower,
                                         const std::string& lower_ctx_id) {
  if (&upper == &lower || lower.reaches(&upper)) {
    throw Error(Errc::CycleDetected,
                upper.id_ + " <-> " + lower.id_);
  }
  const ClientContext& ctx = lower.client_context(lower_ctx_id);
  if (ctx.client != upper.owner_) {
    throw Error(Errc::UnknownContext,
                lower_ctx_id + " is not a context for " + upper.owner_);
  }
  std::string sc_id = upper.create_server_context(
      upper.admin_, ctx.group, "recursive:" + lower.id_ + "/" + lower_ctx_id);
  upper.downstream_.push_back(&lower);
  return sc_id;
}

}  // namespace nsim::sdn
