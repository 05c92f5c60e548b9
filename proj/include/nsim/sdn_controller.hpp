#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nsim/alloc.hpp"
#include "nsim/resource_model.hpp"

namespace nsim::sdn {

// Client support: what the client is allowed to see and do. A demand verb must
// be listed in allowed_verbs for the action policy to accept it.
struct SupportPolicy {
  std::set<std::string> allowed_verbs{"demand"};
  bool deliver_own_scope_only = true;
};

struct ClientContext {
  std::string id;
  std::string client;
  res::ResourceGroup group;
  SupportPolicy support;
};

struct ServerContext {
  std::string id;
  res::ResourceGroup group;
  std::string southbound;  // simulated southbound interface handle
};

struct Demand {
  std::string client;
  std::map<res::ResKind, Rat> requested;
  std::set<std::string> capability_tags;
  std::set<std::string> resource_refs;  // explicit handles, must be visible
  Rat floor{0};
  Rat weight{1};
  std::string verb = "demand";
  std::uint64_t seq = 0;  // assigned on acceptance
};

enum class Verdict { Accepted, NotVisible, PolicyDenied, Insufficient };

const char* to_string(Verdict verdict);

struct Event {
  std::uint64_t seq = 0;
  std::string kind;
  std::string scope;   // client id the event belongs to; empty = controller-wide
  std::string detail;
};

struct Allocation {
  std::uint64_t demand_seq = 0;
  std::string client;
  std::string resource;
  Rat amount;
};

struct Plan {
  std::vector<Allocation> allocations;
  std::vector<std::uint64_t> rejected;
};

enum class OrchestrationPolicy { Dedicated, SharedMaxMin };

// Generic SDN controller: mediates between clients (client contexts with
// customized resource views) and underlying resources (server contexts).
// Controllers stack recursively via attach_as_client. One logical actor; no
// internal locking.
class Controller {
 public:
  Controller(std::string id, std::string owner, std::string admin,
             res::ResourceModel& model);

  const std::string& id() const { return id_; }
  const std::string& owner() const { return owner_; }

  std::string create_client_context(const std::string& caller,
                                    const std::string& client,
                                    res::ResourceGroup group,
                                    SupportPolicy support,
                                    const std::string& ctx_id = "");
  std::string create_server_context(const std::string& caller,
                                    res::ResourceGroup group,
                                    const std::string& southbound,
                                    const std::string& ctx_id = "");
  void install_policy(const std::string& caller, OrchestrationPolicy policy);

  Verdict validate_demand(const std::string& client, Demand demand);

  Plan orchestrate();

  void subscribe(const std::string& client, const std::string& kind_filter);
  void unsubscribe(const std::string& client);
  void emit(const std::string& kind, const std::string& scope,
            const std::string& detail);

  const std::vector<Event>& log() const { return log_; }
  std::vector<Event> inbox(const std::string& client) const;

  const ClientContext& client_context(const std::string& ctx_id) const;
  const ServerContext& server_context(const std::string& ctx_id) const;
  std::optional<std::string> context_for_client(const std::string& client) const;

  // Exposed capacity of a resource group, per kind, as seen through the model.
  Rat group_capacity(const res::ResourceGroup& group, res::ResKind kind) const;

  // Attaches `lower`'s client context as a server context on `upper`. The
  // lower context's client must be the upper controller's owner.
  static std::string attach_as_client(Controller& upper, Controller& lower,
                                      const std::string& lower_ctx_id);

 private:
  void require_admin(const std::string& caller) const;
  void append(const std::string& kind, const std::string& scope,
              const std::string& detail);
  bool reaches(const Controller* target) const;

  std::string id_;
  std::string owner_;
  std::string admin_;
  res::ResourceModel* model_;
  std::map<std::string, ClientContext> clients_;
  std::map<std::string, ServerContext> servers_;
  OrchestrationPolicy policy_ = OrchestrationPolicy::Dedicated;
  std::deque<Demand> pending_;
  std::vector<Event> log_;
  std::map<std::string, std::set<std::string>> subscriptions_;  // client -> kinds
  std::map<std::string, std::vector<Event>> inboxes_;
  std::map<std::string, Rat> allocated_;  // resource id -> granted so far
  std::vector<const Controller*> downstream_;
  std::uint64_t next_event_ = 1;
  std::uint64_t next_demand_ = 1;
  std::uint64_t next_ctx_ = 1;
};

}  // namespace nsim::sdn
