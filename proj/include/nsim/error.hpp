#pragma once

#include <stdexcept>
#include <string>

namespace nsim {

enum class Errc {
  UnknownResource,
  OverCommit,
  KindMismatch,
  EmptyInput,
  ConservationViolation,
  InvalidOperation,
  NotAdministrator,
  DuplicateContext,
  MissingPolicy,
  UnknownClient,
  UnknownContext,
  CycleDetected,
  Insufficient,
  UnknownTenant,
  NoPeering,
  NoCapacity,
  UnknownBlueprint,
  InsufficientLease,
  PlacementInfeasible,
  UnknownDescriptor,
  NoGrant,
  IllegalTransition,
  UnknownVnf,
  VnfNotRunning,
  UnknownHost,
  UnknownSlice,
  InvalidTime,
  InvalidProfile,
  HorizonExceeded,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace nsim
