#include "nsim/error.hpp"

namespace nsim {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::UnknownResource: return "UnknownResource";
    case Errc::OverCommit: return "OverCommit";
    case Errc::KindMismatch: return "KindMismatch";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::ConservationViolation: return "ConservationViolation";
    case Errc::InvalidOperation: return "InvalidOperation";
    case Errc::NotAdministrator: return "NotAdministrator";
    case Errc::DuplicateContext: return "DuplicateContext";
    case Errc::MissingPolicy: return "MissingPolicy";
    case Errc::UnknownClient: return "UnknownClient";
    case Errc::UnknownContext: return "UnknownContext";
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::Insufficient: return "Insufficient";
    case Errc::UnknownTenant: return "UnknownTenant";
    case Errc::NoPeering: return "NoPeering";
    case Errc::NoCapacity: return "NoCapacity";
    case Errc::UnknownBlueprint: return "UnknownBlueprint";
    case Errc::InsufficientLease: return "InsufficientLease";
    case Errc::PlacementInfeasible: return "PlacementInfeasible";
    case Errc::UnknownDescriptor: return "UnknownDescriptor";
    case Errc::NoGrant: return "NoGrant";
    case Errc::IllegalTransition: return "IllegalTransition";
    case Errc::UnknownVnf: return "UnknownVnf";
    case Errc::VnfNotRunning: return "VnfNotRunning";
    case Errc::UnknownHost: return "UnknownHost";
    case Errc::UnknownSlice: return "UnknownSlice";
    case Errc::InvalidTime: return "InvalidTime";
    case Errc::InvalidProfile: return "InvalidProfile";
    case Errc::HorizonExceeded: return "HorizonExceeded";
  }
  return "UnknownError";
}

}  // namespace nsim
