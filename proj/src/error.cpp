#include "latmatch/error.hpp"

namespace latmatch {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotReflexive: return "NotReflexive";
    case ErrorKind::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorKind::NotTransitive: return "NotTransitive";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::EnumerationBoundExceeded: return "EnumerationBoundExceeded";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::UnknownElementId: return "UnknownElementId";
    case ErrorKind::AlphaArgumentsComparable: return "AlphaArgumentsComparable";
    case ErrorKind::InvalidMarket: return "InvalidMarket";
    case ErrorKind::UnknownPartnerId: return "UnknownPartnerId";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::SearchBoundExceeded: return "SearchBoundExceeded";
    case ErrorKind::NotPathIndependent: return "NotPathIndependent";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::NotOneToOne: return "NotOneToOne";
    case ErrorKind::NonLatticeStructure: return "NonLatticeStructure";
    case ErrorKind::NotRepresentable: return "NotRepresentable";
    case ErrorKind::NotLowerClosed: return "NotLowerClosed";
    case ErrorKind::ArgumentsNotAntichain: return "ArgumentsNotAntichain";
    case ErrorKind::OverlappingRotationAgents: return "OverlappingRotationAgents";
    case ErrorKind::ProjectionNotStable: return "ProjectionNotStable";
    case ErrorKind::IsomorphismFailure: return "IsomorphismFailure";
    case ErrorKind::NotAnAntimatroid: return "NotAnAntimatroid";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace latmatch
