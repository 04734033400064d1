#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace latmatch {

enum class ErrorKind {
  // order-core
  NotReflexive,
  NotAntisymmetric,
  NotTransitive,
  NotALattice,
  EnumerationBoundExceeded,
  UnknownElement,
  // constraints
  UnknownElementId,
  AlphaArgumentsComparable,
  // market
  InvalidMarket,
  UnknownPartnerId,
  NonConvergence,
  SearchBoundExceeded,
  NotPathIndependent,
  // realize
  DuplicateId,
  NotOneToOne,
  NonLatticeStructure,
  NotRepresentable,
  NotLowerClosed,
  // augment
  ArgumentsNotAntichain,
  OverlappingRotationAgents,
  ProjectionNotStable,
  IsomorphismFailure,
  // antimatroid
  NotAnAntimatroid,
  InvalidInput,
  // shell
  Io,
};

const char* to_string(ErrorKind kind);

/// Library-wide exception. `witness` carries the ids that exhibit the failure
/// (a pair, a triple, a set...) so callers can report them verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::vector<std::string> witness = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<std::string> witness_;
};

}  // namespace latmatch
