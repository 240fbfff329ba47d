#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hsync {

/// Every failure raised by the library carries one of these kinds. The CLI
/// maps them onto exit codes, tests match on them.
enum class ErrorKind {
  // input / structure
  ParseError,
  IoError,
  EmptyVertexSet,
  EmptyLabel,
  DuplicateVertex,
  DuplicateEdgeId,
  UnknownVertexInEdge,
  LoopEdge,
  DuplicateEdge,
  NonPositiveWeight,
  IsolatedVertex,
  Disconnected,
  UnknownVertex,
  UnknownEdge,
  UnknownPreset,
  DomainMismatch,
  ClusterTooSmall,
  InvalidParameter,
  // cluster structure
  NoCanonicalBijection,
  NonTransitiveTwinRelation,
  InconsistentVertexWeight,
  DegenerateContraction,
  LoopInContraction,
  // theorem hypotheses
  SingletonUnit,
  NonConstantVertexWeight,
  NotSigmaPreserving,
  NonConstantSigma,
  HypothesisViolated,
  HypothesesNotMet,
  // numerics
  EigensolverFailure,
  StateOutOfInterval,
  NumericOverflow,
  TimeGridMismatch,
  NotSynchronized,
  SpectrumMismatch,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hsync
