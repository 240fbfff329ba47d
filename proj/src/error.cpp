#include "hsync/error.hpp"

namespace hsync {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::EmptyVertexSet: return "EmptyVertexSet";
    case ErrorKind::EmptyLabel: return "EmptyLabel";
    case ErrorKind::DuplicateVertex: return "DuplicateVertex";
    case ErrorKind::DuplicateEdgeId: return "DuplicateEdgeId";
    case ErrorKind::UnknownVertexInEdge: return "UnknownVertexInEdge";
    case ErrorKind::LoopEdge: return "LoopEdge";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::IsolatedVertex: return "IsolatedVertex";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::UnknownEdge: return "UnknownEdge";
    case ErrorKind::UnknownPreset: return "UnknownPreset";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::ClusterTooSmall: return "ClusterTooSmall";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::NoCanonicalBijection: return "NoCanonicalBijection";
    case ErrorKind::NonTransitiveTwinRelation: return "NonTransitiveTwinRelation";
    case ErrorKind::InconsistentVertexWeight: return "InconsistentVertexWeight";
    case ErrorKind::DegenerateContraction: return "DegenerateContraction";
    case ErrorKind::LoopInContraction: return "LoopInContraction";
    case ErrorKind::SingletonUnit: return "SingletonUnit";
    case ErrorKind::NonConstantVertexWeight: return "NonConstantVertexWeight";
    case ErrorKind::NotSigmaPreserving: return "NotSigmaPreserving";
    case ErrorKind::NonConstantSigma: return "NonConstantSigma";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::HypothesesNotMet: return "HypothesesNotMet";
    case ErrorKind::EigensolverFailure: return "EigensolverFailure";
    case ErrorKind::StateOutOfInterval: return "StateOutOfInterval";
    case ErrorKind::NumericOverflow: return "NumericOverflow";
    case ErrorKind::TimeGridMismatch: return "TimeGridMismatch";
    case ErrorKind::NotSynchronized: return "NotSynchronized";
    case ErrorKind::SpectrumMismatch: return "SpectrumMismatch";
  }
  return "Unknown";
}

}  // namespace hsync
