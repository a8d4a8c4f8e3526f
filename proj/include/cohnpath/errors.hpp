#pragma once

#include <stdexcept>
#include <string>

namespace cohnpath {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A vertex or edge id that does not exist in the graph at hand.
struct UnknownId : Error {
  using Error::Error;
};

/// Graph-level invariant violations (duplicate ids, dangling endpoints, ...).
struct InvalidGraph : Error {
  using Error::Error;
};

/// The distinguished vertex set contains a sink.
struct XNotRegular : InvalidGraph {
  using InvalidGraph::InvalidGraph;
};

/// Two elements over different graphs were combined.
struct GraphMismatch : Error {
  using Error::Error;
};

/// Malformed textual input (graph files, element expressions, systems).
struct ParseError : Error {
  using Error::Error;
};

/// An operation that requires a nonzero element received zero.
struct ZeroElement : Error {
  using Error::Error;
};

/// An operation that requires a homogeneous element received a mixed one.
struct NotHomogeneous : Error {
  using Error::Error;
};

/// The element handed to the inverse isomorphism does not live over the
/// extension of the stated base graph.
struct NotExtendedGraph : Error {
  using Error::Error;
};

/// A corner descriptor whose cycle has an exit.
struct InvalidCorner : Error {
  using Error::Error;
};

/// A partial map was applied outside its domain.
struct DomainViolation : Error {
  using Error::Error;
};

/// A generator assignment that was promised to satisfy the defining
/// relations does not; this always indicates an engine bug.
struct RelationViolation : Error {
  using Error::Error;
};

}  // namespace cohnpath
