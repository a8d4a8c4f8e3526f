#pragma once

#include <iosfwd>
#include <string>

#include "cohnpath/algebra.hpp"
#include "cohnpath/graph.hpp"

namespace cohnpath {

/// Graph file format: one record per line, order-independent.
///   vertex <id>
///   edge <id> <src> <rng>
///   X <id>
/// '#' starts a comment; blank lines are ignored.  Duplicate ids are
/// rejected.  Parse errors carry the line number.
Graph parse_graph(std::istream& in);
Graph parse_graph_string(const std::string& text);
Graph load_graph_file(const std::string& path);
std::string print_graph(const Graph& g);

/// Element expression grammar (whitespace-insensitive):
///   element := ['-'] term (('+'|'-') term)*
///   term    := factor (('*'|'.') factor)*
///   factor  := rational | id | id '^' | '(' id ')' | '(' id ')' '^'
/// An id names a vertex or an edge; '^' marks the ghost of an edge (on a
/// vertex it is a no-op, since v* = v).  A term multiplies its factors in
/// order; rational factors act as coefficients.  The literal "0" is the zero
/// element.  print_element emits canonical normal form and parses back to an
/// equal element.
AlgebraElement parse_element(const GraphPtr& g, const std::string& text);
std::string print_element(const AlgebraElement& x);
std::string print_monomial(const Monomial& m);

}  // namespace cohnpath
