#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cohnpath/algebra.hpp"

namespace cohnpath {

/// One letter of the free group on the edge set: an edge id or its inverse.
struct Letter {
  std::string edge;
  bool inverse = false;

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Reduced word of the free group on the edges; the empty word is the
/// identity, written 0.  Reduction happens on construction and under
/// multiplication; no adjacent cancelling pair survives.
class FreeWord {
 public:
  FreeWord() = default;
  explicit FreeWord(std::vector<Letter> letters);

  static FreeWord from_path(const Path& a);
  /// The word a b^{-1}; common tails cancel in the reduction.
  static FreeWord from_paths(const Path& a, const Path& b);

  const std::vector<Letter>& letters() const { return letters_; }
  bool is_identity() const { return letters_.empty(); }
  std::size_t length() const { return letters_.size(); }
  /// Positive letters minus inverted ones (the Z-grading of the group).
  long degree() const;
  FreeWord inverse() const;

  friend FreeWord operator*(const FreeWord& a, const FreeWord& b);
  friend bool operator==(const FreeWord&, const FreeWord&) = default;
  friend auto operator<=>(const FreeWord&, const FreeWord&) = default;

 private:
  std::vector<Letter> letters_;
};

/// "0" for the identity; otherwise letters joined by '.', inverses written
/// with a "^-1" suffix (e.g. "e1.e2^-1").
std::string print_word(const FreeWord& w);
FreeWord parse_word(const std::string& text);

/// The (a, b) decomposition of a word of shape a b^{-1} with a, b paths of g
/// and rng(a) = rng(b); nullopt when the word has no such reading.  Both
/// components of the identity are empty paths based at no vertex, so the
/// identity is answered with nullopt as well: callers special-case it.
std::optional<std::pair<Path, Path>> word_paths(const Graph& g, const FreeWord& w);

/// Basic relatively-boundary cylinder: the set of boundary paths extending
/// `prefix` whose next edge, if any, avoids `excluded`.  The prefix itself
/// belongs exactly when its range is a sink or lies in Y.  Every edge of
/// `excluded` starts at rng(prefix).
struct GenCylinder {
  Path prefix;
  std::set<std::string> excluded;

  friend bool operator==(const GenCylinder&, const GenCylinder&) = default;
};

int cylinder_compare(const GenCylinder& a, const GenCylinder& b);

/// Emptiness is decidable locally: every vertex of a finite graph carries at
/// least one boundary path (walk until a sink or a Y-vertex, or forever), so
/// the cylinder is empty iff the prefix cannot stay (range regular and in X)
/// and every continuation is excluded.
bool cylinder_empty(const Graph& g, const GenCylinder& c);

/// The intersection of two basic cylinders is basic (or empty).
std::optional<GenCylinder> cylinder_intersect(const Graph& g, const GenCylinder& a,
                                              const GenCylinder& b);

/// Difference as a disjoint list of basic cylinders.
std::vector<GenCylinder> cylinder_subtract(const Graph& g, const GenCylinder& a,
                                           const GenCylinder& b);

/// Finite union of basic cylinders in canonical form: pairwise disjoint, no
/// empty member, deterministically ordered, and coarsened (a full fan of
/// sibling cylinders collapses into its parent).
class CylinderSet {
 public:
  explicit CylinderSet(GraphPtr g) : graph_(std::move(g)) {}
  CylinderSet(GraphPtr g, std::vector<GenCylinder> raw);

  const GraphPtr& graph() const { return graph_; }
  const std::vector<GenCylinder>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }

 private:
  GraphPtr graph_;
  std::vector<GenCylinder> pieces_;
};

CylinderSet cylinder_set(GraphPtr g, GenCylinder c);
/// All of the boundary space: the union of U_v over the vertices.
CylinderSet full_space(GraphPtr g);

CylinderSet intersect(const CylinderSet& a, const CylinderSet& b);
CylinderSet unite(const CylinderSet& a, const CylinderSet& b);
CylinderSet subtract(const CylinderSet& a, const CylinderSet& b);
bool set_equal(const CylinderSet& a, const CylinderSet& b);

/// A test point of the boundary space: a finite boundary path when
/// `truncated` is false, otherwise a stub standing for every boundary path
/// that extends it.  Membership queries throw Error when a stub is too short
/// to decide against a longer cylinder prefix.
struct BoundaryPoint {
  Path path;
  bool truncated = false;
};

bool contains(const CylinderSet& a, const BoundaryPoint& p);

/// Every finite boundary path shorter than `depth` plus a truncated stub for
/// each path of length exactly `depth`: together they separate all unions of
/// cylinders with prefixes shorter than `depth`.
std::vector<BoundaryPoint> boundary_profiles(const Graph& g, std::size_t depth);

/// The domain U_t of the partial action: everything for the identity, the
/// cylinder at a for t = a b^{-1} with rng(a) = rng(b) (so U_{b^{-1}} is the
/// full fan at rng(b)), and empty for every other word.
CylinderSet u_set(const GraphPtr& g, const FreeWord& t);
CylinderSet u_vertex(const GraphPtr& g, const std::string& v);

/// The action of t on a subset of U_{t^{-1}}: prefix surgery replacing the
/// b-part by the a-part.  Throws DomainViolation outside the domain.
CylinderSet act(const FreeWord& t, const CylinderSet& a);

/// Locally constant rational function on the boundary space: finitely many
/// disjoint basic cylinders with nonzero values, canonically coarsened;
/// zero elsewhere.
class DFunction {
 public:
  explicit DFunction(GraphPtr g) : graph_(std::move(g)) {}
  DFunction(GraphPtr g, std::vector<std::pair<GenCylinder, Rational>> raw);

  const GraphPtr& graph() const { return graph_; }
  const std::vector<std::pair<GenCylinder, Rational>>& pieces() const { return pieces_; }
  bool is_zero() const { return pieces_.empty(); }

 private:
  GraphPtr graph_;
  std::vector<std::pair<GenCylinder, Rational>> pieces_;
};

DFunction indicator(const CylinderSet& a);
DFunction d_add(const DFunction& f, const DFunction& g);
DFunction d_sub(const DFunction& f, const DFunction& g);
DFunction d_scale(const Rational& k, const DFunction& f);
DFunction d_mul(const DFunction& f, const DFunction& g);
DFunction d_restrict(const DFunction& f, const CylinderSet& a);
bool d_equal(const DFunction& f, const DFunction& g);
Rational d_value(const DFunction& f, const BoundaryPoint& p);

/// The pushforward f . theta_{t^{-1}}, defined when f is supported in
/// U_{t^{-1}}; the result is supported in U_t.  Throws DomainViolation.
DFunction alpha(const FreeWord& t, const DFunction& f);

/// Prints "Z(path)" or "Z(path \ {e,f})"; sets join pieces with " u " and
/// the empty set prints "{}".  Functions print coefficient-tagged
/// indicators joined by signs, e.g. "1[Z(e)] - 2 1[Z(v \ {e})]".
std::string print_cylinder(const GenCylinder& c);
std::string print_cylinder_set(const CylinderSet& a);
std::string print_dfunction(const DFunction& f);
GenCylinder parse_cylinder(const GraphPtr& g, const std::string& text);
CylinderSet parse_cylinder_set(const GraphPtr& g, const std::string& text);
DFunction parse_dfunction(const GraphPtr& g, const std::string& text);

}  // namespace cohnpath
