#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cohnpath/assignment.hpp"
#include "cohnpath/cylinder.hpp"

namespace cohnpath {

/// Element of the partial skew group ring over the boundary path space:
/// a finite sum of coefficient functions tagged by group words, where the
/// coefficient at t is supported inside U_t.  Zero coefficients are dropped;
/// the support condition is checked on construction.
class SkewElement {
 public:
  explicit SkewElement(GraphPtr g) : graph_(std::move(g)) {}
  SkewElement(GraphPtr g, std::map<FreeWord, DFunction> coeffs);

  const GraphPtr& graph() const { return graph_; }
  const std::map<FreeWord, DFunction>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

 private:
  GraphPtr graph_;
  std::map<FreeWord, DFunction> coeffs_;
};

SkewElement skew_zero(GraphPtr g);
SkewElement skew_monomial(const DFunction& f, const FreeWord& t);
SkewElement skew_add(const SkewElement& x, const SkewElement& y);
SkewElement skew_sub(const SkewElement& x, const SkewElement& y);
SkewElement skew_scalar(const Rational& k, const SkewElement& x);
/// Twisted convolution: (f dt)(g ds) = alpha_t(alpha_{t^-1}(f) g) d(ts).
SkewElement skew_mul(const SkewElement& x, const SkewElement& y);
/// Involution: (f dt)* = alpha_{t^-1}(f) d(t^-1).
SkewElement skew_star(const SkewElement& x);
bool skew_equal(const SkewElement& x, const SkewElement& y);

/// Splits by word degree (positive letters minus inverted ones); the result
/// maps each occurring degree to the corresponding homogeneous part.
std::map<long, SkewElement> skew_degree(const SkewElement& x);

struct SkewTarget {
  using Elem = SkewElement;
  static Elem add(const Elem& x, const Elem& y) { return skew_add(x, y); }
  static Elem mul(const Elem& x, const Elem& y) { return skew_mul(x, y); }
  static Elem scalar(const Rational& k, const Elem& x) { return skew_scalar(k, x); }
  static bool is_zero(const Elem& x) { return x.is_zero(); }
  static std::string str(const Elem& x);
};

/// The canonical representation by multiplication operators: a vertex goes to
/// its fan indicator at the identity word, an edge to the indicator of its
/// cylinder at its own letter, a ghost to the adjoint.  The defining
/// relations are verified on construction; a failure throws RelationViolation
/// (it would mean the cylinder calculus itself is broken).
GeneratorAssignment<SkewTarget> skew_generators(const GraphPtr& g);

/// One inspected candidate word together with the generator that refuses to
/// commute with it.
struct ProbeCandidate {
  FreeWord t;
  std::string witness;
};

/// Outcome of the bounded maximal-commutativity probe for the image of the
/// diagonal subalgebra.
struct ProbeVerdict {
  bool maximal = false;
  std::size_t bound = 0;
  /// Set when not maximal: an exit-free cycle avoiding Y-sources whose word
  /// commutes with every diagonal generator up to the bound.
  std::optional<Cycle> cycle;
  /// Not maximal: how many diagonal generators were verified to commute.
  std::size_t commuting_checked = 0;
  /// Maximal: every off-diagonal candidate with its non-commuting witness.
  std::vector<ProbeCandidate> candidates;

  std::string text() const;
};

/// Searches every word t of length at most word_bound whose domain meets the
/// domain of its inverse (the words that could sit in the commutant without
/// being diagonal) and certifies the verdict computationally in both
/// directions.
ProbeVerdict max_commutativity_probe(const GraphPtr& g, std::size_t word_bound);

/// Exact rank certificate for the represented normal monomials with both
/// path parts of length at most len_bound, measured by evaluating every
/// coefficient function against the boundary profiles of the given depth.
/// When the monomials are dependent, `dependency` holds a vanishing
/// combination in element syntax.
struct RankReport {
  std::size_t monomials = 0;
  std::size_t rank = 0;
  std::optional<std::string> dependency;
};

RankReport skew_independence(const GraphPtr& g, std::size_t len_bound, std::size_t depth);

/// Terms "(function) d_[word]" joined by " + "; zero prints "0".
std::string print_skew(const SkewElement& x);
SkewElement parse_skew(const GraphPtr& g, const std::string& text);

}  // namespace cohnpath
