#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cohnpath/graph.hpp"
#include "cohnpath/rational.hpp"

namespace cohnpath {

using GraphPtr = std::shared_ptr<const Graph>;

/// A basis monomial alpha.beta* : a pair of paths with a common range.
///
/// The stored basis is the special-edge normal form: for each vertex v in X
/// the lexicographically largest edge leaving v is "special", and a monomial
/// is normal unless alpha and beta both end in that special edge.  Offending
/// monomials are rewritten through the summation relation of v solved for
/// the special edge, so normal monomials form a linear basis of the algebra.
struct Monomial {
  Path alpha;
  Path beta;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.alpha == b.alpha && a.beta == b.beta;
  }
};

/// Term order: total length |alpha|+|beta| first, then alpha, then beta
/// lexicographically by edge ids.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    auto ta = a.alpha.length() + a.beta.length();
    auto tb = b.alpha.length() + b.beta.length();
    if (ta != tb) return ta < tb;
    int c = path_compare(a.alpha, b.alpha);
    if (c != 0) return c < 0;
    return path_compare(a.beta, b.beta) < 0;
  }
};

using TermMap = std::map<Monomial, Rational, MonomialLess>;

/// An element of the relative algebra of a graph: a finite rational linear
/// combination of normal monomials.  Elements are immutable values; all
/// arithmetic goes through the free functions below, which keep the stored
/// form canonical (normal monomials, nonzero coefficients, deterministic
/// term order).
class AlgebraElement {
 public:
  explicit AlgebraElement(GraphPtr graph) : graph_(std::move(graph)) {}
  AlgebraElement(GraphPtr graph, TermMap terms)
      : graph_(std::move(graph)), terms_(std::move(terms)) {}

  const GraphPtr& graph() const { return graph_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

 private:
  GraphPtr graph_;
  TermMap terms_;
};

/// The special edge of v (pre: v in X): lexicographically largest out-edge.
const std::string& special_edge(const Graph& g, const std::string& v);

/// True iff the monomial is in normal form over g.
bool is_normal(const Graph& g, const Monomial& m);

/// Adds k * (alpha beta*) to `out`, rewriting to normal form as needed.
void add_normalized(const Graph& g, TermMap& out, const Monomial& m, const Rational& k);

AlgebraElement zero_element(GraphPtr g);
/// Generator by id: a vertex (ghost flag ignored: v* = v), an edge e, or its
/// ghost e*.  Throws UnknownId for ids that name neither.
AlgebraElement generator(const GraphPtr& g, const std::string& id, bool ghost = false);
/// k * alpha beta* as an element (normalized).  Pre: ranges match.
AlgebraElement monomial_element(const GraphPtr& g, const Path& alpha, const Path& beta,
                                const Rational& k = Rational(1));
/// The path alpha as an element (beta trivial).
AlgebraElement path_element(const GraphPtr& g, const Path& alpha);
/// v - sum_{e in s^{-1}(v)} e e*  (pre: v regular).  Normalizes to zero
/// exactly when v is in X.
AlgebraElement gap_element(const GraphPtr& g, const std::string& v);

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement scalar_mul(const Rational& k, const AlgebraElement& a);
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);
/// The involution: alpha beta* -> beta alpha*, coefficients fixed (K = Q).
AlgebraElement star(const AlgebraElement& a);

bool equal(const AlgebraElement& a, const AlgebraElement& b);

/// Degree of a monomial in the integer grading: |alpha| - |beta|.
long monomial_degree(const Monomial& m);
/// The degree-n graded component of x.
AlgebraElement graded_component(const AlgebraElement& x, long n);
/// All degrees with a nonzero component, ascending.
std::vector<long> graded_support(const AlgebraElement& x);
/// Nonzero and concentrated in a single degree; zero counts as homogeneous.
bool is_homogeneous(const AlgebraElement& x);

/// Throws GraphMismatch unless both elements live over equal graphs.
void require_same_graph(const AlgebraElement& a, const AlgebraElement& b);

/// A cycle without exits together with its base vertex and the positions
/// whose sources lie in Y.  Positions are 1-based along the cycle; position
/// k marks the initial segment e_1...e_k.  The corner of the algebra at the
/// base is spanned by powers of the cycle framed around these segments.
class CornerDescriptor {
 public:
  /// Validates that `cycle` is an exit-free cycle of g (InvalidCorner
  /// otherwise).  The base is the source of the first listed edge; any
  /// rotation is accepted.
  CornerDescriptor(const Graph& g, Cycle cycle);

  const Cycle& cycle() const { return cycle_; }
  const std::string& base() const { return base_; }
  /// {k in 1..n : src(e_k) in Y}.
  const std::set<std::size_t>& markers() const { return markers_; }

 private:
  Cycle cycle_;
  std::string base_;
  std::set<std::size_t> markers_;
};

/// The spanning family c^i mu_k mu_k* (c*)^j of the corner at the base, for
/// 0 <= i <= imax, 0 <= j <= jmax and k ranging over {0} plus the markers
/// (mu_0 is the base vertex, mu_k the initial segment e_1...e_k).  Listed in
/// (i, j, k) order, each entry in normal form.
std::vector<AlgebraElement> corner_spanning_monomials(const GraphPtr& g,
                                                      const CornerDescriptor& corner,
                                                      std::size_t imax, std::size_t jmax);

/// Dimension of the algebra as a vector space: the number of normal
/// monomials.  Returns nullopt when path enumeration has not stabilized by
/// `cap` (cap 0 means |vertices|, which decides finiteness exactly: an
/// acyclic graph stabilizes there and a cyclic one is infinite-dimensional).
std::optional<unsigned long long> dimension_if_finite(const Graph& g, std::size_t cap = 0);

}  // namespace cohnpath
