#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cohnpath/algebra.hpp"
#include "cohnpath/graph.hpp"
#include "cohnpath/interval.hpp"
#include "cohnpath/rational.hpp"

namespace cohnpath {

/// A piecewise-constant function from the real line to the scalar field:
/// finitely many disjoint half-open intervals with nonzero values, zero
/// elsewhere.  The stored form is canonical (sorted, disjoint, adjacent
/// equal-valued pieces merged, zero values dropped), so equality of
/// functions is structural equality.  Overlapping input pieces accumulate
/// additively.
class ModFunction {
 public:
  ModFunction() = default;
  explicit ModFunction(std::vector<std::pair<Interval, Rational>> pieces);

  const std::vector<std::pair<Interval, Rational>>& pieces() const { return pieces_; }
  bool is_zero() const { return pieces_.empty(); }
  Rational value_at(const QuadScalar& x) const;
  /// The set where the function is nonzero.
  IntervalSet support() const;

  friend bool operator==(const ModFunction& x, const ModFunction& y) = default;

 private:
  std::vector<std::pair<Interval, Rational>> pieces_;
};

ModFunction mf_indicator(const IntervalSet& s);
ModFunction mf_add(const ModFunction& x, const ModFunction& y);
ModFunction mf_sub(const ModFunction& x, const ModFunction& y);
ModFunction mf_scale(const Rational& k, const ModFunction& x);
/// Multiplication by the characteristic function of s.
ModFunction mf_restrict(const ModFunction& x, const IntervalSet& s);
/// x composed with f: y -> x(f(y)) on the domain of f, zero elsewhere.
ModFunction mf_compose(const ModFunction& x, const PAMap& f);

std::string print_mod_function(const ModFunction& x);

/// A relative branching system for a graph: a bounded interval union as the
/// underlying set, one interval union D_v per vertex, one R_e per edge, and
/// a piecewise-affine bijection f_e : D_{rng(e)} -> R_e per edge.  The
/// struct itself does not enforce the defining axioms -- deliberately, so
/// that broken systems can be constructed and fed to check_axioms.
struct BranchingSystem {
  GraphPtr graph;
  IntervalSet space;
  std::map<std::string, IntervalSet> d;  // vertex id -> D_v
  std::map<std::string, IntervalSet> r;  // edge id -> R_e
  std::map<std::string, PAMap> f;        // edge id -> f_e

  const IntervalSet& d_of(const std::string& v) const;
  const IntervalSet& r_of(const std::string& e) const;
  const PAMap& f_of(const std::string& e) const;
};

/// The standard system: D_v = [i-1, i) by vertex id order; D_v split into
/// equal half-open pieces, one per out-edge, with one extra unassigned
/// piece at the right end when the vertex is regular but outside X; f_e the
/// increasing affine bijection D_{rng(e)} -> R_e.
BranchingSystem build_standard_system(const GraphPtr& g);

/// Same interval layout, but each f_e is conjugated through [0,1) with the
/// rotation x -> x + theta (mod 1), theta = sqrt2 - 1.  Every f_e has two
/// affine pieces (the wrap splits the domain); the irrational angle removes
/// rational fixed points from all cycle compositions.
BranchingSystem build_rotation_system(const GraphPtr& g);

/// Result of replaying the five defining conditions of a branching system.
struct AxiomReport {
  bool ok = true;
  int axiom = 0;  // 1..5 when violated
  std::string witness;

  std::string text() const;
};

/// Checks, in order: (1) the R_e are pairwise disjoint; (2) the D_v are
/// pairwise disjoint; (3) R_e lies inside D at the source of e; (4) D_v is
/// exactly the union of its out-edge ranges for v in X; (5) f_e is a
/// bijection from D at the range of e onto R_e.  Reports the first failure
/// with a witness.
AxiomReport check_axioms(const BranchingSystem& sys, const GraphPtr& g);

/// The representation applied to a function: vertices act by restriction
/// to D_v, an edge e sends phi to its pushforward through f_e cut to R_e,
/// and the ghost of e pulls back along f_e on D at the range of e.  The
/// action extends along monomials by composition and linearly over terms.
ModFunction rep_apply(const BranchingSystem& sys, const AlgebraElement& x,
                      const ModFunction& phi);

/// Verdict of the three faithfulness conditions for the representation.
struct FaithfulnessVerdict {
  bool faithful = true;
  std::size_t m_bound = 0;
  int condition = 0;  // 1..3 when violated
  std::string witness;

  std::string text() const;
};

/// Condition 1: every D_v and R_e is nonempty.  Condition 2: D_v exceeds
/// the union of its out-edge ranges for every regular v outside X.
/// Condition 3: for each exit-free cycle whose edge sources all lie in X,
/// the powers f_c^1 .. f_c^m of the cycle map leave some point of the base
/// interval unfixed; the fixed sets are computed exactly, piece by piece.
FaithfulnessVerdict faithfulness_conditions(const BranchingSystem& sys, const GraphPtr& g,
                                            std::size_t m_bound);

/// Empirical counterpart of the faithfulness verdict: every normal monomial
/// with path legs bounded by deg_bound acts on functions as an indicator
/// times a substitution along a partial piecewise-affine map, and a
/// combination of such operators vanishes exactly when the coefficients
/// cancel within every group of monomials sharing an affine germ on an atom
/// of the common domain refinement.  The rank of the resulting incidence
/// matrix is the dimension of the span of the operators; a vanishing
/// combination is returned as a kernel witness.
struct RankCertificate {
  std::size_t monomials = 0;
  std::size_t rank = 0;
  bool full_rank = true;
  std::optional<std::string> kernel_witness;
  bool faithful_expected = true;  // verdict of faithfulness_conditions
  bool agrees = true;             // full_rank == faithful_expected

  std::string text() const;
};

RankCertificate injectivity_rank_check(const BranchingSystem& sys, const GraphPtr& g,
                                       std::size_t deg_bound);

/// Line-based serialization: "D <vertex> [l,r) ...", "R <edge> [l,r) ...",
/// "f <edge> piece [l,r) <slope> <offset> ...".  parse_branching rebuilds
/// the system over the given graph (the space is the union of the listed
/// sets); the round trip through print_branching is exact.
std::string print_branching(const BranchingSystem& sys);
BranchingSystem parse_branching(const GraphPtr& g, const std::string& text);

}  // namespace cohnpath
