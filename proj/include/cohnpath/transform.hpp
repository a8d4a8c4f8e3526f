#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cohnpath/assignment.hpp"

namespace cohnpath {

/// The extension isomorphism, set up once per base graph.  phi maps elements
/// over the base onto elements over the extension; psi is its inverse.
struct ExtensionIso {
  GraphPtr base;
  GraphPtr extended;
  std::map<std::string, std::string> primed_vertex;  // base vertex in Y -> new vertex
  std::map<std::string, std::string> primed_edge;    // base edge into Y -> new edge
};

ExtensionIso make_extension_iso(const GraphPtr& base);

AlgebraElement phi(const ExtensionIso& iso, const AlgebraElement& x);
AlgebraElement psi(const ExtensionIso& iso, const AlgebraElement& x);

/// Shape of a reduced element: a nonzero multiple of a vertex, of a gap
/// idempotent, or a nonzero element of the corner over a cycle without exit.
enum class ReductionShape { VertexForm, GapForm, CornerForm };

std::string shape_name(ReductionShape s);

/// Result of reduce(): paths mu, eta with mu* x eta = value, where value has
/// the stated shape.  For VertexForm value = k * vertex; for GapForm value =
/// k * (vertex - sum of e e*); for CornerForm value is a nonzero combination
/// of monomials supported on closed paths at the base of the recorded cycle
/// without exit.
struct ReductionOutcome {
  ReductionShape shape;
  Path mu;
  Path eta;
  AlgebraElement value;
  Rational k;                         // vertex / gap forms
  std::string vertex;                 // vertex / gap forms
  std::optional<Cycle> corner_cycle;  // corner form
};

ReductionOutcome reduce(const AlgebraElement& x);

/// Same procedure restricted to homogeneous input; never yields CornerForm.
ReductionOutcome reduce_homogeneous(const AlgebraElement& x);

/// Replays a claimed outcome against the original element and checks every
/// asserted property.  Returns an explanation of the first mismatch, if any.
std::optional<std::string> replay_failure(const AlgebraElement& x, const ReductionOutcome& out);

enum class CertificateVerdict {
  Injective,
  RelationViolation,
  WitnessFailure,
  ConditionLFails,
  RelativeConditionLFails,
};

struct HypothesisLine {
  std::string name;
  bool pass;
  std::string witness;  // element DSL for a kernel element when !pass
};

struct Certificate {
  CertificateVerdict verdict;
  std::vector<HypothesisLine> lines;
  std::string detail;  // relation violation / condition failure description
  bool injective() const { return verdict == CertificateVerdict::Injective; }
  std::string text() const;
};

namespace detail {

enum class UniquenessMode { Graded, CK, RelativeCK };

template <class T>
  requires TargetRing<T>
Certificate check_uniqueness_core(const GeneratorAssignment<T>& a, UniquenessMode mode);

}  // namespace detail

/// Graded uniqueness: relations hold, every vertex image is nonzero, and for
/// every v outside X that is not a sink the gap image is nonzero.  Certifies
/// injectivity of graded homomorphisms.
template <class T>
  requires TargetRing<T>
Certificate check_graded_uniqueness(const GeneratorAssignment<T>& a) {
  return detail::check_uniqueness_core(a, detail::UniquenessMode::Graded);
}

/// Cuntz-Krieger uniqueness: the source graph must satisfy Condition (L);
/// the hypotheses are the same nonvanishing requirements, but injectivity
/// follows for arbitrary homomorphisms.
template <class T>
  requires TargetRing<T>
Certificate check_ck_uniqueness(const GeneratorAssignment<T>& a) {
  return detail::check_uniqueness_core(a, detail::UniquenessMode::CK);
}

/// Relative version: the extended graph must satisfy Condition (L).  The
/// hypotheses, phrased over the source graph, ask for nonzero images of the
/// vertices outside Y and, at each v in Y, of both the gap idempotent and the
/// complementary sum of e e* over the out-edges.
template <class T>
  requires TargetRing<T>
Certificate check_relative_ck_uniqueness(const GeneratorAssignment<T>& a) {
  return detail::check_uniqueness_core(a, detail::UniquenessMode::RelativeCK);
}

std::string certificate_hypothesis_witness(const AlgebraElement& kernel_element);

template <class T>
  requires TargetRing<T>
Certificate detail::check_uniqueness_core(const GeneratorAssignment<T>& a,
                                          detail::UniquenessMode mode) {
  using detail::UniquenessMode;
  Certificate cert{CertificateVerdict::Injective, {}, ""};
  const Graph& g = *a.source;
  if (mode == UniquenessMode::CK && !condition_L(g)) {
    cert.verdict = CertificateVerdict::ConditionLFails;
    cert.detail = "the graph has a cycle without exit";
    return cert;
  }
  if (mode == UniquenessMode::RelativeCK && !relative_condition_L(g)) {
    cert.verdict = CertificateVerdict::RelativeConditionLFails;
    cert.detail = "the extended graph has a cycle without exit";
    return cert;
  }
  if (auto bad = relation_violation(a)) {
    cert.verdict = CertificateVerdict::RelationViolation;
    cert.detail = *bad;
    return cert;
  }
  auto in_y = [&g](const std::string& v) { return !g.is_sink(v) && !g.in_x(v); };
  auto add_line = [&](const std::string& name, const AlgebraElement& kernel) {
    bool ok = !T::is_zero(evaluate(a, kernel));
    cert.lines.push_back(
        {name, ok, ok ? std::string() : certificate_hypothesis_witness(kernel)});
  };
  for (const auto& v : g.vertices()) {
    if (mode == UniquenessMode::RelativeCK && in_y(v)) continue;
    add_line("vertex " + v + " has nonzero image", generator(a.source, v));
  }
  for (const auto& v : g.vertices()) {
    if (!in_y(v)) continue;
    add_line("gap idempotent at " + v + " has nonzero image", gap_element(a.source, v));
    if (mode == UniquenessMode::RelativeCK) {
      AlgebraElement sum = zero_element(a.source);
      for (const auto& e : g.out_edges(v))
        sum = add(sum, multiply(generator(a.source, e), star(generator(a.source, e))));
      add_line("edge range sum at " + v + " has nonzero image", sum);
    }
  }
  for (const auto& line : cert.lines)
    if (!line.pass) cert.verdict = CertificateVerdict::WitnessFailure;
  return cert;
}

}  // namespace cohnpath
