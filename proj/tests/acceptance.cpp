// Acceptance gate for the whole artifact: one line per criterion, PASS or
// FAIL, exit status zero only when every criterion holds.  Each criterion
// replays its claims from scratch against the shipped graph fixtures.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cohnpath/branching.hpp"
#include "cohnpath/dsl.hpp"
#include "cohnpath/sampler.hpp"
#include "cohnpath/skew.hpp"
#include "cohnpath/transform.hpp"
#include "fixtures.hpp"

using namespace cohnpath;
using cohnpath::testing::fixture;
using cohnpath::testing::fixture_names;

namespace {

struct Criterion {
  bool ok = true;
  std::string first_failure;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      first_failure = what;
    }
  }
};

std::vector<FreeWord> shape_words(const GraphPtr& g, std::size_t total) {
  std::set<FreeWord> words;
  const auto paths = paths_up_to(*g, total);
  for (const auto& a : paths)
    for (const auto& b : paths) {
      if (a.length() + b.length() > total) continue;
      if (path_rng(*g, a) != path_rng(*g, b)) continue;
      words.insert(FreeWord::from_paths(a, b));
    }
  return {words.begin(), words.end()};
}

Criterion relations_and_normal_form() {
  Criterion c;
  Sampler s(sampler_seed_from_env() ^ 0xac01);
  for (const auto& name : fixture_names()) {
    const auto g = fixture(name);
    c.require(relation_violation(identity_assignment(g)) == std::nullopt,
              name + ": a defining relation fails under multiply");
    for (int i = 0; i < 200; ++i) {
      const AlgebraElement a = s.element(g);
      const AlgebraElement b = s.element(g);
      const AlgebraElement d = s.element(g);
      c.require(equal(multiply(multiply(a, b), d), multiply(a, multiply(b, d))),
                name + ": associativity fails");
      c.require(equal(star(multiply(a, b)), multiply(star(b), star(a))),
                name + ": involution is not an antihomomorphism");
      c.require(equal(star(star(a)), a), name + ": involution is not involutive");
      const AlgebraElement ha = s.homogeneous_element(g);
      const AlgebraElement hb = s.homogeneous_element(g);
      const AlgebraElement prod = multiply(ha, hb);
      if (!prod.is_zero()) {
        c.require(is_homogeneous(prod) &&
                      graded_support(prod).front() ==
                          graded_support(ha).front() + graded_support(hb).front(),
                  name + ": graded multiplicativity fails");
      }
    }
  }
  c.require(dimension_if_finite(*fixture("G2cohn")) == 5ULL,
            "G2cohn: dimension is not 5");
  c.require(dimension_if_finite(*fixture("G2")) == 4ULL, "G2: dimension is not 4");
  return c;
}

Criterion extension_roundtrip() {
  Criterion c;
  Sampler s(sampler_seed_from_env() ^ 0xac02);
  for (const std::string name : {"G3", "G4", "G5pp"}) {
    const auto g = fixture(name);
    const ExtensionIso iso = make_extension_iso(g);
    for (const auto& v : g->vertices()) {
      AlgebraElement expected = generator(iso.extended, v);
      if (auto hit = iso.primed_vertex.find(v); hit != iso.primed_vertex.end())
        expected = add(expected, generator(iso.extended, hit->second));
      c.require(equal(phi(iso, generator(g, v)), expected),
                name + ": image of vertex " + v + " is off");
    }
    for (const auto& e : g->edges()) {
      AlgebraElement expected = generator(iso.extended, e.id);
      if (auto hit = iso.primed_edge.find(e.id); hit != iso.primed_edge.end())
        expected = add(expected, generator(iso.extended, hit->second));
      c.require(equal(phi(iso, generator(g, e.id)), expected),
                name + ": image of edge " + e.id + " is off");
      c.require(equal(phi(iso, generator(g, e.id, true)), star(expected)),
                name + ": image of the ghost of " + e.id + " is off");
    }
    for (int i = 0; i < 200; ++i) {
      const AlgebraElement x = s.element(g);
      c.require(equal(psi(iso, phi(iso, x)), x),
                name + ": psi(phi(x)) != x for x = " + print_element(x));
      const AlgebraElement y = s.element(iso.extended);
      c.require(equal(phi(iso, psi(iso, y)), y),
                name + ": phi(psi(y)) != y for y = " + print_element(y));
    }
  }
  return c;
}

Criterion reduction_replay() {
  Criterion c;
  Sampler s(sampler_seed_from_env() ^ 0xac03);
  const auto names = fixture_names();
  for (int i = 0; i < 500; ++i) {
    const auto& name = names[i % names.size()];
    const auto g = fixture(name);
    const AlgebraElement x = s.nonzero_element(g);
    const ReductionOutcome out = reduce(x);
    const auto failure = replay_failure(x, out);
    c.require(!failure, name + ": replay fails (" + failure.value_or("") +
                            ") for x = " + print_element(x));
    if (condition_L(*g))
      c.require(out.shape != ReductionShape::CornerForm,
                name + ": corner outcome on a graph where every cycle has an exit");
  }
  for (int i = 0; i < 200; ++i) {
    const auto& name = names[i % names.size()];
    const auto g = fixture(name);
    const AlgebraElement x = s.homogeneous_element(g);
    const ReductionOutcome out = reduce_homogeneous(x);
    c.require(out.shape != ReductionShape::CornerForm,
              name + ": homogeneous reduction reached a corner");
    c.require(!replay_failure(x, out), name + ": homogeneous replay fails");
  }
  return c;
}

Criterion uniqueness_certificates() {
  Criterion c;
  for (const auto& name : fixture_names()) {
    const auto g = fixture(name);
    c.require(check_graded_uniqueness(skew_generators(g)).injective(),
              name + ": graded uniqueness rejects the boundary representation");
  }
  c.require(check_relative_ck_uniqueness(skew_generators(fixture("G3"))).injective(),
            "G3: relative uniqueness rejects the boundary representation");
  const auto quotient = renaming_assignment(fixture("G5pp"), fixture("G5p"));
  const Certificate rejected = check_relative_ck_uniqueness(quotient);
  c.require(rejected.verdict == CertificateVerdict::WitnessFailure,
            "G5pp: the gap-killing quotient is not rejected");
  bool gap_line = false;
  for (const auto& line : rejected.lines)
    if (!line.pass && line.name.find("gap idempotent at v") != std::string::npos &&
        line.witness == "v - e.(e)^")
      gap_line = true;
  c.require(gap_line, "G5pp: rejection does not name the vanished gap");
  return c;
}

Criterion boundary_action_model() {
  Criterion c;
  for (const auto& name : fixture_names()) {
    const auto g = fixture(name);
    for (const auto& t : shape_words(g, 4)) {
      c.require(set_equal(act(t, u_set(g, t.inverse())), u_set(g, t)),
                name + ": action misses the domain of " + print_word(t));
      c.require(set_equal(act(FreeWord(), u_set(g, t)), u_set(g, t)),
                name + ": identity action moves the domain of " + print_word(t));
    }
    const auto words = shape_words(g, 2);
    for (const auto& t : words)
      for (const auto& sw : words) {
        const CylinderSet mid = intersect(u_set(g, sw), u_set(g, t.inverse()));
        const CylinderSet dom = act(sw.inverse(), mid);
        c.require(set_equal(act(t, act(sw, dom)), act(t * sw, dom)),
                  name + ": composition fails");
        c.require(set_equal(act(t, mid), intersect(u_set(g, t), u_set(g, t * sw))),
                  name + ": composed domain is off");
      }
  }
  const auto g4 = fixture("G4");
  c.require(set_equal(u_set(g4, parse_word("f2.f3^-1")), u_set(g4, parse_word("f2"))),
            "G4: the two-letter domain does not collapse to its head");
  Path deep = edge_path(*g4, "f2");
  deep = append_edge(*g4, deep, "f2");
  deep = append_edge(*g4, deep, "f4");
  c.require(contains(u_set(g4, parse_word("f2")), {deep, false}),
            "G4: boundary membership fails on the head cylinder");
  c.require(!contains(u_set(g4, parse_word("f4")), {deep, false}),
            "G4: boundary membership claims the wrong cylinder");
  c.require(contains(full_space(g4), {edge_path(*g4, "f1"), true}),
            "G4: truncated membership fails on the full space");
  for (const auto& name : fixture_names()) {
    const auto g = fixture(name);
    const RankReport report = skew_independence(g, 3, 7);
    c.require(!report.dependency,
              name + ": represented monomials are dependent (" +
                  report.dependency.value_or("") + ")");
    c.require(report.rank == report.monomials, name + ": rank fell short");
  }
  for (const std::string name : {"G3", "G4", "G5p", "G5pp", "G6"}) {
    const auto g = fixture(name);
    c.require(max_commutativity_probe(g, 4).maximal == relative_condition_L(*g),
              name + ": commutativity probe disagrees with the exit condition");
  }
  return c;
}

Criterion interval_representations() {
  Criterion c;
  for (const auto& name : fixture_names()) {
    const auto g = fixture(name);
    for (const bool rotation : {false, true}) {
      const BranchingSystem sys =
          rotation ? build_rotation_system(g) : build_standard_system(g);
      const std::string tag =
          name + (rotation ? " (rotation)" : " (standard)");
      c.require(check_axioms(sys, g).ok, tag + ": axioms fail");
      const FaithfulnessVerdict verdict = faithfulness_conditions(sys, g, 10);
      const RankCertificate cert = injectivity_rank_check(sys, g, 3);
      c.require(cert.agrees, tag + ": rank certificate contradicts the verdict");
      if (name == "G5p" && rotation) {
        c.require(verdict.faithful, tag + ": rotation system not faithful");
        c.require(cert.full_rank, tag + ": rotation monomials are dependent");
      }
      if (name == "G5p" && !rotation) {
        c.require(!verdict.faithful && verdict.condition == 3,
                  tag + ": the identity-map system is not caught");
        c.require(verdict.witness ==
                      "every point of D_v is fixed by power 1 of the cycle e",
                  tag + ": fixed-set witness is off");
        c.require(cert.kernel_witness == std::optional<std::string>("-v + e"),
                  tag + ": kernel witness is not the cycle minus its base");
      }
    }
  }
  return c;
}

Criterion exact_arithmetic() {
  Criterion c;
  c.require((QuadScalar(3) - QuadScalar(2) * sqrt2()).sign() > 0,
            "sign of 3 - 2*sqrt2 is not positive");
  c.require((QuadScalar(7) - QuadScalar(5) * sqrt2()).sign() < 0,
            "sign of 7 - 5*sqrt2 is not negative");
  c.require(sqrt2() * sqrt2() == QuadScalar(2), "sqrt2 squared is not 2");
  const IntervalSet left(Interval{QuadScalar(0), sqrt2()});
  const IntervalSet right(Interval{QuadScalar(1), QuadScalar(2)});
  c.require(iv_union(left, right).measure() + iv_intersect(left, right).measure() ==
                left.measure() + right.measure(),
            "interval measures are not exact");

  // The shipped sources must be free of machine reals; scan every file the
  // library, headers, and CLI are built from.
  namespace fs = std::filesystem;
  const std::string data_dir = cohnpath::testing::data_path("");
  const fs::path root = fs::path(data_dir).parent_path().parent_path();
  const auto word_hit = [](const std::string& text, const std::string& token) {
    std::size_t pos = 0;
    const auto boundary = [&text](std::size_t i) {
      if (i >= text.size()) return true;
      const unsigned char ch = static_cast<unsigned char>(text[i]);
      return !(std::isalnum(ch) || ch == '_');
    };
    while ((pos = text.find(token, pos)) != std::string::npos) {
      if ((pos == 0 || boundary(pos - 1)) && boundary(pos + token.size()))
        return true;
      pos += token.size();
    }
    return false;
  };
  for (const std::string dir : {"src", "include", "tools"}) {
    for (const auto& entry : fs::recursive_directory_iterator(root / dir)) {
      if (!entry.is_regular_file()) continue;
      std::ifstream in(entry.path());
      std::ostringstream buf;
      buf << in.rdbuf();
      const std::string text = buf.str();
      for (const std::string token : {"float", "double"})
        c.require(!word_hit(text, token),
                  entry.path().string() + ": contains the token " + token);
    }
  }
  return c;
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    Criterion (*run)();
  };
  const Entry entries[] = {
      {"1. defining relations and normal form", relations_and_normal_form},
      {"2. extension isomorphism roundtrip", extension_roundtrip},
      {"3. reduction with replayed certificates", reduction_replay},
      {"4. uniqueness certificates", uniqueness_certificates},
      {"5. boundary action model", boundary_action_model},
      {"6. interval representations", interval_representations},
      {"7. exact arithmetic", exact_arithmetic},
  };
  bool all_ok = true;
  for (const auto& entry : entries) {
    Criterion c;
    std::string error;
    try {
      c = entry.run();
    } catch (const std::exception& e) {
      c.ok = false;
      c.first_failure = std::string("exception: ") + e.what();
    }
    all_ok = all_ok && c.ok;
    std::cout << (c.ok ? "PASS  " : "FAIL  ") << entry.label;
    if (!c.ok) std::cout << "  [" << c.first_failure << "]";
    std::cout << "\n";
  }
  return all_ok ? 0 : 1;
}
