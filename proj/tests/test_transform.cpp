#include "cohnpath/transform.hpp"

#include <doctest.h>

#include "cohnpath/dsl.hpp"
#include "cohnpath/sampler.hpp"
#include "fixtures.hpp"

using namespace cohnpath;
using cohnpath::testing::fixture;
using cohnpath::testing::fixture_names;

namespace {

AlgebraElement parse_over(const GraphPtr& g, const std::string& text) {
  return parse_element(g, text);
}

}  // namespace

TEST_SUITE("transform") {
  TEST_CASE("extension isomorphism data for G4") {
    auto g = fixture("G4");
    ExtensionIso iso = make_extension_iso(g);
    CHECK(iso.primed_vertex == std::map<std::string, std::string>{{"p", "p'"}});
    CHECK(iso.primed_edge ==
          std::map<std::string, std::string>{{"f1", "f1'"}, {"f2", "f2'"}, {"f3", "f3'"}});
    CHECK(iso.extended->has_vertex("p'"));
    CHECK(iso.extended->edge("f2'").src == "p");
    CHECK(iso.extended->edge("f2'").rng == "p'");
    // the extension imposes every summation relation it can
    CHECK(iso.extended->x() == std::vector<std::string>{"m", "p", "t"});
  }

  TEST_CASE("forward generator images") {
    auto g = fixture("G4");
    ExtensionIso iso = make_extension_iso(g);
    auto img = [&](const std::string& text) { return phi(iso, parse_over(g, text)); };
    CHECK(equal(img("p"), parse_over(iso.extended, "p + p'")));
    CHECK(equal(img("t"), parse_over(iso.extended, "t")));
    CHECK(equal(img("b"), parse_over(iso.extended, "b")));
    CHECK(equal(img("f1"), parse_over(iso.extended, "f1 + f1'")));
    CHECK(equal(img("f2"), parse_over(iso.extended, "f2 + f2'")));
    CHECK(equal(img("f4"), parse_over(iso.extended, "f4")));
    CHECK(equal(img("f1^"), parse_over(iso.extended, "f1^ + (f1')^")));
    // the withheld relation's defect maps onto the primed vertex
    CHECK(equal(phi(iso, gap_element(g, "p")), generator(iso.extended, "p'")));
  }

  TEST_CASE("inverse generator images") {
    auto g = fixture("G4");
    ExtensionIso iso = make_extension_iso(g);
    auto img = [&](const std::string& text) { return psi(iso, parse_over(iso.extended, text)); };
    CHECK(equal(img("p"), parse_over(g, "f2.f2^ + f4.f4^")));
    CHECK(equal(img("p'"), parse_over(g, "p - f2.f2^ - f4.f4^")));
    CHECK(equal(img("t"), parse_over(g, "t")));
    CHECK(equal(img("f4"), parse_over(g, "f4")));
    CHECK(equal(img("f1"), parse_over(g, "f1.f2.f2^ + f1.f4.f4^")));
    CHECK(equal(img("f1'"), parse_over(g, "f1 - f1.f2.f2^ - f1.f4.f4^")));
    CHECK(equal(img("(f1')^"), star(parse_over(g, "f1 - f1.f2.f2^ - f1.f4.f4^"))));
  }

  TEST_CASE("psi rejects elements over the wrong graph") {
    auto g = fixture("G4");
    ExtensionIso iso = make_extension_iso(g);
    CHECK_THROWS_AS(psi(iso, generator(g, "t")), NotExtendedGraph);
  }

  TEST_CASE("round trips on random elements") {
    Sampler s(sampler_seed_from_env());
    for (const auto& name : {"G3", "G4", "G5pp", "G2", "G6"}) {
      auto g = fixture(name);
      ExtensionIso iso = make_extension_iso(g);
      for (int i = 0; i < 25; ++i) {
        AlgebraElement x = s.element(g);
        CHECK(equal(psi(iso, phi(iso, x)), x));
        AlgebraElement z = s.element(iso.extended);
        CHECK(equal(phi(iso, psi(iso, z)), z));
      }
    }
  }

  TEST_CASE("phi respects products and the involution") {
    Sampler s(sampler_seed_from_env() ^ 0x9e3779b9);
    for (const auto& name : {"G3", "G4", "G5pp"}) {
      auto g = fixture(name);
      ExtensionIso iso = make_extension_iso(g);
      for (int i = 0; i < 20; ++i) {
        AlgebraElement x = s.element(g);
        AlgebraElement y = s.element(g);
        CHECK(equal(phi(iso, multiply(x, y)), multiply(phi(iso, x), phi(iso, y))));
        CHECK(equal(phi(iso, star(x)), star(phi(iso, x))));
      }
    }
  }

  TEST_CASE("reduction of a plain edge") {
    auto g = fixture("G2");
    ReductionOutcome out = reduce(generator(g, "e"));
    CHECK(out.shape == ReductionShape::VertexForm);
    CHECK(out.vertex == "w");
    CHECK(out.k == Rational(1));
    CHECK(out.mu == Path{"v", {"e"}});
    CHECK(out.eta == Path{"w", {}});
    CHECK(equal(out.value, generator(g, "w")));
  }

  TEST_CASE("reduction finds the withheld gap") {
    auto g = fixture("G5pp");
    ReductionOutcome out = reduce(gap_element(g, "v"));
    CHECK(out.shape == ReductionShape::GapForm);
    CHECK(out.vertex == "v");
    CHECK(out.k == Rational(1));
    CHECK(out.mu == Path{"v", {}});
    CHECK(out.eta == Path{"v", {}});
    CHECK(equal(out.value, gap_element(g, "v")));
  }

  TEST_CASE("reduction reaches a gap through a path") {
    auto g = fixture("G4");
    AlgebraElement x = multiply(generator(g, "f1"), gap_element(g, "p"));
    ReductionOutcome out = reduce(x);
    CHECK(out.shape == ReductionShape::GapForm);
    CHECK(out.vertex == "p");
    CHECK(out.mu == Path{"t", {"f1"}});
    CHECK(out.eta == Path{"p", {}});
    CHECK(equal(out.value, gap_element(g, "p")));
  }

  TEST_CASE("reduction lands in a corner") {
    auto g = fixture("G5p");
    AlgebraElement x = parse_over(g, "v + e + e.e");
    ReductionOutcome out = reduce(x);
    CHECK(out.shape == ReductionShape::CornerForm);
    CHECK(out.vertex == "v");
    CHECK(out.k == Rational(1));
    REQUIRE(out.corner_cycle.has_value());
    CHECK(out.corner_cycle->edges == std::vector<std::string>{"e"});
    CHECK(equal(out.value, x));
  }

  TEST_CASE("reduction around a two-vertex cycle") {
    auto g = fixture("G3");
    AlgebraElement x = parse_over(g, "w + e1.e2");
    ReductionOutcome out = reduce(x);
    CHECK(out.shape == ReductionShape::CornerForm);
    CHECK(out.vertex == "w");
    REQUIRE(out.corner_cycle.has_value());
    CHECK(out.corner_cycle->edges == std::vector<std::string>{"e1", "e2"});
    CHECK(equal(out.value, x));
  }

  TEST_CASE("reduction escapes a cycle with exits") {
    auto g = fixture("G4");
    AlgebraElement x = parse_over(g, "p + f2");
    ReductionOutcome out = reduce(x);
    CHECK(out.shape == ReductionShape::VertexForm);
    CHECK(out.vertex == "b");
    CHECK(out.k == Rational(1));
    CHECK(out.mu == Path{"p", {"f4"}});
    CHECK(out.eta == Path{"p", {"f4"}});
  }

  TEST_CASE("equal lengths split, clear ghosts, then escape") {
    auto g = fixture("G6");
    AlgebraElement x = parse_over(g, "v + g1.g1 + g2.g1");
    ReductionOutcome out = reduce(x);
    CHECK(out.shape == ReductionShape::VertexForm);
    CHECK(out.vertex == "v");
    CHECK(out.mu == Path{"v", {"g1", "g2"}});
    CHECK(out.eta == Path{"v", {"g1", "g2"}});
  }

  TEST_CASE("escape walk takes a forced step before separating") {
    auto g = fixture("G6");
    AlgebraElement x = parse_over(g, "v + g1.g2 + g2.g1.g2");
    ReductionOutcome out = reduce(x);
    CHECK(out.shape == ReductionShape::VertexForm);
    CHECK(out.vertex == "v");
    CHECK(out.mu == Path{"v", {"g1", "g1"}});
    CHECK(out.eta == Path{"v", {"g1", "g1"}});
  }

  TEST_CASE("reduction rejects zero and reduce_homogeneous rejects mixtures") {
    auto g = fixture("G2");
    CHECK_THROWS_AS(reduce(zero_element(g)), ZeroElement);
    CHECK_THROWS_AS(reduce_homogeneous(parse_over(g, "v + e")), NotHomogeneous);
  }

  TEST_CASE("random reductions replay cleanly") {
    Sampler s(sampler_seed_from_env() ^ 0x51ed);
    for (const auto& name : fixture_names()) {
      auto g = fixture(name);
      bool has_l = condition_L(*g);
      for (int i = 0; i < 60; ++i) {
        AlgebraElement x = s.nonzero_element(g);
        ReductionOutcome out = reduce(x);
        CHECK(replay_failure(x, out) == std::nullopt);
        if (has_l) CHECK(out.shape != ReductionShape::CornerForm);
      }
    }
  }

  TEST_CASE("homogeneous reductions never need a corner") {
    Sampler s(sampler_seed_from_env() ^ 0x60D0);
    for (const auto& name : fixture_names()) {
      auto g = fixture(name);
      for (int i = 0; i < 40; ++i) {
        AlgebraElement x = s.homogeneous_element(g);
        ReductionOutcome out = reduce_homogeneous(x);
        CHECK(replay_failure(x, out) == std::nullopt);
        CHECK(out.shape != ReductionShape::CornerForm);
      }
    }
  }

  TEST_CASE("identity assignments are injective in the graded sense") {
    for (const auto& name : fixture_names()) {
      auto g = fixture(name);
      Certificate cert = check_graded_uniqueness(identity_assignment(g));
      CHECK(cert.injective());
      CHECK(cert.text().substr(0, 9) == "INJECTIVE");
    }
  }

  TEST_CASE("plain uniqueness needs every cycle to have an exit") {
    CHECK(check_ck_uniqueness(identity_assignment(fixture("G2"))).injective());
    CHECK(check_ck_uniqueness(identity_assignment(fixture("G4"))).injective());
    Certificate bad = check_ck_uniqueness(identity_assignment(fixture("G5p")));
    CHECK(bad.verdict == CertificateVerdict::ConditionLFails);
    CHECK(check_ck_uniqueness(identity_assignment(fixture("G3"))).verdict ==
          CertificateVerdict::ConditionLFails);
  }

  TEST_CASE("relative uniqueness sees the extension") {
    CHECK(check_relative_ck_uniqueness(identity_assignment(fixture("G3"))).injective());
    CHECK(check_relative_ck_uniqueness(identity_assignment(fixture("G5pp"))).injective());
    Certificate bad = check_relative_ck_uniqueness(identity_assignment(fixture("G5p")));
    CHECK(bad.verdict == CertificateVerdict::RelativeConditionLFails);
  }

  TEST_CASE("the quotient that kills a gap is rejected with a witness") {
    auto src = fixture("G5pp");
    auto dst = fixture("G5p");
    auto a = renaming_assignment(src, dst);
    CHECK(relation_violation(a) == std::nullopt);
    Certificate graded = check_graded_uniqueness(a);
    CHECK(graded.verdict == CertificateVerdict::WitnessFailure);
    bool gap_line = false;
    for (const auto& line : graded.lines)
      if (!line.pass) {
        gap_line = line.name.find("gap idempotent at v") != std::string::npos;
        CHECK(line.witness == "v - e.(e)^");
      }
    CHECK(gap_line);
    Certificate rel = check_relative_ck_uniqueness(a);
    CHECK(rel.verdict == CertificateVerdict::WitnessFailure);
  }

  TEST_CASE("broken relations are reported before hypotheses") {
    auto g = fixture("G2");
    GeneratorAssignment<CohnTarget> a{g, zero_element(g), {}, {}, {}};
    a.vertex_image.emplace("v", generator(g, "v"));
    a.vertex_image.emplace("w", generator(g, "w"));
    a.edge_image.emplace("e", zero_element(g));
    a.ghost_image.emplace("e", zero_element(g));
    Certificate cert = check_graded_uniqueness(a);
    CHECK(cert.verdict == CertificateVerdict::RelationViolation);
    CHECK(cert.detail.find("ghost-edge relation") != std::string::npos);
  }

  TEST_CASE("evaluation respects the assignment") {
    auto g = fixture("G2");
    auto a = identity_assignment(g);
    Sampler s(sampler_seed_from_env());
    for (int i = 0; i < 10; ++i) {
      AlgebraElement x = s.element(g);
      CHECK(equal(evaluate(a, x), x));
    }
    CHECK_THROWS_AS(evaluate(a, generator(fixture("G3"), "v")), GraphMismatch);
  }
}
