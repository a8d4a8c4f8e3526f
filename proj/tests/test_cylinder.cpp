#include <doctest.h>

#include <set>
#include <vector>

#include "cohnpath/cylinder.hpp"
#include "cohnpath/errors.hpp"
#include "fixtures.hpp"

using namespace cohnpath;
using cohnpath::testing::fixture;
using cohnpath::testing::fixture_names;

namespace {

/// Every canonical set must be pairwise disjoint, strictly ordered, and free
/// of empty pieces.
void check_canonical(const CylinderSet& a) {
  const auto& ps = a.pieces();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    CHECK_FALSE(cylinder_empty(*a.graph(), ps[i]));
    if (i + 1 < ps.size()) CHECK(cylinder_compare(ps[i], ps[i + 1]) < 0);
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      CHECK_FALSE(cylinder_intersect(*a.graph(), ps[i], ps[j]).has_value());
  }
}

/// Shape words a b^{-1} over path pairs with matching range and
/// |a| + |b| <= total, deduplicated after reduction.
std::vector<FreeWord> shape_words(const GraphPtr& g, std::size_t total) {
  std::set<FreeWord> words;
  auto paths = paths_up_to(*g, total);
  for (const auto& a : paths)
    for (const auto& b : paths) {
      if (a.length() + b.length() > total) continue;
      if (path_rng(*g, a) != path_rng(*g, b)) continue;
      words.insert(FreeWord::from_paths(a, b));
    }
  return {words.begin(), words.end()};
}

/// A small deterministic family of sets exercising all the constructors.
std::vector<CylinderSet> set_family(const GraphPtr& g) {
  std::vector<CylinderSet> family;
  family.push_back(full_space(g));
  family.push_back(CylinderSet(g));
  for (const auto& v : g->vertices()) family.push_back(u_vertex(g, v));
  for (const auto& p : paths_up_to(*g, 2)) {
    if (p.length() == 0) continue;
    family.push_back(cylinder_set(g, {p, {}}));
  }
  for (const auto& v : g->vertices()) {
    const auto& out = g->out_edges(v);
    if (out.empty()) continue;
    family.push_back(cylinder_set(g, {trivial_path(*g, v), {out.front()}}));
  }
  return family;
}

}  // namespace

TEST_SUITE("cylinder") {
  TEST_CASE("free words reduce and invert") {
    FreeWord id;
    CHECK(id.is_identity());
    CHECK(print_word(id) == "0");

    FreeWord w({{"e1", false}, {"e2", false}, {"e2", true}, {"e3", false}});
    CHECK(w.letters().size() == 2);
    CHECK(print_word(w) == "e1.e3");
    CHECK((w * w.inverse()).is_identity());
    CHECK(w.degree() == 2);
    CHECK(w.inverse().degree() == -2);

    // Common tails cancel when a word is assembled from two paths.
    auto g = fixture("G4");
    Path a = edge_path(*g, "f1");
    a = append_edge(*g, a, "f2");
    Path b = edge_path(*g, "f3");
    b = append_edge(*g, b, "f2");
    FreeWord t = FreeWord::from_paths(a, b);
    CHECK(print_word(t) == "f1.f3^-1");
  }

  TEST_CASE("word parsing round-trips") {
    for (const std::string text : {"0", "e1", "e1.e2^-1", "f^-1", "a.b.c^-1"}) {
      FreeWord w = parse_word(text);
      CHECK(print_word(w) == text);
    }
    CHECK(parse_word("e.e^-1").is_identity());
    CHECK_THROWS_AS(parse_word(""), ParseError);
    CHECK_THROWS_AS(parse_word("e..f"), ParseError);
    CHECK_THROWS_AS(parse_word("0.e"), ParseError);
  }

  TEST_CASE("word shape detection") {
    auto g = fixture("G4");
    auto ab = word_paths(*g, parse_word("f1.f2"));
    REQUIRE(ab.has_value());
    CHECK(path_str(ab->first) == "f1.f2");
    CHECK(ab->second.length() == 0);

    ab = word_paths(*g, parse_word("f2.f3^-1"));
    REQUIRE(ab.has_value());
    CHECK(path_str(ab->first) == "f2");
    CHECK(path_str(ab->second) == "f3");

    // Not composable, wrong letter order, or mismatched ranges: no shape.
    CHECK_FALSE(word_paths(*g, parse_word("f4.f1")).has_value());
    CHECK_FALSE(word_paths(*g, parse_word("f1^-1.f2")).has_value());
    CHECK_FALSE(word_paths(*g, parse_word("f4.f2^-1")).has_value());
    CHECK_THROWS_AS(word_paths(*g, parse_word("nope")), UnknownId);
  }

  TEST_CASE("domains of words") {
    auto g4 = fixture("G4");
    CHECK(set_equal(u_set(g4, parse_word("f2.f3^-1")), u_set(g4, parse_word("f2"))));
    CHECK(u_set(g4, parse_word("f4.f1")).empty());
    CHECK(set_equal(u_set(g4, FreeWord()), full_space(g4)));

    // On G2 the domain of e^-1 is the single boundary path at the sink w.
    auto g2 = fixture("G2");
    CylinderSet uw = u_set(g2, parse_word("e^-1"));
    CHECK(set_equal(uw, u_vertex(g2, "w")));
    CHECK(contains(uw, {trivial_path(*g2, "w"), false}));
    CHECK_FALSE(contains(uw, {edge_path(*g2, "e"), false}));
  }

  TEST_CASE("emptiness depends on the withheld relations") {
    auto g2 = fixture("G2");
    CHECK(cylinder_set(g2, {trivial_path(*g2, "v"), {"e"}}).empty());
    auto g2c = fixture("G2cohn");
    CylinderSet point_v = cylinder_set(g2c, {trivial_path(*g2c, "v"), {"e"}});
    CHECK_FALSE(point_v.empty());
    CHECK(contains(point_v, {trivial_path(*g2c, "v"), false}));
  }

  TEST_CASE("difference keeps the finite boundary point at a gap vertex") {
    auto g = fixture("G4");
    CylinderSet rest = subtract(u_vertex(g, "p"),
                               unite(u_set(g, parse_word("f2")), u_set(g, parse_word("f4"))));
    CHECK_FALSE(rest.empty());
    Path p = trivial_path(*g, "p");
    CHECK(contains(rest, {p, false}));
    CHECK(set_equal(rest, cylinder_set(g, {p, {"f2", "f4"}})));

    // The same difference at an X-vertex is empty: t keeps no point back.
    CHECK(subtract(u_vertex(g, "t"), u_set(g, parse_word("f1"))).empty());
  }

  TEST_CASE("membership of finite and truncated points") {
    auto g = fixture("G4");
    Path deep = edge_path(*g, "f2");
    deep = append_edge(*g, deep, "f2");
    deep = append_edge(*g, deep, "f4");
    CHECK(contains(u_set(g, parse_word("f2")), {deep, false}));
    CHECK_FALSE(contains(u_set(g, parse_word("f4")), {deep, false}));
    CHECK(contains(full_space(g), {deep, false}));

    // A stub decides membership when it reaches past the prefix, and refuses
    // when it stops short of one.
    CHECK(contains(full_space(g), {edge_path(*g, "f1"), true}));
    CHECK_THROWS_AS(contains(u_set(g, parse_word("f2.f2")), {edge_path(*g, "f2"), true}),
                    Error);
    // A finite point must end at a sink or in Y.
    CHECK_THROWS_AS(contains(full_space(g), {trivial_path(*g, "t"), false}), Error);
  }

  TEST_CASE("set algebra laws on every fixture") {
    for (const auto& name : fixture_names()) {
      auto g = fixture(name);
      auto family = set_family(g);
      for (const auto& a : family) check_canonical(a);
      for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = 0; j < family.size(); ++j) {
          const CylinderSet& a = family[i];
          const CylinderSet& b = family[j];
          CylinderSet meet = intersect(a, b);
          CylinderSet join = unite(a, b);
          CylinderSet diff = subtract(a, b);
          check_canonical(meet);
          check_canonical(join);
          check_canonical(diff);
          CHECK(set_equal(meet, intersect(b, a)));
          CHECK(intersect(diff, b).empty());
          CHECK(set_equal(unite(diff, meet), a));
          CHECK(set_equal(subtract(a, meet), diff));
          CHECK(set_equal(join, unite(b, a)));
        }
      }
    }
  }

  TEST_CASE("set operations agree with pointwise membership") {
    for (const std::string name : {"G4", "G5pp", "G6"}) {
      auto g = fixture(name);
      auto family = set_family(g);
      auto points = boundary_profiles(*g, 6);
      for (const auto& a : family) {
        for (const auto& b : family) {
          CylinderSet meet = intersect(a, b);
          CylinderSet join = unite(a, b);
          CylinderSet diff = subtract(a, b);
          for (const auto& xi : points) {
            bool ina = contains(a, xi);
            bool inb = contains(b, xi);
            CHECK(contains(meet, xi) == (ina && inb));
            CHECK(contains(join, xi) == (ina || inb));
            CHECK(contains(diff, xi) == (ina && !inb));
          }
        }
      }
    }
  }

  TEST_CASE("action moves cylinders by prefix surgery") {
    auto g2 = fixture("G2");
    CylinderSet moved = act(parse_word("e"), u_set(g2, parse_word("e^-1")));
    CHECK(set_equal(moved, u_set(g2, parse_word("e"))));
    CHECK(contains(moved, {edge_path(*g2, "e"), false}));
    CHECK_THROWS_AS(act(parse_word("e"), full_space(g2)), DomainViolation);

    auto g5 = fixture("G5pp");
    CylinderSet back = act(parse_word("e^-1"), u_set(g5, parse_word("e")));
    CHECK(set_equal(back, u_vertex(g5, "v")));
    CHECK(contains(back, {trivial_path(*g5, "v"), false}));

    // A word with empty domain acts only on the empty set.
    auto g4 = fixture("G4");
    CHECK(act(parse_word("f4.f1"), CylinderSet(g4)).empty());
    CHECK_THROWS_AS(act(parse_word("f4.f1"), full_space(g4)), DomainViolation);
  }

  TEST_CASE("partial action axioms hold for words up to length four") {
    for (const auto& name : fixture_names()) {
      auto g = fixture(name);
      for (const auto& t : shape_words(g, 4)) {
        // act(t) carries the domain of t^-1 exactly onto the domain of t.
        CHECK(set_equal(act(t, u_set(g, t.inverse())), u_set(g, t)));
        // The identity acts as the identity.
        CHECK(set_equal(act(FreeWord(), u_set(g, t)), u_set(g, t)));
      }
    }
  }

  TEST_CASE("partial action composes on the correct domains") {
    for (const std::string name : {"G2cohn", "G4", "G6"}) {
      auto g = fixture(name);
      auto words = shape_words(g, 2);
      for (const auto& t : words) {
        for (const auto& s : words) {
          CylinderSet mid = intersect(u_set(g, s), u_set(g, t.inverse()));
          CylinderSet dom = act(s.inverse(), mid);
          CHECK(set_equal(act(t, act(s, dom)), act(t * s, dom)));
          CHECK(set_equal(act(t, mid), intersect(u_set(g, t), u_set(g, t * s))));
        }
      }
    }
  }

  TEST_CASE("indicator functions mirror the set calculus") {
    for (const std::string name : {"G4", "G6"}) {
      auto g = fixture(name);
      auto family = set_family(g);
      auto points = boundary_profiles(*g, 5);
      for (const auto& a : family) {
        for (const auto& xi : points)
          CHECK(d_value(indicator(a), xi) == (contains(a, xi) ? Rational(1) : Rational(0)));
        for (const auto& b : family) {
          CHECK(d_equal(d_mul(indicator(a), indicator(b)), indicator(intersect(a, b))));
          CHECK(d_equal(d_add(indicator(a), indicator(b)),
                        d_add(indicator(unite(a, b)), indicator(intersect(a, b)))));
        }
      }
    }
  }

  TEST_CASE("function arithmetic is exact") {
    auto g = fixture("G4");
    DFunction f = indicator(u_set(g, parse_word("f2")));
    CHECK(d_sub(f, f).is_zero());
    CHECK(d_equal(d_add(f, f), d_scale(Rational(2), f)));
    CHECK(d_scale(Rational(0), f).is_zero());

    // Two names for the same set of boundary paths cancel exactly.
    auto g5 = fixture("G5p");
    DFunction once = indicator(u_set(g5, parse_word("e")));
    DFunction twice = indicator(u_set(g5, parse_word("e.e")));
    CHECK(d_equal(once, twice));
    auto g5y = fixture("G5pp");
    CHECK_FALSE(d_equal(indicator(u_set(g5y, parse_word("e"))),
                        indicator(u_set(g5y, parse_word("e.e")))));
  }

  TEST_CASE("sibling pieces with one value coarsen to their parent") {
    auto g = fixture("G6");
    DFunction sum = d_add(indicator(u_set(g, parse_word("g1"))),
                          indicator(u_set(g, parse_word("g2"))));
    CHECK(d_equal(sum, indicator(u_vertex(g, "v"))));
    REQUIRE(sum.pieces().size() == 1);
    CHECK(sum.pieces().front().first.prefix.length() == 0);
  }

  TEST_CASE("alpha pushes functions along the action") {
    auto g = fixture("G4");
    DFunction arg = d_mul(indicator(u_set(g, parse_word("f2^-1"))),
                          indicator(u_set(g, parse_word("f4"))));
    DFunction moved = alpha(parse_word("f2"), arg);
    CHECK(d_equal(moved, indicator(u_set(g, parse_word("f2.f4")))));
    CHECK(d_equal(alpha(FreeWord(), arg), arg));

    auto g2 = fixture("G2cohn");
    CHECK_THROWS_AS(alpha(parse_word("e"), indicator(u_vertex(g2, "v"))), DomainViolation);
  }

  TEST_CASE("alpha composes like the action") {
    for (const std::string name : {"G2cohn", "G4", "G6"}) {
      auto g = fixture(name);
      auto words = shape_words(g, 2);
      for (const auto& t : words) {
        for (const auto& s : words) {
          CylinderSet mid = intersect(u_set(g, s), u_set(g, t.inverse()));
          DFunction f = indicator(act(s.inverse(), mid));
          CHECK(d_equal(alpha(t, alpha(s, f)), alpha(t * s, f)));
        }
      }
    }
  }

  TEST_CASE("cylinder printing round-trips") {
    auto g = fixture("G4");
    GenCylinder c{trivial_path(*g, "p"), {"f2", "f4"}};
    CHECK(print_cylinder(c) == "Z(p \\ {f2,f4})");
    CHECK(parse_cylinder(g, print_cylinder(c)) == c);
    GenCylinder path_c{edge_path(*g, "f1"), {}};
    CHECK(print_cylinder(path_c) == "Z(f1)");
    CHECK(parse_cylinder(g, "Z(f1.f2 \\ {f4})").prefix.edges.size() == 2);
    CHECK_THROWS_AS(parse_cylinder(g, "Z(f1 \\ {f1})"), ParseError);
    CHECK_THROWS_AS(parse_cylinder(g, "Z(q)"), UnknownId);

    for (const auto& name : fixture_names()) {
      auto gf = fixture(name);
      for (const auto& a : set_family(gf)) {
        CylinderSet reparsed = parse_cylinder_set(gf, print_cylinder_set(a));
        CHECK(set_equal(reparsed, a));
      }
    }
    CHECK(print_cylinder_set(CylinderSet(g)) == "{}");
    CHECK(parse_cylinder_set(g, "{}").empty());
  }

  TEST_CASE("function printing round-trips") {
    auto g = fixture("G4");
    DFunction f = d_sub(d_scale(Rational(3, 2), indicator(u_vertex(g, "p"))),
                        indicator(u_set(g, parse_word("f2"))));
    std::string text = print_dfunction(f);
    CHECK(d_equal(parse_dfunction(g, text), f));
    CHECK(print_dfunction(DFunction(g)) == "0");
    CHECK(parse_dfunction(g, "0").is_zero());
    CHECK(d_equal(parse_dfunction(g, "1[Z(p)] - 1[Z(f2)]"),
                  d_sub(indicator(u_vertex(g, "p")), indicator(u_set(g, parse_word("f2"))))));
    CHECK(d_equal(parse_dfunction(g, "2 * 1[Z(f4)]"),
                  d_scale(Rational(2), indicator(u_set(g, parse_word("f4"))))));
  }
}
