#include <doctest.h>

#include <algorithm>
#include <set>

#include "cohnpath/graph.hpp"
#include "fixtures.hpp"

using namespace cohnpath;
using cohnpath::testing::fixture;

namespace {

/// Independent path oracle: every sequence of <= n edge ids, kept iff
/// consecutive edges compose.  Quadratic and dumb on purpose.
std::set<std::vector<std::string>> brute_force_paths(const Graph& g, std::size_t n) {
  std::set<std::vector<std::string>> found;
  std::vector<std::vector<std::string>> level{{}};
  for (std::size_t len = 1; len <= n; ++len) {
    std::vector<std::vector<std::string>> next;
    for (const auto& seq : level)
      for (const auto& e : g.edges()) {
        if (!seq.empty() && g.edge(seq.back()).rng != e.src) continue;
        auto longer = seq;
        longer.push_back(e.id);
        next.push_back(longer);
        found.insert(longer);
      }
    level = next;
  }
  return found;
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("construction validates ids and X") {
  CHECK_THROWS_AS(Graph({"v", "v"}, {}, {}), InvalidGraph);
  CHECK_THROWS_AS(Graph({"v"}, {{"e", "v", "v"}, {"e", "v", "v"}}, {}), InvalidGraph);
  CHECK_THROWS_AS(Graph({"v"}, {{"v", "v", "v"}}, {}), InvalidGraph);  // id collision
  CHECK_THROWS_AS(Graph({"v"}, {{"e", "v", "u"}}, {}), UnknownId);
  CHECK_THROWS_AS(Graph({"v"}, {}, {"u"}), UnknownId);
  // X may contain only regular vertices.
  CHECK_THROWS_AS(Graph({"v"}, {}, {"v"}), XNotRegular);
  CHECK_THROWS_AS(Graph({"v", "w"}, {{"e", "v", "w"}}, {"w"}), XNotRegular);
  CHECK_NOTHROW(Graph({"v", "w"}, {{"e", "v", "w"}}, {"v"}));
}

TEST_CASE("classification on the fixtures") {
  auto g2 = fixture("G2");
  auto c2 = classify_vertices(*g2);
  CHECK(c2.sinks == std::vector<std::string>{"w"});
  CHECK(c2.regular == std::vector<std::string>{"v"});
  CHECK(c2.x == std::vector<std::string>{"v"});
  CHECK(c2.y.empty());

  auto g4 = fixture("G4");
  auto c4 = classify_vertices(*g4);
  CHECK(c4.sinks == std::vector<std::string>{"b"});
  CHECK(c4.regular == std::vector<std::string>{"m", "p", "t"});
  CHECK(c4.x == std::vector<std::string>{"m", "t"});
  CHECK(c4.y == std::vector<std::string>{"p"});

  auto g3 = fixture("G3");
  auto c3 = classify_vertices(*g3);
  CHECK(c3.y == std::vector<std::string>{"v", "w"});
  CHECK(c3.x.empty());
}

TEST_CASE("paths_up_to matches the exhaustive oracle") {
  for (const auto& name : cohnpath::testing::fixture_names()) {
    CAPTURE(name);
    auto g = fixture(name);
    for (std::size_t n : {0u, 1u, 2u, 3u}) {
      auto paths = paths_up_to(*g, n);
      // Deduplicated.
      std::set<std::pair<std::string, std::vector<std::string>>> seen;
      for (const auto& p : paths) CHECK(seen.insert({p.base, p.edges}).second);
      // Length 0: exactly the vertices.  Longer: exactly the oracle's set.
      auto oracle = brute_force_paths(*g, n);
      std::size_t nontrivial = 0;
      for (const auto& p : paths) {
        if (p.edges.empty()) {
          CHECK(g->has_vertex(p.base));
        } else {
          ++nontrivial;
          CHECK(oracle.count(p.edges));
          CHECK(p.base == g->edge(p.edges.front()).src);
        }
      }
      CHECK(nontrivial == oracle.size());
      CHECK(paths.size() - nontrivial == g->vertices().size());
      // Ordered: length-major, then lexicographic.
      for (std::size_t i = 1; i < paths.size(); ++i) {
        const Path &a = paths[i - 1], &b = paths[i];
        bool ordered = a.length() < b.length() ||
                       (a.length() == b.length() && path_compare(a, b) < 0);
        CHECK(ordered);
      }
    }
  }
}

TEST_CASE("paths_up_to on the single-edge graph") {
  auto g = fixture("G2");
  auto paths = paths_up_to(*g, 1);
  REQUIRE(paths.size() == 3);
  CHECK(paths[0] == Path{"v", {}});
  CHECK(paths[1] == Path{"w", {}});
  CHECK(paths[2] == Path{"v", {"e"}});
  // No paths of length 2 exist.
  CHECK(paths_up_to(*g, 5).size() == 3);
}

TEST_CASE("exit-free cycles") {
  CHECK(exit_free_cycles(*fixture("G1")).empty());
  CHECK(exit_free_cycles(*fixture("G2")).empty());
  CHECK(exit_free_cycles(*fixture("G4")).empty());  // the loop at p has exit f4
  CHECK(exit_free_cycles(*fixture("G6")).empty());  // two loops exit each other

  auto c3 = exit_free_cycles(*fixture("G3"));
  REQUIRE(c3.size() == 1);
  CHECK(c3[0].edges == std::vector<std::string>{"e1", "e2"});

  auto c5 = exit_free_cycles(*fixture("G5p"));
  REQUIRE(c5.size() == 1);
  CHECK(c5[0].edges == std::vector<std::string>{"e"});
}

TEST_CASE("condition (L) and its relative form") {
  struct Row {
    const char* name;
    bool plain, relative;
  };
  // relative (L): every exit-free cycle has an edge-source in Y.
  for (Row r : {Row{"G1", true, true}, Row{"G2", true, true}, Row{"G3", false, true},
                Row{"G4", true, true}, Row{"G5p", false, false}, Row{"G5pp", false, true},
                Row{"G6", true, true}}) {
    CAPTURE(r.name);
    auto g = fixture(r.name);
    CHECK(condition_L(*g) == r.plain);
    CHECK(relative_condition_L(*g) == r.relative);
  }
}

TEST_CASE("relative condition (L) of the base equals condition (L) of the extension") {
  for (const auto& name : cohnpath::testing::fixture_names()) {
    CAPTURE(name);
    auto g = fixture(name);
    CHECK(relative_condition_L(*g) == condition_L(extended_graph(*g).graph));
  }
}

TEST_CASE("extension of the withheld loop") {
  auto g = fixture("G5pp");
  auto ext = extended_graph(*g);
  CHECK(ext.graph.vertices() == std::vector<std::string>{"v", "v'"});
  REQUIRE(ext.graph.edges().size() == 2);
  CHECK(ext.graph.edge("e").src == "v");
  CHECK(ext.graph.edge("e").rng == "v");
  CHECK(ext.graph.edge("e'").src == "v");
  CHECK(ext.graph.edge("e'").rng == "v'");
  // The extension carries the full set of its regular vertices.
  CHECK(ext.graph.x() == std::vector<std::string>{"v"});
  CHECK(ext.primed_vertex.at("v") == "v'");
  CHECK(ext.primed_edge.at("e") == "e'");
}

TEST_CASE("extension leaves X-complete graphs untouched") {
  for (const char* name : {"G2", "G6"}) {
    CAPTURE(name);
    auto g = fixture(name);
    auto ext = extended_graph(*g);
    CHECK(ext.graph == *g);
    CHECK(ext.primed_vertex.empty());
    CHECK(ext.primed_edge.empty());
  }
}

TEST_CASE("extension of the two-source graph") {
  auto ext = extended_graph(*fixture("G4"));
  // Y = {p}: one primed vertex, primed copies of the three edges into p.
  CHECK(ext.graph.vertices() ==
        std::vector<std::string>{"b", "m", "p", "p'", "t"});
  CHECK(ext.primed_edge.size() == 3);
  CHECK(ext.graph.edge("f2'").src == "p");
  CHECK(ext.graph.edge("f2'").rng == "p'");
  // p' is a sink, so X of the extension is {m, p, t}.
  CHECK(ext.graph.x() == std::vector<std::string>{"m", "p", "t"});
}

TEST_CASE("cycle helpers") {
  auto g = fixture("G3");
  Cycle c{{"e1", "e2"}};
  CHECK(cycle_base(*g, c) == "w");
  CHECK(cycle_path(*g, c) == Path{"w", {"e1", "e2"}});
  CHECK(cycle_path_from(*g, c, "v") == Path{"v", {"e2", "e1"}});
  CHECK_THROWS_AS(cycle_path_from(*g, c, "nope"), Error);
}

}  // TEST_SUITE
