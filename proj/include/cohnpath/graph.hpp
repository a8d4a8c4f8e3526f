#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cohnpath/errors.hpp"

namespace cohnpath {

struct Edge {
  std::string id;
  std::string src;
  std::string rng;
};

/// A finite directed graph together with a distinguished set X of regular
/// vertices (the vertices whose summation relation is imposed).  Vertices and
/// edges are identified by arbitrary strings; everything iterates in
/// lexicographic id order, so all downstream computations are deterministic.
///
/// Invariants are checked on construction: ids are unique (and vertex/edge
/// ids do not collide, which keeps the element grammar unambiguous), edge
/// endpoints exist, and X contains only regular vertices (XNotRegular).
class Graph {
 public:
  Graph(std::vector<std::string> vertices, std::vector<Edge> edges,
        std::vector<std::string> x);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& x() const { return x_; }

  bool has_vertex(const std::string& v) const;
  bool has_edge(const std::string& e) const;
  const Edge& edge(const std::string& e) const;

  /// Out-edge ids of v in id order.
  const std::vector<std::string>& out_edges(const std::string& v) const;
  /// In-edge ids of v in id order.
  const std::vector<std::string>& in_edges(const std::string& v) const;

  bool is_sink(const std::string& v) const { return out_edges(v).empty(); }
  bool is_regular(const std::string& v) const { return !out_edges(v).empty(); }
  bool in_x(const std::string& v) const;
  /// Y = regular vertices outside X: their summation relation is withheld.
  bool in_y(const std::string& v) const { return is_regular(v) && !in_x(v); }

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::string> x_;
  std::map<std::string, std::vector<std::string>> out_;
  std::map<std::string, std::vector<std::string>> in_;
};

/// A finite path: `base` is the source vertex; `edges` lists consecutive edge
/// ids.  A path of length 0 is just its base vertex.  For nonempty paths the
/// base always equals the source of the first edge.
struct Path {
  std::string base;
  std::vector<std::string> edges;

  std::size_t length() const { return edges.size(); }
  friend bool operator==(const Path& a, const Path& b) {
    return a.base == b.base && a.edges == b.edges;
  }
};

Path trivial_path(const Graph& g, const std::string& v);
Path edge_path(const Graph& g, const std::string& e);
/// Validates composability and returns the concatenation.
Path concat(const Graph& g, const Path& a, const Path& b);
Path append_edge(const Graph& g, const Path& p, const std::string& e);
std::string path_rng(const Graph& g, const Path& p);
/// True iff a is a prefix of b (same base, edge list prefix).
bool is_prefix(const Path& a, const Path& b);
/// The suffix path such that b = a . suffix (pre: is_prefix(a, b)).
Path suffix_after(const Graph& g, const Path& a, const Path& b);
/// Lexicographic comparison by edge ids; equal edge lists fall back to base.
/// Returns <0, 0, >0.
int path_compare(const Path& a, const Path& b);
/// "v" for trivial paths, else dotted edge ids "e1.e2".
std::string path_str(const Path& p);

/// A cycle in canonical rotation: the lexicographically smallest edge id
/// comes first; each vertex occurs once.  The base is the source of the
/// first edge.
struct Cycle {
  std::vector<std::string> edges;
  friend bool operator==(const Cycle& a, const Cycle& b) { return a.edges == b.edges; }
};

std::string cycle_base(const Graph& g, const Cycle& c);
Path cycle_path(const Graph& g, const Cycle& c);
/// Rotates the cycle so it is based at v (pre: v lies on the cycle).
Path cycle_path_from(const Graph& g, const Cycle& c, const std::string& v);

struct VertexClassification {
  std::vector<std::string> sinks;
  std::vector<std::string> regular;
  std::vector<std::string> x;
  std::vector<std::string> y;
};

VertexClassification classify_vertices(const Graph& g);

/// All paths of length 0..n, each exactly once, ordered by length, then
/// lexicographically (length 0 by vertex id).
std::vector<Path> paths_up_to(const Graph& g, std::size_t n);

/// All cycles without exits, canonically rotated, sorted by edge list.
/// A cycle has no exit iff every vertex on it emits exactly one edge.
std::vector<Cycle> exit_free_cycles(const Graph& g);

/// Every cycle has an exit.
bool condition_L(const Graph& g);

/// Every exit-free cycle contains at least one edge whose source lies in Y.
bool relative_condition_L(const Graph& g);

/// The extension move: adjoin a primed copy v' for every v in Y and a primed
/// edge e' (same source, range v') for every edge e with range v in Y.  The
/// distinguished set of the result is the full set of its regular vertices,
/// so the extension carries the unrelative algebra.
struct Extension {
  Graph graph;
  /// Original Y-vertex id -> primed vertex id.
  std::map<std::string, std::string> primed_vertex;
  /// Original edge id (range in Y) -> primed edge id.
  std::map<std::string, std::string> primed_edge;
};

Extension extended_graph(const Graph& g);

}  // namespace cohnpath
