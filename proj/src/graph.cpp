#include "cohnpath/graph.hpp"

#include <algorithm>
#include <set>

namespace cohnpath {

Graph::Graph(std::vector<std::string> vertices, std::vector<Edge> edges,
             std::vector<std::string> x)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), x_(std::move(x)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw InvalidGraph("duplicate vertex id");
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });
  std::sort(x_.begin(), x_.end());
  if (std::adjacent_find(x_.begin(), x_.end()) != x_.end())
    throw InvalidGraph("duplicate X entry");

  for (const auto& v : vertices_) {
    out_[v];
    in_[v];
  }
  std::set<std::string> edge_ids;
  for (const Edge& e : edges_) {
    if (!edge_ids.insert(e.id).second) throw InvalidGraph("duplicate edge id: " + e.id);
    if (std::binary_search(vertices_.begin(), vertices_.end(), e.id))
      throw InvalidGraph("id used for both a vertex and an edge: " + e.id);
    if (!has_vertex(e.src)) throw UnknownId("edge " + e.id + " has unknown source " + e.src);
    if (!has_vertex(e.rng)) throw UnknownId("edge " + e.id + " has unknown range " + e.rng);
    out_[e.src].push_back(e.id);
    in_[e.rng].push_back(e.id);
  }
  // Out/in lists are already in id order because edges_ was sorted first.
  for (const auto& v : x_) {
    if (!has_vertex(v)) throw UnknownId("X names unknown vertex " + v);
    if (is_sink(v)) throw XNotRegular("X contains the sink " + v);
  }
}

bool Graph::has_vertex(const std::string& v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Graph::has_edge(const std::string& e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e,
                             [](const Edge& a, const std::string& id) { return a.id < id; });
  return it != edges_.end() && it->id == e;
}

const Edge& Graph::edge(const std::string& e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e,
                             [](const Edge& a, const std::string& id) { return a.id < id; });
  if (it == edges_.end() || it->id != e) throw UnknownId("unknown edge " + e);
  return *it;
}

const std::vector<std::string>& Graph::out_edges(const std::string& v) const {
  auto it = out_.find(v);
  if (it == out_.end()) throw UnknownId("unknown vertex " + v);
  return it->second;
}

const std::vector<std::string>& Graph::in_edges(const std::string& v) const {
  auto it = in_.find(v);
  if (it == in_.end()) throw UnknownId("unknown vertex " + v);
  return it->second;
}

bool Graph::in_x(const std::string& v) const {
  if (!has_vertex(v)) throw UnknownId("unknown vertex " + v);
  return std::binary_search(x_.begin(), x_.end(), v);
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.vertices_ != b.vertices_ || a.x_ != b.x_) return false;
  if (a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const Edge &x = a.edges_[i], &y = b.edges_[i];
    if (x.id != y.id || x.src != y.src || x.rng != y.rng) return false;
  }
  return true;
}

Path trivial_path(const Graph& g, const std::string& v) {
  if (!g.has_vertex(v)) throw UnknownId("unknown vertex " + v);
  return Path{v, {}};
}

Path edge_path(const Graph& g, const std::string& e) {
  return Path{g.edge(e).src, {e}};
}

std::string path_rng(const Graph& g, const Path& p) {
  if (p.edges.empty()) return p.base;
  return g.edge(p.edges.back()).rng;
}

Path concat(const Graph& g, const Path& a, const Path& b) {
  if (path_rng(g, a) != b.base)
    throw Error("paths do not compose: " + path_str(a) + " then " + path_str(b));
  Path r = a;
  r.edges.insert(r.edges.end(), b.edges.begin(), b.edges.end());
  return r;
}

Path append_edge(const Graph& g, const Path& p, const std::string& e) {
  if (path_rng(g, p) != g.edge(e).src)
    throw Error("edge " + e + " does not extend path " + path_str(p));
  Path r = p;
  r.edges.push_back(e);
  return r;
}

bool is_prefix(const Path& a, const Path& b) {
  if (a.base != b.base || a.edges.size() > b.edges.size()) return false;
  return std::equal(a.edges.begin(), a.edges.end(), b.edges.begin());
}

Path suffix_after(const Graph& g, const Path& a, const Path& b) {
  if (!is_prefix(a, b)) throw Error("suffix_after: not a prefix");
  Path r{path_rng(g, a), {}};
  r.edges.assign(b.edges.begin() + static_cast<long>(a.edges.size()), b.edges.end());
  return r;
}

int path_compare(const Path& a, const Path& b) {
  if (a.edges < b.edges) return -1;
  if (b.edges < a.edges) return 1;
  if (a.base < b.base) return -1;
  if (b.base < a.base) return 1;
  return 0;
}

std::string path_str(const Path& p) {
  if (p.edges.empty()) return p.base;
  std::string s;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i) s += '.';
    s += p.edges[i];
  }
  return s;
}

std::string cycle_base(const Graph& g, const Cycle& c) {
  if (c.edges.empty()) throw Error("empty cycle");
  return g.edge(c.edges.front()).src;
}

Path cycle_path(const Graph& g, const Cycle& c) {
  Path p = trivial_path(g, cycle_base(g, c));
  for (const auto& e : c.edges) p = append_edge(g, p, e);
  return p;
}

Path cycle_path_from(const Graph& g, const Cycle& c, const std::string& v) {
  std::size_t start = c.edges.size();
  for (std::size_t i = 0; i < c.edges.size(); ++i)
    if (g.edge(c.edges[i]).src == v) start = i;
  if (start == c.edges.size()) throw Error("vertex " + v + " is not on the cycle");
  Path p = trivial_path(g, v);
  for (std::size_t i = 0; i < c.edges.size(); ++i)
    p = append_edge(g, p, c.edges[(start + i) % c.edges.size()]);
  return p;
}

VertexClassification classify_vertices(const Graph& g) {
  VertexClassification c;
  for (const auto& v : g.vertices()) {
    if (g.is_sink(v))
      c.sinks.push_back(v);
    else
      c.regular.push_back(v);
    if (g.in_x(v)) c.x.push_back(v);
    if (g.in_y(v)) c.y.push_back(v);
  }
  return c;
}

std::vector<Path> paths_up_to(const Graph& g, std::size_t n) {
  std::vector<Path> all;
  std::vector<Path> level;
  for (const auto& v : g.vertices()) level.push_back(trivial_path(g, v));
  all.insert(all.end(), level.begin(), level.end());
  for (std::size_t len = 1; len <= n && !level.empty(); ++len) {
    std::vector<Path> next;
    for (const Path& p : level)
      for (const auto& e : g.out_edges(path_rng(g, p))) next.push_back(append_edge(g, p, e));
    std::sort(next.begin(), next.end(),
              [](const Path& a, const Path& b) { return path_compare(a, b) < 0; });
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return all;
}

std::vector<Cycle> exit_free_cycles(const Graph& g) {
  // Restrict to vertices with exactly one out-edge; exit-free cycles are the
  // cycles of the functional graph that restriction induces.
  std::set<std::vector<std::string>> canon;
  std::set<std::string> done;
  for (const auto& start : g.vertices()) {
    if (done.count(start) || g.out_edges(start).size() != 1) continue;
    std::vector<std::string> walk_vertices;
    std::map<std::string, std::size_t> position;
    std::string v = start;
    while (true) {
      if (g.out_edges(v).size() != 1) break;  // escapes: no cycle this way
      auto it = position.find(v);
      if (it != position.end()) {
        // Extract the loop v -> ... -> v.
        std::vector<std::string> cyc;
        for (std::size_t i = it->second; i < walk_vertices.size(); ++i)
          cyc.push_back(g.out_edges(walk_vertices[i])[0]);
        // Canonical rotation: smallest edge id first.
        std::size_t best = 0;
        for (std::size_t i = 1; i < cyc.size(); ++i)
          if (cyc[i] < cyc[best]) best = i;
        std::rotate(cyc.begin(), cyc.begin() + static_cast<long>(best), cyc.end());
        canon.insert(cyc);
        break;
      }
      position[v] = walk_vertices.size();
      walk_vertices.push_back(v);
      done.insert(v);
      v = g.edge(g.out_edges(v)[0]).rng;
    }
  }
  std::vector<Cycle> out;
  for (const auto& edges : canon) out.push_back(Cycle{edges});
  return out;
}

bool condition_L(const Graph& g) { return exit_free_cycles(g).empty(); }

bool relative_condition_L(const Graph& g) {
  for (const Cycle& c : exit_free_cycles(g)) {
    bool has_y_source = false;
    for (const auto& e : c.edges)
      if (g.in_y(g.edge(e).src)) has_y_source = true;
    if (!has_y_source) return false;
  }
  return true;
}

namespace {

std::string decorate(const std::string& id, const std::set<std::string>& taken) {
  std::string d = id + "'";
  while (taken.count(d)) d += "'";
  return d;
}

}  // namespace

Extension extended_graph(const Graph& g) {
  std::set<std::string> taken;
  for (const auto& v : g.vertices()) taken.insert(v);
  for (const auto& e : g.edges()) taken.insert(e.id);

  std::map<std::string, std::string> primed_vertex;
  std::map<std::string, std::string> primed_edge;
  std::vector<std::string> vertices = g.vertices();
  std::vector<Edge> edges = g.edges();
  for (const auto& v : g.vertices()) {
    if (!g.in_y(v)) continue;
    std::string pv = decorate(v, taken);
    taken.insert(pv);
    primed_vertex[v] = pv;
    vertices.push_back(pv);
  }
  for (const auto& e : g.edges()) {
    if (!g.in_y(e.rng)) continue;
    std::string pe = decorate(e.id, taken);
    taken.insert(pe);
    primed_edge[e.id] = pe;
    edges.push_back(Edge{pe, e.src, primed_vertex.at(e.rng)});
  }
  // The distinguished set of the extension is all of its regular vertices.
  Graph no_x(vertices, edges, {});
  std::vector<std::string> x;
  for (const auto& v : no_x.vertices())
    if (no_x.is_regular(v)) x.push_back(v);
  return Extension{Graph(vertices, edges, x), std::move(primed_vertex),
                   std::move(primed_edge)};
}

}  // namespace cohnpath
