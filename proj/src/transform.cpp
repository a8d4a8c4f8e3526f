#include "cohnpath/transform.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "cohnpath/dsl.hpp"
#include "cohnpath/linalg.hpp"

namespace cohnpath {

std::string CohnTarget::str(const Elem& x) { return print_element(x); }

GeneratorAssignment<CohnTarget> identity_assignment(const GraphPtr& g) {
  GeneratorAssignment<CohnTarget> a{g, zero_element(g), {}, {}, {}};
  for (const auto& v : g->vertices()) a.vertex_image.emplace(v, generator(g, v));
  for (const auto& ed : g->edges()) {
    a.edge_image.emplace(ed.id, generator(g, ed.id));
    a.ghost_image.emplace(ed.id, generator(g, ed.id, true));
  }
  return a;
}

GeneratorAssignment<CohnTarget> renaming_assignment(const GraphPtr& source,
                                                    const GraphPtr& target) {
  if (source->vertices() != target->vertices())
    throw GraphMismatch("renaming assignment needs identical vertex sets");
  for (const auto& ed : source->edges()) {
    if (!target->has_edge(ed.id)) throw GraphMismatch("target graph is missing edge " + ed.id);
    const Edge& td = target->edge(ed.id);
    if (td.src != ed.src || td.rng != ed.rng)
      throw GraphMismatch("edge " + ed.id + " has different endpoints in the target graph");
  }
  if (source->edges().size() != target->edges().size())
    throw GraphMismatch("target graph has extra edges");
  GeneratorAssignment<CohnTarget> a{source, zero_element(target), {}, {}, {}};
  for (const auto& v : source->vertices()) a.vertex_image.emplace(v, generator(target, v));
  for (const auto& ed : source->edges()) {
    a.edge_image.emplace(ed.id, generator(target, ed.id));
    a.ghost_image.emplace(ed.id, generator(target, ed.id, true));
  }
  return a;
}

ExtensionIso make_extension_iso(const GraphPtr& base) {
  Extension ext = extended_graph(*base);
  return ExtensionIso{base, std::make_shared<const Graph>(std::move(ext.graph)),
                      std::move(ext.primed_vertex), std::move(ext.primed_edge)};
}

namespace {

GeneratorAssignment<CohnTarget> phi_assignment(const ExtensionIso& iso) {
  const GraphPtr& e = iso.extended;
  GeneratorAssignment<CohnTarget> a{iso.base, zero_element(e), {}, {}, {}};
  for (const auto& v : iso.base->vertices()) {
    AlgebraElement img = generator(e, v);
    auto it = iso.primed_vertex.find(v);
    if (it != iso.primed_vertex.end()) img = add(img, generator(e, it->second));
    a.vertex_image.emplace(v, std::move(img));
  }
  for (const auto& ed : iso.base->edges()) {
    AlgebraElement img = generator(e, ed.id);
    auto it = iso.primed_edge.find(ed.id);
    if (it != iso.primed_edge.end()) img = add(img, generator(e, it->second));
    a.ghost_image.emplace(ed.id, star(img));
    a.edge_image.emplace(ed.id, std::move(img));
  }
  return a;
}

GeneratorAssignment<CohnTarget> psi_assignment(const ExtensionIso& iso) {
  const GraphPtr& b = iso.base;
  auto range_sum = [&b](const std::string& v) {
    AlgebraElement sum = zero_element(b);
    for (const auto& f : b->out_edges(v))
      sum = add(sum, multiply(generator(b, f), generator(b, f, true)));
    return sum;
  };
  GeneratorAssignment<CohnTarget> a{iso.extended, zero_element(b), {}, {}, {}};
  for (const auto& v : b->vertices())
    a.vertex_image.emplace(v, b->in_y(v) ? range_sum(v) : generator(b, v));
  for (const auto& [v, vp] : iso.primed_vertex) a.vertex_image.emplace(vp, gap_element(b, v));
  for (const auto& ed : b->edges()) {
    AlgebraElement img = generator(b, ed.id);
    if (b->in_y(ed.rng)) img = multiply(img, range_sum(ed.rng));
    a.ghost_image.emplace(ed.id, star(img));
    a.edge_image.emplace(ed.id, std::move(img));
  }
  for (const auto& [eid, ep] : iso.primed_edge) {
    AlgebraElement img =
        multiply(generator(b, eid), gap_element(b, b->edge(eid).rng));
    a.ghost_image.emplace(ep, star(img));
    a.edge_image.emplace(ep, std::move(img));
  }
  return a;
}

}  // namespace

AlgebraElement phi(const ExtensionIso& iso, const AlgebraElement& x) {
  return evaluate(phi_assignment(iso), x);
}

AlgebraElement psi(const ExtensionIso& iso, const AlgebraElement& x) {
  if (!(*x.graph() == *iso.extended))
    throw NotExtendedGraph("psi expects an element over the extended graph");
  return evaluate(psi_assignment(iso), x);
}

std::string shape_name(ReductionShape s) {
  switch (s) {
    case ReductionShape::VertexForm: return "VertexForm";
    case ReductionShape::GapForm: return "GapForm";
    case ReductionShape::CornerForm: return "CornerForm";
  }
  throw std::logic_error("bad shape");
}

namespace {

/// Deterministic bookkeeping around the two-phase rewrite: y always equals
/// mu* x eta for the original x, and every multiplier choice is canonical
/// (id order), so reruns reproduce the outcome bit for bit.
class Reducer {
 public:
  explicit Reducer(const AlgebraElement& x) : g_(x.graph()), x_(x), y_(x) {}

  ReductionOutcome run() {
    if (y_.is_zero()) throw ZeroElement("cannot reduce the zero element");
    const std::size_t cap = y_.terms().size() + 4;
    if (auto gap = ghost_phase()) return finish(*gap);
    for (std::size_t round = 0; round <= cap; ++round) {
      const TermMap& terms = y_.terms();
      if (terms.size() == 1) {
        Path alpha = terms.begin()->first.alpha;
        if (alpha.length() > 0) left_star(alpha);
        const auto& [mv, kv] = *y_.terms().begin();
        return finish(vertex_outcome(kv, mv.alpha.base));
      }
      auto tied = find_tied_pair();
      if (tied) {
        auto [ai, aj] = *tied;
        if (ai.base != aj.base) {
          left_vertex(ai.base);
        } else {
          std::size_t d = 0;
          while (d < ai.length() && ai.edges[d] == aj.edges[d]) ++d;
          Path split{ai.base, {ai.edges.begin(), ai.edges.begin() + d + 1}};
          left_star(split);
        }
        if (auto gap = ghost_phase()) return finish(*gap);
        continue;
      }
      // distinct lengths: collapse by the shortest path, leaving a vertex
      // multiple plus closed paths at its range
      Path p1 = terms.begin()->first.alpha;
      left_star(p1);
      if (y_.terms().size() > 1) return finish(dichotomy());
    }
    throw std::logic_error("reduction failed to terminate");
  }

 private:
  // -- multiplier bookkeeping -------------------------------------------

  void right_edge(const std::string& e) {
    y_ = multiply(y_, generator(g_, e));
    eta_ = append_edge(*g_, *eta_, e);
  }

  void right_path(const Path& p) {
    y_ = multiply(y_, path_element(g_, p));
    eta_ = concat(*g_, *eta_, p);
  }

  void left_star(const Path& p) {
    y_ = multiply(star(path_element(g_, p)), y_);
    mu_ = mu_ ? concat(*g_, *mu_, p) : p;
  }

  void left_vertex(const std::string& s) {
    if (mu_) throw std::logic_error("vertex cut with a left multiplier already fixed");
    y_ = multiply(generator(g_, s), y_);
    mu_ = trivial_path(*g_, s);
  }

  // -- phase one: clear ghost edges -------------------------------------

  std::optional<ReductionOutcome> ghost_phase() {
    if (!eta_) {
      for (const auto& v : g_->vertices()) {
        AlgebraElement yv = multiply(y_, generator(g_, v));
        if (yv.is_zero()) continue;
        y_ = std::move(yv);
        eta_ = trivial_path(*g_, v);
        break;
      }
      if (!eta_) throw std::logic_error("nonzero element with no vertex support");
    }
    for (;;) {
      std::set<std::string> firsts;
      for (const auto& [m, k] : y_.terms())
        if (m.beta.length() > 0) firsts.insert(m.beta.edges[0]);
      if (firsts.empty()) return std::nullopt;
      bool advanced = false;
      for (const auto& e : firsts) {
        AlgebraElement ye = multiply(y_, generator(g_, e));
        if (ye.is_zero()) continue;
        y_ = std::move(ye);
        eta_ = append_edge(*g_, *eta_, e);
        advanced = true;
        break;
      }
      if (advanced) continue;
      const std::string v = path_rng(*g_, *eta_);
      const auto& out = g_->out_edges(v);
      if (firsts.size() == out.size()) {
        if (!g_->in_y(v)) throw std::logic_error("full ghost fan at a vertex outside Y");
        return gap_outcome(v);
      }
      for (const auto& e : out)
        if (!firsts.count(e)) {
          right_edge(e);
          advanced = true;
          break;
        }
      if (!advanced || y_.is_zero())
        throw std::logic_error("ghost clearing lost the element");
    }
  }

  /// Here y = (sum over beta-trivial terms) * gap(v); the longest surviving
  /// path collapses the factor from the left.
  ReductionOutcome gap_outcome(const std::string& v) {
    const Path* best = nullptr;
    Rational k(0);
    for (const auto& [m, c] : y_.terms()) {
      if (m.beta.length() > 0) continue;
      if (!best || m.alpha.length() > best->length()) {
        best = &m.alpha;
        k = c;
      }
    }
    if (!best) throw std::logic_error("gap fan without a plain path part");
    Path p = *best;
    mu_ = mu_ ? concat(*g_, *mu_, p) : p;
    ReductionOutcome out{ReductionShape::GapForm,    *mu_, *eta_,
                         scalar_mul(k, gap_element(g_, v)), k,    v,
                         std::nullopt};
    return out;
  }

  // -- phase two helpers -------------------------------------------------

  std::optional<std::pair<Path, Path>> find_tied_pair() const {
    const TermMap& terms = y_.terms();
    auto it = terms.begin();
    for (auto nx = std::next(it); nx != terms.end(); ++it, ++nx)
      if (it->first.alpha.length() == nx->first.alpha.length())
        return std::make_pair(it->first.alpha, nx->first.alpha);
    return std::nullopt;
  }

  ReductionOutcome vertex_outcome(const Rational& k, const std::string& u) {
    if (!mu_) mu_ = trivial_path(*g_, u);
    AlgebraElement value = scalar_mul(k, generator(g_, u));
    if (!equal(y_, value)) throw std::logic_error("vertex form mismatch");
    return ReductionOutcome{ReductionShape::VertexForm, *mu_, *eta_, value, k, u,
                            std::nullopt};
  }

  /// y = k1 * u + closed paths at u of distinct positive lengths.  Either an
  /// exit-free cycle is reachable from u (conjugate into its corner) or a
  /// finite walk escapes every periodic continuation (collapse to a vertex).
  ReductionOutcome dichotomy() {
    const TermMap& terms = y_.terms();
    const Path& first = terms.begin()->first.alpha;
    if (first.length() != 0) throw std::logic_error("dichotomy without a vertex term");
    const std::string u = first.base;
    const Rational k1 = terms.begin()->second;
    std::vector<Path> gammas;
    for (auto it = std::next(terms.begin()); it != terms.end(); ++it)
      gammas.push_back(it->first.alpha);

    if (auto hit = reach_exit_free(u)) {
      auto [rho, cyc] = *hit;
      const std::string w = path_rng(*g_, rho);
      left_star(rho);
      right_path(rho);
      Cycle based{cycle_path_from(*g_, cyc, w).edges};
      if (!equal(graded_component(y_, 0), scalar_mul(k1, generator(g_, w))))
        throw std::logic_error("corner form lost its degree zero part");
      return ReductionOutcome{ReductionShape::CornerForm, *mu_, *eta_, y_, k1, w, based};
    }

    Path tau = escape_walk(u, gammas);
    left_star(tau);
    right_path(tau);
    return vertex_outcome(k1, path_rng(*g_, tau));
  }

  /// Shortest path (BFS, edges in id order) from u to a vertex on some
  /// exit-free cycle, if one is reachable.
  std::optional<std::pair<Path, Cycle>> reach_exit_free(const std::string& u) const {
    std::map<std::string, Cycle> on_cycle;
    for (const auto& c : exit_free_cycles(*g_)) {
      std::string v = cycle_base(*g_, c);
      for (const auto& e : cycle_path_from(*g_, c, v).edges) {
        on_cycle.emplace(g_->edge(e).src, c);
      }
    }
    std::map<std::string, std::pair<std::string, std::string>> parent;  // v -> (prev, edge)
    std::deque<std::string> queue{u};
    std::set<std::string> seen{u};
    while (!queue.empty()) {
      std::string v = queue.front();
      queue.pop_front();
      auto hit = on_cycle.find(v);
      if (hit != on_cycle.end()) {
        std::vector<std::string> edges;
        for (std::string c = v; c != u;) {
          auto& [prev, e] = parent.at(c);
          edges.push_back(e);
          c = prev;
        }
        std::reverse(edges.begin(), edges.end());
        return std::make_pair(Path{u, std::move(edges)}, hit->second);
      }
      for (const auto& e : g_->out_edges(v)) {
        const std::string& w = g_->edge(e).rng;
        if (!seen.insert(w).second) continue;
        parent.emplace(w, std::make_pair(v, e));
        queue.push_back(w);
      }
    }
    return std::nullopt;
  }

  /// A walk from u that is a prefix of no gamma^infinity.  Exists because no
  /// exit-free cycle is reachable: a step that cannot yet escape or split the
  /// active set only happens at an out-degree-one vertex, and such runs cannot
  /// close up into a cycle forever.
  Path escape_walk(const std::string& u, const std::vector<Path>& gammas) const {
    std::vector<std::size_t> active(gammas.size());
    for (std::size_t i = 0; i < gammas.size(); ++i) active[i] = i;
    Path tau = trivial_path(*g_, u);
    std::size_t total = 0;
    for (const auto& p : gammas) total += p.length();
    const std::size_t cap = (gammas.size() + 2) * (g_->vertices().size() + total + 2);
    while (!active.empty()) {
      if (tau.length() > cap) throw std::logic_error("escape walk failed to separate");
      const std::size_t pos = tau.length();
      std::set<std::string> forced;
      for (std::size_t i : active)
        forced.insert(gammas[i].edges[pos % gammas[i].length()]);
      const std::string cur = path_rng(*g_, tau);
      const std::string* pick = nullptr;
      for (const auto& e : g_->out_edges(cur))
        if (!forced.count(e)) {
          pick = &e;
          break;
        }
      if (pick) {
        tau = append_edge(*g_, tau, *pick);
        active.clear();
        break;
      }
      const std::string step = *g_->out_edges(cur).begin();
      std::vector<std::size_t> next;
      for (std::size_t i : active)
        if (gammas[i].edges[pos % gammas[i].length()] == step) next.push_back(i);
      active = std::move(next);
      tau = append_edge(*g_, tau, step);
    }
    return tau;
  }

  /// Final gate: the recorded identity must replay against the original x.
  ReductionOutcome finish(ReductionOutcome out) {
    if (auto bad = replay_failure(x_, out))
      throw std::logic_error("reduction postcondition failed: " + *bad);
    return out;
  }

  GraphPtr g_;
  AlgebraElement x_;
  AlgebraElement y_;
  std::optional<Path> mu_;
  std::optional<Path> eta_;
};

}  // namespace

ReductionOutcome reduce(const AlgebraElement& x) { return Reducer(x).run(); }

ReductionOutcome reduce_homogeneous(const AlgebraElement& x) {
  if (x.is_zero()) throw ZeroElement("cannot reduce the zero element");
  if (!is_homogeneous(x)) throw NotHomogeneous("input is not homogeneous");
  ReductionOutcome out = Reducer(x).run();
  if (out.shape == ReductionShape::CornerForm)
    throw std::logic_error("homogeneous input produced a corner form");
  return out;
}

std::optional<std::string> replay_failure(const AlgebraElement& x,
                                          const ReductionOutcome& out) {
  const GraphPtr& g = x.graph();
  try {
    AlgebraElement lhs =
        multiply(multiply(star(path_element(g, out.mu)), x), path_element(g, out.eta));
    if (!equal(lhs, out.value)) return "mu* x eta is not the recorded value";
    if (out.value.is_zero()) return "recorded value is zero";
    switch (out.shape) {
      case ReductionShape::VertexForm: {
        if (out.k == Rational(0)) return "vertex form with zero coefficient";
        if (!equal(out.value, scalar_mul(out.k, generator(g, out.vertex))))
          return "value is not the stated vertex multiple";
        break;
      }
      case ReductionShape::GapForm: {
        if (out.k == Rational(0)) return "gap form with zero coefficient";
        if (!g->in_y(out.vertex)) return "gap form at a vertex outside Y";
        if (!equal(out.value, scalar_mul(out.k, gap_element(g, out.vertex))))
          return "value is not the stated gap multiple";
        break;
      }
      case ReductionShape::CornerForm: {
        if (!out.corner_cycle) return "corner form without a cycle";
        CornerDescriptor corner(*g, *out.corner_cycle);
        if (corner.base() != out.vertex) return "corner cycle is not based at the vertex";
        std::size_t depth = 0;
        for (const auto& [m, c] : out.value.terms()) {
          if (m.alpha.base != out.vertex || m.beta.base != out.vertex)
            return "value has a monomial outside the corner";
          depth = std::max({depth, m.alpha.length(), m.beta.length()});
        }
        std::size_t n = out.corner_cycle->edges.size();
        std::size_t pow = depth / n + 1;
        auto span = corner_spanning_monomials(g, corner, pow, pow);
        std::map<Monomial, std::size_t, MonomialLess> coord;
        auto vec = [&coord](const AlgebraElement& e) {
          std::vector<Rational> v(coord.size());
          for (const auto& [m, c] : e.terms()) v[coord.at(m)] = c;
          return v;
        };
        for (const auto& s : span)
          for (const auto& [m, c] : s.terms()) coord.emplace(m, coord.size());
        for (const auto& [m, c] : out.value.terms())
          if (!coord.count(m)) return "value is outside the corner span";
        RowSpace rows(coord.size());
        for (const auto& s : span) rows.insert(vec(s));
        if (!rows.contains(vec(out.value))) return "value is outside the corner span";
        if (!equal(graded_component(out.value, 0),
                   scalar_mul(out.k, generator(g, out.vertex))))
          return "degree zero part is not the stated vertex multiple";
        break;
      }
    }
  } catch (const Error& e) {
    return std::string("replay raised: ") + e.what();
  }
  return std::nullopt;
}

std::string certificate_hypothesis_witness(const AlgebraElement& kernel_element) {
  return print_element(kernel_element);
}

std::string Certificate::text() const {
  std::string s;
  switch (verdict) {
    case CertificateVerdict::Injective: s = "INJECTIVE"; break;
    case CertificateVerdict::RelationViolation: s = "RELATIONS VIOLATED"; break;
    case CertificateVerdict::WitnessFailure: s = "NOT INJECTIVE"; break;
    case CertificateVerdict::ConditionLFails: s = "CONDITION (L) FAILS"; break;
    case CertificateVerdict::RelativeConditionLFails:
      s = "RELATIVE CONDITION (L) FAILS";
      break;
  }
  if (!detail.empty()) s += "\n  " + detail;
  for (const auto& line : lines) {
    s += "\n  " + line.name + ": " + (line.pass ? "PASS" : "FAIL");
    if (!line.pass) s += "  [kernel witness: " + line.witness + "]";
  }
  return s;
}

}  // namespace cohnpath
