#include "cohnpath/branching.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

#include "cohnpath/dsl.hpp"
#include "cohnpath/linalg.hpp"

namespace cohnpath {

namespace {

void require_same(const GraphPtr& a, const GraphPtr& b) {
  if (a == b) return;
  if (a && b && *a == *b) return;
  throw GraphMismatch("operands live over different graphs");
}

}  // namespace

ModFunction::ModFunction(std::vector<std::pair<Interval, Rational>> pieces) {
  std::erase_if(pieces, [](const auto& p) { return p.first.empty() || p.second.is_zero(); });
  if (pieces.empty()) return;
  // Cut the line at every endpoint and total each elementary segment; this
  // makes overlapping input accumulate additively and yields a canonical
  // sorted disjoint form in one pass.
  std::vector<QuadScalar> cuts;
  for (const auto& [iv, k] : pieces) {
    cuts.push_back(iv.l);
    cuts.push_back(iv.r);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Interval seg{cuts[i], cuts[i + 1]};
    Rational total;
    for (const auto& [iv, k] : pieces)
      if (iv.l <= seg.l && seg.r <= iv.r) total += k;
    if (total.is_zero()) continue;
    if (!pieces_.empty() && pieces_.back().first.r == seg.l &&
        pieces_.back().second == total) {
      pieces_.back().first.r = seg.r;  // merge adjacent equal-valued pieces
    } else {
      pieces_.emplace_back(seg, total);
    }
  }
}

Rational ModFunction::value_at(const QuadScalar& x) const {
  for (const auto& [iv, k] : pieces_) {
    if (iv.contains(x)) return k;
    if (x < iv.l) break;
  }
  return Rational(0);
}

IntervalSet ModFunction::support() const {
  std::vector<Interval> out;
  out.reserve(pieces_.size());
  for (const auto& [iv, k] : pieces_) out.push_back(iv);
  return IntervalSet(std::move(out));
}

ModFunction mf_indicator(const IntervalSet& s) {
  std::vector<std::pair<Interval, Rational>> pieces;
  for (const auto& iv : s.pieces()) pieces.emplace_back(iv, Rational(1));
  return ModFunction(std::move(pieces));
}

ModFunction mf_add(const ModFunction& x, const ModFunction& y) {
  auto pieces = x.pieces();
  pieces.insert(pieces.end(), y.pieces().begin(), y.pieces().end());
  return ModFunction(std::move(pieces));
}

ModFunction mf_sub(const ModFunction& x, const ModFunction& y) {
  return mf_add(x, mf_scale(Rational(-1), y));
}

ModFunction mf_scale(const Rational& k, const ModFunction& x) {
  auto pieces = x.pieces();
  for (auto& p : pieces) p.second *= k;
  return ModFunction(std::move(pieces));
}

ModFunction mf_restrict(const ModFunction& x, const IntervalSet& s) {
  std::vector<std::pair<Interval, Rational>> out;
  for (const auto& [iv, k] : x.pieces()) {
    const IntervalSet cut = iv_intersect(IntervalSet(iv), s);
    for (const auto& piece : cut.pieces()) out.emplace_back(piece, k);
  }
  return ModFunction(std::move(out));
}

ModFunction mf_compose(const ModFunction& x, const PAMap& f) {
  std::vector<std::pair<Interval, Rational>> out;
  for (const auto& p : f.pieces()) {
    const Interval im = p.image();
    for (const auto& [iv, k] : x.pieces()) {
      const Interval hit{std::max(im.l, iv.l), std::min(im.r, iv.r)};
      if (hit.empty()) continue;
      out.emplace_back(
          Interval{(hit.l - p.offset) / p.slope, (hit.r - p.offset) / p.slope}, k);
    }
  }
  return ModFunction(std::move(out));
}

std::string print_mod_function(const ModFunction& x) {
  if (x.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [iv, k] : x.pieces()) {
    if (!first) out << " + ";
    first = false;
    if (k != Rational(1)) out << k.str() << " * ";
    out << "1[" << print_interval(iv) << "]";
  }
  return out.str();
}

const IntervalSet& BranchingSystem::d_of(const std::string& v) const {
  static const IntervalSet empty;
  const auto it = d.find(v);
  return it == d.end() ? empty : it->second;
}

const IntervalSet& BranchingSystem::r_of(const std::string& e) const {
  static const IntervalSet empty;
  const auto it = r.find(e);
  return it == r.end() ? empty : it->second;
}

const PAMap& BranchingSystem::f_of(const std::string& e) const {
  const auto it = f.find(e);
  if (it == f.end()) throw UnknownId("no interval map for edge " + e);
  return it->second;
}

namespace {

/// Shared interval layout of both builders: D_v = [i-1, i) in vertex id
/// order, split evenly among the out-edges with one spare piece at the
/// right end when the vertex is regular but not in X.
struct Layout {
  std::map<std::string, Interval> d;
  std::map<std::string, Interval> r;
};

Layout make_layout(const Graph& g) {
  Layout out;
  long index = 0;
  for (const auto& v : g.vertices()) {
    const Interval dv{QuadScalar(index), QuadScalar(index + 1)};
    out.d.emplace(v, dv);
    ++index;
    const auto& edges = g.out_edges(v);
    if (edges.empty()) continue;
    const std::size_t cells = g.in_x(v) ? edges.size() : edges.size() + 1;
    const QuadScalar width = (dv.r - dv.l) / QuadScalar(static_cast<long>(cells));
    QuadScalar left = dv.l;
    for (const auto& e : edges) {
      out.r.emplace(e, Interval{left, left + width});
      left += width;
    }
  }
  return out;
}

BranchingSystem from_layout(const GraphPtr& g, const Layout& layout,
                            const std::function<PAMap(const Interval&, const Interval&)>& mk) {
  BranchingSystem sys;
  sys.graph = g;
  std::vector<Interval> all;
  for (const auto& [v, iv] : layout.d) {
    sys.d.emplace(v, IntervalSet(iv));
    all.push_back(iv);
  }
  sys.space = IntervalSet(std::move(all));
  for (const auto& [e, iv] : layout.r) {
    sys.r.emplace(e, IntervalSet(iv));
    sys.f.emplace(e, mk(layout.d.at(g->edge(e).rng), iv));
  }
  return sys;
}

}  // namespace

BranchingSystem build_standard_system(const GraphPtr& g) {
  return from_layout(g, make_layout(*g), [](const Interval& dom, const Interval& ran) {
    return affine_between(dom, ran);
  });
}

BranchingSystem build_rotation_system(const GraphPtr& g) {
  const QuadScalar theta = sqrt2() - QuadScalar(1);
  return from_layout(g, make_layout(*g), [&](const Interval& dom, const Interval& ran) {
    // Conjugate the rotation x -> x + theta (mod 1) through the affine
    // charts dom -> [0,1) and [0,1) -> ran.  The wrap point splits dom in
    // two; both branches share the slope of the direct affine bijection.
    const QuadScalar slope = (ran.r - ran.l) / (dom.r - dom.l);
    const QuadScalar wrap = dom.l + (QuadScalar(1) - theta) * (dom.r - dom.l);
    const QuadScalar base = ran.l - slope * dom.l;
    const QuadScalar lift = (ran.r - ran.l) * theta;
    return PAMap(IntervalSet(dom),
                 {{{dom.l, wrap}, slope, base + lift},
                  {{wrap, dom.r}, slope, base + lift - (ran.r - ran.l)}});
  });
}

std::string AxiomReport::text() const {
  if (ok) return "AXIOMS OK (1-5 hold)";
  return "AXIOM " + std::to_string(axiom) + " VIOLATED: " + witness;
}

AxiomReport check_axioms(const BranchingSystem& sys, const GraphPtr& g) {
  require_same(sys.graph, g);
  const auto fail = [](int axiom, std::string witness) {
    return AxiomReport{false, axiom, std::move(witness)};
  };
  const auto& edges = g->edges();
  const auto& vertices = g->vertices();
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = i + 1; j < edges.size(); ++j)
      if (!iv_intersect(sys.r_of(edges[i].id), sys.r_of(edges[j].id)).is_empty())
        return fail(1, "R_" + edges[i].id + " meets R_" + edges[j].id);
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (!iv_intersect(sys.d_of(vertices[i]), sys.d_of(vertices[j])).is_empty())
        return fail(2, "D_" + vertices[i] + " meets D_" + vertices[j]);
  for (const auto& e : edges)
    if (!iv_subset(sys.r_of(e.id), sys.d_of(e.src)))
      return fail(3, "R_" + e.id + " is not contained in D_" + e.src);
  for (const auto& v : vertices) {
    if (!g->in_x(v)) continue;
    IntervalSet covered;
    for (const auto& e : g->out_edges(v)) covered = iv_union(covered, sys.r_of(e));
    if (covered != sys.d_of(v))
      return fail(4, "D_" + v + " differs from the union of its edge ranges");
  }
  for (const auto& e : edges) {
    const auto it = sys.f.find(e.id);
    if (it == sys.f.end()) return fail(5, "no interval map for edge " + e.id);
    if (it->second.domain() != sys.d_of(e.rng))
      return fail(5, "f_" + e.id + " is not defined on all of D_" + e.rng);
    if (it->second.range() != sys.r_of(e.id))
      return fail(5, "f_" + e.id + " is not onto R_" + e.id);
  }
  return {};
}

namespace {

ModFunction apply_edge(const BranchingSystem& sys, const std::string& e,
                       const ModFunction& phi) {
  return mf_restrict(mf_compose(phi, sys.f_of(e).inverse()), sys.r_of(e));
}

ModFunction apply_ghost(const BranchingSystem& sys, const Graph& g, const std::string& e,
                        const ModFunction& phi) {
  return mf_restrict(mf_compose(phi, sys.f_of(e)), sys.d_of(g.edge(e).rng));
}

}  // namespace

ModFunction rep_apply(const BranchingSystem& sys, const AlgebraElement& x,
                      const ModFunction& phi) {
  require_same(sys.graph, x.graph());
  const Graph& g = *sys.graph;
  ModFunction result;
  for (const auto& [m, k] : x.terms()) {
    ModFunction cur = phi;
    for (const auto& e : m.beta.edges) cur = apply_ghost(sys, g, e, cur);
    cur = mf_restrict(cur, sys.d_of(path_rng(g, m.alpha)));
    for (auto it = m.alpha.edges.rbegin(); it != m.alpha.edges.rend(); ++it)
      cur = apply_edge(sys, *it, cur);
    result = mf_add(result, mf_scale(k, cur));
  }
  return result;
}

std::string FaithfulnessVerdict::text() const {
  if (faithful) return "FAITHFUL (conditions 1-3 hold)";
  return "NOT FAITHFUL: condition " + std::to_string(condition) + " fails (" + witness + ")";
}

namespace {

/// The composed cycle map f_{e_1} o ... o f_{e_n}.
PAMap cycle_map(const BranchingSystem& sys, const Cycle& c) {
  PAMap out = sys.f_of(c.edges.back());
  for (auto it = std::next(c.edges.rbegin()); it != c.edges.rend(); ++it)
    out = pa_compose(sys.f_of(*it), out);
  return out;
}

/// A point of `rem` that avoids the finitely many listed points; `rem` must
/// be nonempty.
QuadScalar pick_avoiding(const IntervalSet& rem, const std::vector<QuadScalar>& avoid) {
  const Interval& iv = rem.pieces().front();
  std::vector<QuadScalar> inside;
  for (const auto& p : avoid)
    if (iv.contains(p)) inside.push_back(p);
  std::sort(inside.begin(), inside.end());
  inside.erase(std::unique(inside.begin(), inside.end()), inside.end());
  if (inside.empty() || inside.front() > iv.l) return iv.l;
  // The left endpoint itself is an avoided point: the stretch up to the
  // next one (or the right endpoint) is free, so its midpoint works.
  const QuadScalar next = inside.size() > 1 ? inside[1] : iv.r;
  return (inside.front() + next) / QuadScalar(2);
}

}  // namespace

FaithfulnessVerdict faithfulness_conditions(const BranchingSystem& sys, const GraphPtr& g,
                                            std::size_t m_bound) {
  require_same(sys.graph, g);
  FaithfulnessVerdict out;
  out.m_bound = m_bound;
  const auto fail = [&](int condition, std::string witness) {
    out.faithful = false;
    out.condition = condition;
    out.witness = std::move(witness);
    return out;
  };
  for (const auto& v : g->vertices())
    if (sys.d_of(v).is_empty()) return fail(1, "D_" + v + " is empty");
  for (const auto& e : g->edges())
    if (sys.r_of(e.id).is_empty()) return fail(1, "R_" + e.id + " is empty");
  for (const auto& v : g->vertices()) {
    if (!g->in_y(v)) continue;
    IntervalSet covered;
    for (const auto& e : g->out_edges(v)) covered = iv_union(covered, sys.r_of(e));
    if (covered == sys.d_of(v))
      return fail(2, "D_" + v + " equals the union of its edge ranges");
  }
  for (const auto& c : exit_free_cycles(*g)) {
    bool exempt = false;
    for (const auto& e : c.edges)
      if (g->in_y(g->edge(e).src)) exempt = true;
    if (exempt) continue;  // the theorem restricts condition 3 to cycles
                           // whose edge sources avoid Y
    const std::string w = cycle_base(*g, c);
    const PAMap fc = cycle_map(sys, c);
    PAMap power = fc;
    IntervalSet fixed_cover;
    std::vector<QuadScalar> fixed_pts;
    for (std::size_t j = 1; j <= m_bound; ++j) {
      const FixedSet fx = fixed_points(power);
      fixed_cover = iv_union(fixed_cover, fx.intervals);
      fixed_pts.insert(fixed_pts.end(), fx.points.begin(), fx.points.end());
      if (iv_subtract(sys.d_of(w), fixed_cover).is_empty())
        return fail(3, "every point of D_" + w + " is fixed by power " +
                           std::to_string(j) + " of the cycle " +
                           path_str(cycle_path(*g, c)));
      if (j < m_bound) power = pa_compose(fc, power);
    }
    // Some z0 escapes every power: witness it exactly.
    const IntervalSet rem = iv_subtract(sys.d_of(w), fixed_cover);
    const QuadScalar z0 = pick_avoiding(rem, std::move(fixed_pts));
    out.witness = "z0 = " + z0.str() + " escapes the cycle " +
                  path_str(cycle_path(*g, c)) + " up to power " + std::to_string(m_bound);
  }
  return out;
}

std::string RankCertificate::text() const {
  std::ostringstream out;
  if (full_rank)
    out << "FULL RANK: " << monomials << " normal monomials independent";
  else
    out << "RANK DEFICIENT: rank " << rank << " of " << monomials
        << " normal monomials; kernel contains " << kernel_witness.value_or("?");
  out << (agrees ? " -- matches" : " -- CONTRADICTS") << " the faithfulness verdict";
  return out.str();
}

RankCertificate injectivity_rank_check(const BranchingSystem& sys, const GraphPtr& g,
                                       std::size_t deg_bound) {
  require_same(sys.graph, g);
  RankCertificate out;
  out.faithful_expected = faithfulness_conditions(sys, g, 10).faithful;

  // Normal monomials with both legs bounded, in deterministic order: the
  // ghost leg varies slowest, so the first dependency on a degenerate cycle
  // system pairs a cycle power against its base vertex.
  const auto paths = paths_up_to(*g, deg_bound);
  std::vector<Monomial> monomials;
  for (const auto& beta : paths)
    for (const auto& alpha : paths) {
      if (path_rng(*g, alpha) != path_rng(*g, beta)) continue;
      Monomial m{alpha, beta};
      if (is_normal(*g, m)) monomials.push_back(std::move(m));
    }
  out.monomials = monomials.size();

  // Each monomial acts as a weighted composition operator: it sends phi to
  // phi o h on the domain of h and to zero elsewhere, where the partial
  // increasing piecewise-affine map h undoes the interval maps along the
  // alpha leg, passes through the range vertex set, and applies the maps
  // along the beta leg.
  const auto identity_on = [](const IntervalSet& s) {
    std::vector<AffinePiece> pieces;
    pieces.reserve(s.pieces().size());
    for (const auto& iv : s.pieces())
      pieces.push_back({iv, QuadScalar(1), QuadScalar(0)});
    return PAMap(s, std::move(pieces));
  };
  std::vector<PAMap> action;
  action.reserve(monomials.size());
  for (const auto& m : monomials) {
    PAMap down = identity_on(sys.d_of(path_rng(*g, m.alpha)));
    for (auto it = m.alpha.edges.rbegin(); it != m.alpha.edges.rend(); ++it)
      down = pa_compose(sys.f_of(*it), down);
    PAMap up = identity_on(sys.d_of(path_rng(*g, m.beta)));
    for (auto it = m.beta.edges.rbegin(); it != m.beta.edges.rend(); ++it)
      up = pa_compose(sys.f_of(*it), up);
    action.push_back(pa_compose(up, down.inverse()));
  }

  // A combination of such operators vanishes exactly when, on every atom of
  // the common refinement of their domains, the coefficients of the
  // monomials substituting along a common affine germ cancel: away from the
  // finitely many crossing points two distinct germs move a point of the
  // atom to distinct places, which a test function separates.  The rank of
  // the germ-group incidence matrix is therefore the dimension of the span
  // of the operators, and a dependent row reduces to an explicit kernel
  // element.
  std::vector<QuadScalar> cuts;
  for (const auto& h : action)
    for (const auto& p : h.pieces()) {
      cuts.push_back(p.dom.l);
      cuts.push_back(p.dom.r);
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::set<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const QuadScalar mid = Interval{cuts[i], cuts[i + 1]}.midpoint();
    std::map<std::pair<QuadScalar, QuadScalar>, std::vector<std::size_t>>
        by_germ;
    for (std::size_t j = 0; j < action.size(); ++j)
      for (const auto& p : action[j].pieces())
        if (p.dom.contains(mid)) {
          by_germ[{p.slope, p.offset}].push_back(j);
          break;
        }
    for (auto& [germ, members] : by_germ) groups.insert(std::move(members));
  }
  const std::vector<std::vector<std::size_t>> columns(groups.begin(),
                                                      groups.end());

  RowSpace space(columns.size());
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    std::vector<Rational> row(columns.size(), Rational(0));
    for (std::size_t c = 0; c < columns.size(); ++c)
      if (std::binary_search(columns[c].begin(), columns[c].end(), i))
        row[c] = Rational(1);
    const auto dependency = space.insert_tracked(std::move(row));
    if (dependency && !out.kernel_witness) {
      AlgebraElement witness = zero_element(g);
      for (const auto& [idx, coeff] : *dependency)
        witness = add(witness, monomial_element(g, monomials[idx].alpha,
                                                monomials[idx].beta, coeff));
      out.kernel_witness = print_element(witness);
    }
  }
  out.rank = space.rank();
  out.full_rank = out.rank == out.monomials;
  out.agrees = out.full_rank == out.faithful_expected;
  return out;
}

std::string print_branching(const BranchingSystem& sys) {
  std::ostringstream out;
  for (const auto& [v, s] : sys.d) {
    out << "D " << v;
    for (const auto& iv : s.pieces()) out << " " << print_interval(iv);
    out << "\n";
  }
  for (const auto& [e, s] : sys.r) {
    out << "R " << e;
    for (const auto& iv : s.pieces()) out << " " << print_interval(iv);
    out << "\n";
  }
  for (const auto& [e, m] : sys.f) {
    out << "f " << e;
    for (const auto& p : m.pieces())
      out << " piece " << print_interval(p.dom) << " " << p.slope.str() << " "
          << p.offset.str();
    out << "\n";
  }
  return out.str();
}

BranchingSystem parse_branching(const GraphPtr& g, const std::string& text) {
  BranchingSystem sys;
  sys.graph = g;
  std::istringstream lines(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    std::istringstream in(line);
    std::string kind;
    if (!(in >> kind)) continue;  // blank line
    const auto complain = [&](const std::string& what) {
      throw ParseError("line " + std::to_string(lineno) + ": " + what);
    };
    std::string id;
    if (!(in >> id)) complain("missing id after '" + kind + "'");
    if (kind == "D" || kind == "R") {
      if (kind == "D" && !g->has_vertex(id)) throw UnknownId("unknown vertex " + id);
      if (kind == "R" && !g->has_edge(id)) throw UnknownId("unknown edge " + id);
      std::vector<Interval> pieces;
      std::string token;
      while (in >> token) pieces.push_back(parse_interval(token));
      auto& slot = kind == "D" ? sys.d : sys.r;
      if (!slot.emplace(id, IntervalSet(std::move(pieces))).second)
        complain("duplicate " + kind + " line for " + id);
    } else if (kind == "f") {
      if (!g->has_edge(id)) throw UnknownId("unknown edge " + id);
      std::vector<AffinePiece> pieces;
      std::string keyword;
      while (in >> keyword) {
        if (keyword != "piece") complain("expected 'piece', got '" + keyword + "'");
        std::string dom, slope, offset;
        if (!(in >> dom >> slope >> offset)) complain("truncated piece");
        pieces.push_back({parse_interval(dom), QuadScalar::parse(slope),
                          QuadScalar::parse(offset)});
      }
      std::vector<Interval> doms;
      for (const auto& p : pieces) doms.push_back(p.dom);
      if (!sys.f.emplace(id, PAMap(IntervalSet(std::move(doms)), std::move(pieces))).second)
        complain("duplicate f line for " + id);
    } else {
      complain("unknown line kind '" + kind + "'");
    }
  }
  IntervalSet space;
  for (const auto& [v, s] : sys.d) space = iv_union(space, s);
  for (const auto& [e, s] : sys.r) space = iv_union(space, s);
  sys.space = space;
  return sys;
}

}  // namespace cohnpath
