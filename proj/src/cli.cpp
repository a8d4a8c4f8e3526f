#include "cohnpath/cli.hpp"

#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cohnpath/branching.hpp"
#include "cohnpath/dsl.hpp"
#include "cohnpath/sampler.hpp"
#include "cohnpath/skew.hpp"
#include "cohnpath/transform.hpp"

namespace cohnpath {

namespace {

using Json = nlohmann::ordered_json;

GraphPtr load_graph(const std::string& path) {
  return std::make_shared<Graph>(load_graph_file(path));
}

BranchingSystem load_system(const GraphPtr& g, const std::string& spec) {
  if (spec == "standard") return build_standard_system(g);
  if (spec == "rotation") return build_rotation_system(g);
  std::ifstream in(spec);
  if (!in) throw ParseError("cannot open system file " + spec);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_branching(g, text.str());
}

std::string join_ids(const std::vector<std::string>& ids) {
  if (ids.empty()) return "(none)";
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += " ";
    out += id;
  }
  return out;
}

/// Reduced words a b^-1 over path pairs with matching range and
/// |a| + |b| <= total; these are exactly the words with nonempty domain.
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

/// Shared state for one invocation: parsed options plus the output mode.
struct Invocation {
  bool json = false;
  std::ostream* out = nullptr;
  int exit_code = 0;

  void emit(const Json& payload, const std::string& text) {
    if (json)
      *out << payload.dump(2) << "\n";
    else
      *out << text << "\n";
  }
};

int cmd_graph_check(Invocation& inv, const std::string& file) {
  const GraphPtr g = load_graph(file);
  const VertexClassification cls = classify_vertices(*g);
  const bool cond_l = condition_L(*g);
  const bool rel_l = relative_condition_L(*g);
  Json j{{"command", "graph check"},
         {"vertices", g->vertices().size()},
         {"edges", g->edges().size()},
         {"sinks", cls.sinks},
         {"regular", cls.regular},
         {"x", cls.x},
         {"y", cls.y},
         {"condition_l", cond_l},
         {"relative_condition_l", rel_l}};
  std::ostringstream text;
  text << "vertices: " << g->vertices().size() << "\n"
       << "edges: " << g->edges().size() << "\n"
       << "sinks: " << join_ids(cls.sinks) << "\n"
       << "regular: " << join_ids(cls.regular) << "\n"
       << "X: " << join_ids(cls.x) << "\n"
       << "Y: " << join_ids(cls.y) << "\n"
       << "condition L: " << (cond_l ? "holds" : "fails") << "\n"
       << "relative condition L: " << (rel_l ? "holds" : "fails");
  inv.emit(j, text.str());
  return 0;
}

int cmd_graph_extend(Invocation& inv, const std::string& file) {
  const GraphPtr g = load_graph(file);
  const Extension ext = extended_graph(*g);
  const std::string text = print_graph(ext.graph);
  Json j{{"command", "graph extend"},
         {"graph", text},
         {"primed_vertices", ext.primed_vertex},
         {"primed_edges", ext.primed_edge}};
  // The plain report is the graph file itself so it can be piped onward.
  std::string trimmed = text;
  if (!trimmed.empty() && trimmed.back() == '\n') trimmed.pop_back();
  inv.emit(j, trimmed);
  return 0;
}

int cmd_alg_eval(Invocation& inv, const std::string& file,
                 const std::vector<std::string>& exprs, const char* name) {
  const GraphPtr g = load_graph(file);
  AlgebraElement x = parse_element(g, exprs.front());
  for (std::size_t i = 1; i < exprs.size(); ++i)
    x = multiply(x, parse_element(g, exprs[i]));
  const std::string printed = print_element(x);
  inv.emit(Json{{"command", name}, {"element", printed}}, printed);
  return 0;
}

int cmd_alg_reduce(Invocation& inv, const std::string& file, const std::string& expr) {
  const GraphPtr g = load_graph(file);
  const AlgebraElement x = parse_element(g, expr);
  const ReductionOutcome outcome = reduce(x);
  const std::optional<std::string> replay = replay_failure(x, outcome);
  Json j{{"command", "alg reduce"},
         {"shape", shape_name(outcome.shape)},
         {"mu", path_str(outcome.mu)},
         {"eta", path_str(outcome.eta)},
         {"value", print_element(outcome.value)}};
  std::ostringstream text;
  text << "shape: " << shape_name(outcome.shape) << "\n"
       << "mu: " << path_str(outcome.mu) << "\n"
       << "eta: " << path_str(outcome.eta) << "\n"
       << "value: " << print_element(outcome.value) << "\n";
  if (outcome.shape == ReductionShape::CornerForm) {
    const std::string cycle = path_str(cycle_path(*g, *outcome.corner_cycle));
    j["cycle"] = cycle;
    text << "cycle: " << cycle << "\n";
  } else {
    j["k"] = outcome.k.str();
    j["vertex"] = outcome.vertex;
    text << "k: " << outcome.k.str() << "\n"
         << "vertex: " << outcome.vertex << "\n";
  }
  j["replay"] = replay ? *replay : "ok";
  text << "replay: " << (replay ? *replay : "ok");
  inv.emit(j, text.str());
  return replay ? 1 : 0;
}

int cmd_alg_dim(Invocation& inv, const std::string& file, std::size_t cap) {
  const GraphPtr g = load_graph(file);
  const auto dim = dimension_if_finite(*g, cap);
  Json j{{"command", "alg dim"}, {"finite", dim.has_value()}};
  if (dim) j["dimension"] = *dim;
  std::ostringstream text;
  text << "dimension: ";
  if (dim)
    text << *dim;
  else
    text << "infinite";
  inv.emit(j, text.str());
  return 0;
}

int cmd_iso_roundtrip(Invocation& inv, const std::string& file, std::size_t count) {
  const GraphPtr g = load_graph(file);
  const ExtensionIso iso = make_extension_iso(g);
  Sampler sampler(sampler_seed_from_env());
  std::optional<std::string> counterexample;
  for (std::size_t i = 0; i < count && !counterexample; ++i) {
    const AlgebraElement x = sampler.element(g);
    if (!equal(psi(iso, phi(iso, x)), x))
      counterexample = "psi(phi(x)) != x for x = " + print_element(x);
  }
  for (std::size_t i = 0; i < count && !counterexample; ++i) {
    const AlgebraElement y = sampler.element(iso.extended);
    if (!equal(phi(iso, psi(iso, y)), y))
      counterexample = "phi(psi(y)) != y for y = " + print_element(y);
  }
  Json j{{"command", "iso roundtrip"},
         {"count", count},
         {"base_vertices", iso.base->vertices().size()},
         {"extension_vertices", iso.extended->vertices().size()},
         {"ok", !counterexample}};
  if (counterexample) j["counterexample"] = *counterexample;
  std::ostringstream text;
  text << "base: " << iso.base->vertices().size() << " vertices, "
       << iso.base->edges().size() << " edges\n"
       << "extension: " << iso.extended->vertices().size() << " vertices, "
       << iso.extended->edges().size() << " edges\n";
  if (counterexample)
    text << "ROUNDTRIP FAILS: " << *counterexample;
  else
    text << "psi(phi(x)) = x: " << count << " random elements\n"
         << "phi(psi(y)) = y: " << count << " random elements\n"
         << "ROUNDTRIP OK";
  inv.emit(j, text.str());
  return counterexample ? 1 : 0;
}

Json certificate_json(const char* name, const Certificate& cert) {
  Json lines = Json::array();
  for (const auto& line : cert.lines) {
    Json entry{{"name", line.name}, {"pass", line.pass}};
    if (!line.pass) entry["witness"] = line.witness;
    lines.push_back(std::move(entry));
  }
  return Json{{"command", name},
              {"injective", cert.injective()},
              {"detail", cert.detail},
              {"lines", std::move(lines)}};
}

int cmd_unique(Invocation& inv, const std::string& file, const std::string& mode,
               const std::string& target) {
  const GraphPtr g = load_graph(file);
  Certificate cert;
  const auto check = [&](const auto& assignment) {
    if (mode == "graded") return check_graded_uniqueness(assignment);
    if (mode == "ck") return check_ck_uniqueness(assignment);
    return check_relative_ck_uniqueness(assignment);
  };
  if (target == "skew")
    cert = check(skew_generators(g));
  else
    cert = check(identity_assignment(g));
  inv.emit(certificate_json(("unique " + mode).c_str(), cert), cert.text());
  return cert.injective() ? 0 : 1;
}

int cmd_skew_relations(Invocation& inv, const std::string& file, std::size_t bound) {
  const GraphPtr g = load_graph(file);
  // Constructing the canonical representation replays the defining
  // relations; an inconsistency would throw.
  const auto assignment = skew_generators(g);
  std::optional<std::string> failure = relation_violation(assignment);
  const auto words = shape_words(g, bound);
  std::size_t identity_checked = 0;
  std::size_t domains_checked = 0;
  for (const auto& t : words) {
    if (failure) break;
    if (!set_equal(act(FreeWord(), u_set(g, t)), u_set(g, t))) {
      failure = "identity action moves the domain of " + print_word(t);
      break;
    }
    ++identity_checked;
    if (!set_equal(act(t, u_set(g, t.inverse())), u_set(g, t))) {
      failure = "action of " + print_word(t) + " misses its domain";
      break;
    }
    ++domains_checked;
  }
  const auto short_words = shape_words(g, bound / 2);
  std::size_t pairs_checked = 0;
  for (const auto& t : short_words) {
    if (failure) break;
    for (const auto& s : short_words) {
      const CylinderSet mid = intersect(u_set(g, s), u_set(g, t.inverse()));
      const CylinderSet dom = act(s.inverse(), mid);
      if (!set_equal(act(t, act(s, dom)), act(t * s, dom)) ||
          !set_equal(act(t, mid), intersect(u_set(g, t), u_set(g, t * s)))) {
        failure = "composition fails for t = " + print_word(t) +
                  ", s = " + print_word(s);
        break;
      }
      ++pairs_checked;
    }
  }
  Json j{{"command", "skew relations"},
         {"bound", bound},
         {"words", words.size()},
         {"pairs", pairs_checked},
         {"ok", !failure}};
  if (failure) j["failure"] = *failure;
  std::ostringstream text;
  if (failure) {
    text << "PARTIAL ACTION FAILS: " << *failure;
  } else {
    text << "relations: hold\n"
         << "identity action: ok (" << identity_checked << " words)\n"
         << "inverse domains: ok (" << domains_checked << " words)\n"
         << "composition: ok (" << pairs_checked << " pairs)\n"
         << "PARTIAL ACTION OK (words up to length " << bound << ")";
  }
  inv.emit(j, text.str());
  return failure ? 1 : 0;
}

int cmd_skew_maxcomm(Invocation& inv, const std::string& file, std::size_t bound) {
  const GraphPtr g = load_graph(file);
  const ProbeVerdict verdict = max_commutativity_probe(g, bound);
  Json j{{"command", "skew maxcomm"},
         {"bound", verdict.bound},
         {"maximal", verdict.maximal}};
  if (verdict.maximal) {
    j["candidates"] = verdict.candidates.size();
  } else {
    if (verdict.cycle) {
      std::vector<Letter> letters;
      for (const auto& e : verdict.cycle->edges) letters.push_back({e, false});
      j["cycle"] = print_word(FreeWord(std::move(letters)));
    }
    j["commuting_checked"] = verdict.commuting_checked;
  }
  inv.emit(j, verdict.text());
  return verdict.maximal ? 0 : 1;
}

int cmd_skew_rank(Invocation& inv, const std::string& file, std::size_t len,
                  std::size_t depth) {
  const GraphPtr g = load_graph(file);
  const RankReport report = skew_independence(g, len, depth);
  Json j{{"command", "skew rank"},
         {"len", len},
         {"depth", depth},
         {"monomials", report.monomials},
         {"rank", report.rank},
         {"independent", !report.dependency}};
  if (report.dependency) j["dependency"] = *report.dependency;
  std::ostringstream text;
  text << "monomials: " << report.monomials << "\n"
       << "rank: " << report.rank << "\n";
  if (report.dependency)
    text << "DEPENDENT: " << *report.dependency;
  else
    text << "INDEPENDENT";
  inv.emit(j, text.str());
  return report.dependency ? 1 : 0;
}

int cmd_branch_build(Invocation& inv, const std::string& file, const std::string& system) {
  const GraphPtr g = load_graph(file);
  const BranchingSystem sys = load_system(g, system);
  const std::string text = print_branching(sys);
  Json j{{"command", "branch build"}, {"system", system}, {"text", text}};
  std::string trimmed = text;
  if (!trimmed.empty() && trimmed.back() == '\n') trimmed.pop_back();
  inv.emit(j, trimmed);
  return 0;
}

int cmd_branch_axioms(Invocation& inv, const std::string& file, const std::string& system) {
  const GraphPtr g = load_graph(file);
  const BranchingSystem sys = load_system(g, system);
  const AxiomReport report = check_axioms(sys, g);
  Json j{{"command", "branch axioms"}, {"system", system}, {"ok", report.ok}};
  if (!report.ok) {
    j["axiom"] = report.axiom;
    j["witness"] = report.witness;
  }
  inv.emit(j, report.text());
  return report.ok ? 0 : 1;
}

int cmd_branch_faithful(Invocation& inv, const std::string& file,
                        const std::string& system, std::size_t m_bound) {
  const GraphPtr g = load_graph(file);
  const BranchingSystem sys = load_system(g, system);
  const FaithfulnessVerdict verdict = faithfulness_conditions(sys, g, m_bound);
  Json j{{"command", "branch faithful"},
         {"system", system},
         {"m", m_bound},
         {"faithful", verdict.faithful}};
  if (!verdict.faithful) j["condition"] = verdict.condition;
  if (!verdict.witness.empty()) j["witness"] = verdict.witness;
  inv.emit(j, verdict.text());
  return verdict.faithful ? 0 : 1;
}

int cmd_branch_rank(Invocation& inv, const std::string& file, const std::string& system,
                    std::size_t deg_bound) {
  const GraphPtr g = load_graph(file);
  const BranchingSystem sys = load_system(g, system);
  const RankCertificate cert = injectivity_rank_check(sys, g, deg_bound);
  Json j{{"command", "branch rank"},
         {"system", system},
         {"deg", deg_bound},
         {"monomials", cert.monomials},
         {"rank", cert.rank},
         {"full_rank", cert.full_rank},
         {"faithful_expected", cert.faithful_expected},
         {"agrees", cert.agrees}};
  if (cert.kernel_witness) j["kernel_witness"] = *cert.kernel_witness;
  inv.emit(j, cert.text());
  return cert.full_rank ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Invocation inv;
  inv.out = &out;

  CLI::App app{"Exact computation in relative Cohn path algebras"};
  app.name("cohnpath");
  app.require_subcommand(1);
  app.add_flag("--json", inv.json, "emit the report as JSON");
  const auto sub = [](CLI::App* parent, const std::string& name, const std::string& desc) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };

  std::string file;
  std::vector<std::string> exprs;
  std::string system = "standard";
  std::string target = "skew";
  std::size_t bound = 4;
  std::size_t m_bound = 10;
  std::size_t deg_bound = 3;
  std::size_t len_bound = 3;
  std::size_t depth = 7;
  std::size_t count = 200;
  std::size_t cap = 0;
  const auto graph_arg = [&file](CLI::App* s) {
    s->add_option("graph", file, "graph file")->required();
  };
  const auto system_opt = [&system](CLI::App* s) {
    s->add_option("--system", system,
                  "branching system: standard, rotation, or a system file");
  };

  CLI::App* graph = sub(&app, "graph", "inspect and transform graphs");
  graph->require_subcommand(1);
  graph_arg(sub(graph, "check", "validate a graph file and classify its vertices"));
  graph_arg(sub(graph, "extend", "print the extension that absorbs the withheld relations"));

  CLI::App* alg = sub(&app, "alg", "compute in the algebra");
  alg->require_subcommand(1);
  CLI::App* alg_eval = sub(alg, "eval", "normal form of an element");
  graph_arg(alg_eval);
  alg_eval->add_option("element", exprs, "element expression")->required()->expected(1);
  CLI::App* alg_mul = sub(alg, "mul", "product of elements, left to right");
  graph_arg(alg_mul);
  alg_mul->add_option("element", exprs, "element expressions")->required()->expected(1, -1);
  CLI::App* alg_reduce = sub(alg, "reduce", "run the reduction algorithm with replay");
  graph_arg(alg_reduce);
  alg_reduce->add_option("element", exprs, "nonzero element expression")->required()->expected(1);
  CLI::App* alg_dim = sub(alg, "dim", "dimension of the algebra when finite");
  graph_arg(alg_dim);
  alg_dim->add_option("--cap", cap, "stabilization cap for the path enumeration");

  CLI::App* iso = sub(&app, "iso", "the extension isomorphism");
  iso->require_subcommand(1);
  CLI::App* iso_rt = sub(iso, "roundtrip", "verify both composites on random elements");
  graph_arg(iso_rt);
  iso_rt->add_option("--count", count, "random elements per direction");

  CLI::App* unique = sub(&app, "unique", "uniqueness-theorem certificates");
  unique->require_subcommand(1);
  for (const std::string mode : {"graded", "ck", "relck"}) {
    CLI::App* s = sub(unique, mode, "check the " + mode + " uniqueness hypotheses");
    graph_arg(s);
    s->add_option("--target", target, "generator assignment: skew or identity")
        ->check(CLI::IsMember({"skew", "identity"}));
  }

  CLI::App* skew = sub(&app, "skew", "the partial skew group ring model");
  skew->require_subcommand(1);
  CLI::App* skew_rel = sub(skew, "relations", "partial-action axioms and relations");
  graph_arg(skew_rel);
  skew_rel->add_option("--bound", bound, "word length bound");
  CLI::App* skew_mc = sub(skew, "maxcomm", "maximal-commutativity probe for the diagonal");
  graph_arg(skew_mc);
  skew_mc->add_option("--bound", bound, "word length bound");
  CLI::App* skew_rank = sub(skew, "rank", "independence of represented monomials");
  graph_arg(skew_rank);
  skew_rank->add_option("--len", len_bound, "path length bound");
  skew_rank->add_option("--depth", depth, "boundary profile depth");

  CLI::App* branch = sub(&app, "branch", "interval branching systems");
  branch->require_subcommand(1);
  CLI::App* br_build = sub(branch, "build", "print a system in its text format");
  graph_arg(br_build);
  system_opt(br_build);
  CLI::App* br_ax = sub(branch, "axioms", "replay the five defining conditions");
  graph_arg(br_ax);
  system_opt(br_ax);
  CLI::App* br_faith = sub(branch, "faithful", "decide the faithfulness conditions");
  graph_arg(br_faith);
  system_opt(br_faith);
  br_faith->add_option("--m", m_bound, "power bound for cycle maps");
  CLI::App* br_rank = sub(branch, "rank", "independence of the represented monomials");
  graph_arg(br_rank);
  system_opt(br_rank);
  br_rank->add_option("--deg", deg_bound, "path length bound");

  try {
    // CLI11's vector overload consumes arguments from the back.
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    const CLI::App* deepest = &app;
    while (!deepest->get_subcommands().empty())
      deepest = deepest->get_subcommands().front();
    out << deepest->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (graph->got_subcommand("check")) return cmd_graph_check(inv, file);
    if (graph->got_subcommand("extend")) return cmd_graph_extend(inv, file);
    if (alg->got_subcommand("eval")) return cmd_alg_eval(inv, file, exprs, "alg eval");
    if (alg->got_subcommand("mul")) return cmd_alg_eval(inv, file, exprs, "alg mul");
    if (alg->got_subcommand("reduce")) return cmd_alg_reduce(inv, file, exprs.front());
    if (alg->got_subcommand("dim")) return cmd_alg_dim(inv, file, cap);
    if (iso->got_subcommand("roundtrip")) return cmd_iso_roundtrip(inv, file, count);
    for (const std::string mode : {"graded", "ck", "relck"})
      if (unique->got_subcommand(mode)) return cmd_unique(inv, file, mode, target);
    if (skew->got_subcommand("relations")) return cmd_skew_relations(inv, file, bound);
    if (skew->got_subcommand("maxcomm")) return cmd_skew_maxcomm(inv, file, bound);
    if (skew->got_subcommand("rank")) return cmd_skew_rank(inv, file, len_bound, depth);
    if (branch->got_subcommand("build")) return cmd_branch_build(inv, file, system);
    if (branch->got_subcommand("axioms")) return cmd_branch_axioms(inv, file, system);
    if (branch->got_subcommand("faithful"))
      return cmd_branch_faithful(inv, file, system, m_bound);
    if (branch->got_subcommand("rank"))
      return cmd_branch_rank(inv, file, system, deg_bound);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand selected\n";
  return 2;
}

}  // namespace cohnpath
