#include "cohnpath/sampler.hpp"

#include <cstdlib>

namespace cohnpath {

Rational Sampler::coefficient() {
  long num = static_cast<long>(uniform(6)) - 3;
  if (num >= 0) ++num;  // skip zero: {-3,-2,-1,1,2,3}
  long den = static_cast<long>(uniform(3)) + 1;
  return Rational(num, den);
}

Path Sampler::path(const Graph& g, std::size_t max_len) {
  const auto& vs = g.vertices();
  Path p = trivial_path(g, vs[uniform(vs.size())]);
  std::size_t len = uniform(max_len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    const auto& out = g.out_edges(path_rng(g, p));
    if (out.empty()) break;
    p = append_edge(g, p, out[uniform(out.size())]);
  }
  return p;
}

AlgebraElement Sampler::element(const GraphPtr& g) {
  AlgebraElement x = zero_element(g);
  std::size_t terms = 1 + uniform(4);
  for (std::size_t t = 0; t < terms; ++t) {
    Path alpha = path(*g, 3);
    // beta must share alpha's range: walk backwards along in-edges.
    Path rbeta = trivial_path(*g, path_rng(*g, alpha));
    std::size_t len = uniform(4);
    std::vector<std::string> back;
    std::string at = rbeta.base;
    for (std::size_t i = 0; i < len; ++i) {
      const auto& in = g->in_edges(at);
      if (in.empty()) break;
      const std::string& e = in[uniform(in.size())];
      back.push_back(e);
      at = g->edge(e).src;
    }
    Path beta{at, {}};
    for (auto it = back.rbegin(); it != back.rend(); ++it) beta.edges.push_back(*it);
    x = add(x, monomial_element(g, alpha, beta, coefficient()));
  }
  return x;
}

AlgebraElement Sampler::nonzero_element(const GraphPtr& g) {
  while (true) {
    AlgebraElement x = element(g);
    if (!x.is_zero()) return x;
  }
}

AlgebraElement Sampler::homogeneous_element(const GraphPtr& g) {
  while (true) {
    AlgebraElement x = element(g);
    auto degs = graded_support(x);
    if (degs.empty()) continue;
    return graded_component(x, degs[uniform(degs.size())]);
  }
}

std::uint64_t sampler_seed_from_env() {
  if (const char* s = std::getenv("COHNPATH_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0') return v;
  }
  return 0x5eed0c0bULL;
}

}  // namespace cohnpath
