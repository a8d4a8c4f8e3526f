#pragma once

#include <cstdint>
#include <random>

#include "cohnpath/algebra.hpp"

namespace cohnpath {

/// Deterministic pseudo-random elements for property suites.  mt19937_64 is
/// fully specified by the standard and values are drawn by modulo, so a seed
/// reproduces the same sequence on every platform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  /// Uniform draw from [0, n).  Pre: n > 0.
  std::uint64_t uniform(std::uint64_t n) { return rng_() % n; }

  /// Small nonzero rational coefficient.
  Rational coefficient();
  /// Random path from a random start, length <= max_len.
  Path path(const Graph& g, std::size_t max_len);
  /// 1..4 terms of random monomials with path factors of length <= 3.
  /// May cancel to zero.
  AlgebraElement element(const GraphPtr& g);
  /// Resamples element() until nonzero.
  AlgebraElement nonzero_element(const GraphPtr& g);
  /// Nonzero and concentrated in one graded degree (a component of a draw).
  AlgebraElement homogeneous_element(const GraphPtr& g);

 private:
  std::mt19937_64 rng_;
};

/// Seed from the COHNPATH_SEED environment variable, or the fixed default.
std::uint64_t sampler_seed_from_env();

}  // namespace cohnpath
