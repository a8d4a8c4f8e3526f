#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "cohnpath/rational.hpp"

namespace cohnpath {

/// Incremental row space over the rationals: rows are dense coordinate
/// vectors of a fixed width.  Supports exact rank and membership queries via
/// Gaussian elimination.  Every insertion is also tracked against the raw
/// input sequence, so a dependent vector can be reported as an explicit
/// vanishing combination of the vectors inserted before it.
class RowSpace {
 public:
  explicit RowSpace(std::size_t width) : width_(width) {}

  std::size_t width() const { return width_; }
  std::size_t rank() const { return rows_.size(); }
  /// Number of insert attempts so far (the index space of combinations).
  std::size_t inserted() const { return attempts_; }

  /// Residual of v after reduction against the stored rows.
  std::vector<Rational> reduce(std::vector<Rational> v) const {
    std::map<std::size_t, Rational> combo;
    reduce_tracked(v, combo);
    return v;
  }

  bool contains(const std::vector<Rational>& v) const {
    auto r = reduce(v);
    for (const auto& c : r)
      if (!(c == Rational(0))) return false;
    return true;
  }

  /// Reduces then stores v when independent; returns true iff the rank grew.
  bool insert(std::vector<Rational> v) { return !insert_tracked(std::move(v)); }

  /// Like insert, but when v is dependent returns the witness: coefficients
  /// over insertion indices (this attempt included, with coefficient 1) whose
  /// combination of the original inputs is zero.  Returns nullopt when the
  /// rank grew.
  std::optional<std::map<std::size_t, Rational>> insert_tracked(std::vector<Rational> v) {
    check_width(v);
    std::map<std::size_t, Rational> combo{{attempts_, Rational(1)}};
    ++attempts_;
    reduce_tracked(v, combo);
    for (std::size_t j = 0; j < width_; ++j) {
      if (v[j] == Rational(0)) continue;
      pivots_.push_back(j);
      rows_.push_back(std::move(v));
      combos_.push_back(std::move(combo));
      return std::nullopt;
    }
    return combo;
  }

 private:
  void check_width(const std::vector<Rational>& v) const {
    if (v.size() != width_) throw Error("row width mismatch");
  }

  void reduce_tracked(std::vector<Rational>& v,
                      std::map<std::size_t, Rational>& combo) const {
    check_width(v);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational c = v[pivots_[i]];
      if (c == Rational(0)) continue;
      const Rational f = c / rows_[i][pivots_[i]];
      for (std::size_t j = 0; j < width_; ++j) v[j] = v[j] - f * rows_[i][j];
      for (const auto& [idx, w] : combos_[i]) {
        Rational& slot = combo[idx];
        slot -= f * w;
        if (slot == Rational(0)) combo.erase(idx);
      }
    }
  }

  std::size_t width_;
  std::size_t attempts_ = 0;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::map<std::size_t, Rational>> combos_;
};

}  // namespace cohnpath
