#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "cohnpath/errors.hpp"
#include "cohnpath/rational.hpp"

namespace cohnpath {

/// Exact scalar a + b*sqrt(2) with rational a, b.  The representation is
/// unique because sqrt(2) is irrational, so equality is componentwise and
/// the sign can be decided exactly by comparing a^2 against 2 b^2.
class QuadScalar {
 public:
  QuadScalar() = default;
  QuadScalar(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QuadScalar(long n) : a_(n) {}                 // NOLINT(google-explicit-constructor)
  QuadScalar(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }

  /// Exact sign: -1, 0, or +1.
  int sign() const;

  QuadScalar operator-() const { return {-a_, -b_}; }
  QuadScalar& operator+=(const QuadScalar& o);
  QuadScalar& operator-=(const QuadScalar& o);
  QuadScalar& operator*=(const QuadScalar& o);
  QuadScalar& operator/=(const QuadScalar& o);  // throws Error on zero divisor

  friend QuadScalar operator+(QuadScalar x, const QuadScalar& y) { return x += y; }
  friend QuadScalar operator-(QuadScalar x, const QuadScalar& y) { return x -= y; }
  friend QuadScalar operator*(QuadScalar x, const QuadScalar& y) { return x *= y; }
  friend QuadScalar operator/(QuadScalar x, const QuadScalar& y) { return x /= y; }

  friend bool operator==(const QuadScalar& x, const QuadScalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const QuadScalar& x, const QuadScalar& y) {
    const int s = (x - y).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Compact literal: "a", "b*sqrt2", "a+b*sqrt2", or "a-b*sqrt2" with the
  /// rational components in lowest terms.  parse accepts the same grammar
  /// with optional whitespace around the middle sign.
  std::string str() const;
  static QuadScalar parse(const std::string& text);

 private:
  Rational a_;
  Rational b_;
};

/// The constant sqrt(2).
QuadScalar sqrt2();

/// A half-open interval [l, r) of the real line with QuadScalar endpoints.
/// Empty iff l >= r.
struct Interval {
  QuadScalar l;
  QuadScalar r;

  bool empty() const { return l >= r; }
  bool contains(const QuadScalar& x) const { return l <= x && x < r; }
  QuadScalar midpoint() const { return (l + r) / QuadScalar(2); }
  friend bool operator==(const Interval& x, const Interval& y) = default;
};

std::string print_interval(const Interval& iv);
Interval parse_interval(const std::string& text);

/// A finite union of half-open intervals in unique canonical form: empty
/// pieces dropped, sorted by left endpoint, overlapping or adjacent pieces
/// merged.  Two IntervalSets describe the same point set iff they are
/// structurally equal.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> pieces);
  IntervalSet(const Interval& iv) : IntervalSet(std::vector<Interval>{iv}) {}  // NOLINT

  const std::vector<Interval>& pieces() const { return pieces_; }
  bool is_empty() const { return pieces_.empty(); }
  bool contains(const QuadScalar& x) const;
  /// Total length (the pieces are bounded).
  QuadScalar measure() const;

  friend bool operator==(const IntervalSet& x, const IntervalSet& y) = default;

 private:
  std::vector<Interval> pieces_;
};

IntervalSet iv_union(const IntervalSet& x, const IntervalSet& y);
IntervalSet iv_intersect(const IntervalSet& x, const IntervalSet& y);
IntervalSet iv_subtract(const IntervalSet& x, const IntervalSet& y);
bool iv_subset(const IntervalSet& x, const IntervalSet& y);

std::string print_interval_set(const IntervalSet& s);

/// One affine piece of a piecewise-affine map: x -> slope*x + offset on the
/// half-open interval dom.
struct AffinePiece {
  Interval dom;
  QuadScalar slope;
  QuadScalar offset;

  QuadScalar apply(const QuadScalar& x) const { return slope * x + offset; }
  /// Image of dom; half-open because the slope is positive.
  Interval image() const { return {apply(dom.l), apply(dom.r)}; }
  friend bool operator==(const AffinePiece& x, const AffinePiece& y) = default;
};

/// A piecewise-affine bijection from a finite interval union onto its range.
/// The constructor validates: every slope is strictly positive (so each
/// piece maps a half-open interval onto a half-open interval), the piece
/// domains partition the stated domain, and the piece images are pairwise
/// disjoint (injectivity).  The range is computed, not stated.
class PAMap {
 public:
  PAMap(IntervalSet domain, std::vector<AffinePiece> pieces);

  const IntervalSet& domain() const { return domain_; }
  const IntervalSet& range() const { return range_; }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }

  /// Value at a point of the domain (Error outside it).
  QuadScalar apply(const QuadScalar& x) const;
  /// {x in domain : f(x) in s}.
  IntervalSet preimage(const IntervalSet& s) const;
  /// The inverse bijection range -> domain.
  PAMap inverse() const;

  friend bool operator==(const PAMap& x, const PAMap& y) {
    return x.domain_ == y.domain_ && x.pieces_ == y.pieces_;
  }

 private:
  IntervalSet domain_;
  IntervalSet range_;
  std::vector<AffinePiece> pieces_;
};

/// f after g : x -> f(g(x)), defined where g(x) lands in dom f.
PAMap pa_compose(const PAMap& f, const PAMap& g);

/// The increasing affine bijection from one nonempty interval onto another.
PAMap affine_between(const Interval& from, const Interval& to);

/// The exact fixed-point set of a piecewise-affine map: on a piece with
/// slope 1 the fixed set is the whole piece or nothing depending on the
/// offset; otherwise it is at most one isolated point.
struct FixedSet {
  IntervalSet intervals;
  std::vector<QuadScalar> points;  // isolated fixed points, sorted

  bool is_empty() const { return intervals.is_empty() && points.empty(); }
};

FixedSet fixed_points(const PAMap& f);

}  // namespace cohnpath
