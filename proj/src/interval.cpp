#include "cohnpath/interval.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace cohnpath {

int QuadScalar::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: |a| vs |b|*sqrt2 decides, i.e. a^2 vs 2 b^2 on the
  // positive side.
  const int cmp = (a_ * a_ - Rational(2) * b_ * b_).sign();
  return cmp == 0 ? 0 : cmp * sa;  // cmp != 0 always (sqrt2 irrational)
}

QuadScalar& QuadScalar::operator+=(const QuadScalar& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadScalar& QuadScalar::operator-=(const QuadScalar& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadScalar& QuadScalar::operator*=(const QuadScalar& o) {
  const Rational a = a_ * o.a_ + Rational(2) * b_ * o.b_;
  const Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  return *this;
}

QuadScalar& QuadScalar::operator/=(const QuadScalar& o) {
  if (o.is_zero()) throw Error("division by zero");
  // 1/(a + b sqrt2) = (a - b sqrt2) / (a^2 - 2 b^2); the norm is nonzero
  // for nonzero arguments because sqrt2 is irrational.
  const Rational norm = o.a_ * o.a_ - Rational(2) * o.b_ * o.b_;
  return *this *= QuadScalar(o.a_ / norm, -o.b_ / norm);
}

std::string QuadScalar::str() const {
  if (b_.is_zero()) return a_.str();
  std::string radical = b_.str() + "*sqrt2";
  if (a_.is_zero()) return radical;
  if (b_.sign() > 0) return a_.str() + "+" + radical;
  return a_.str() + "-" + (-b_).str() + "*sqrt2";
}

QuadScalar QuadScalar::parse(const std::string& text) {
  // Grammar: rational [("+"|"-") rational "*sqrt2"] | rational "*sqrt2",
  // with optional whitespace between tokens.
  std::size_t i = 0;
  const auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  const auto scan_rational = [&]() -> Rational {
    skip();
    std::size_t start = i;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
    while (i < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/'))
      ++i;
    if (i == start) throw ParseError("expected a rational in '" + text + "'");
    return Rational::parse(text.substr(start, i - start));
  };
  const auto scan_sqrt2 = [&]() -> bool {
    skip();
    if (text.compare(i, 6, "*sqrt2") != 0) return false;
    i += 6;
    return true;
  };

  const Rational first = scan_rational();
  if (scan_sqrt2()) {
    skip();
    if (i != text.size()) throw ParseError("trailing input in scalar '" + text + "'");
    return {Rational(0), first};
  }
  skip();
  if (i == text.size()) return {first};
  const char op = text[i];
  if (op != '+' && op != '-') throw ParseError("expected + or - in scalar '" + text + "'");
  ++i;
  Rational second = scan_rational();
  if (!scan_sqrt2()) throw ParseError("expected *sqrt2 in scalar '" + text + "'");
  skip();
  if (i != text.size()) throw ParseError("trailing input in scalar '" + text + "'");
  if (op == '-') second = -second;
  return {first, second};
}

QuadScalar sqrt2() { return {Rational(0), Rational(1)}; }

std::string print_interval(const Interval& iv) {
  return "[" + iv.l.str() + "," + iv.r.str() + ")";
}

Interval parse_interval(const std::string& text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  if (end - begin < 3 || text[begin] != '[' || text[end - 1] != ')')
    throw ParseError("expected [l,r) in '" + text + "'");
  const std::size_t comma = text.find(',', begin);
  if (comma == std::string::npos || comma >= end)
    throw ParseError("expected a comma in interval '" + text + "'");
  return {QuadScalar::parse(text.substr(begin + 1, comma - begin - 1)),
          QuadScalar::parse(text.substr(comma + 1, end - 1 - comma - 1))};
}

IntervalSet::IntervalSet(std::vector<Interval> pieces) {
  std::erase_if(pieces, [](const Interval& iv) { return iv.empty(); });
  std::sort(pieces.begin(), pieces.end(),
            [](const Interval& x, const Interval& y) { return x.l < y.l; });
  for (auto& iv : pieces) {
    if (!pieces_.empty() && iv.l <= pieces_.back().r) {
      if (pieces_.back().r < iv.r) pieces_.back().r = iv.r;
    } else {
      pieces_.push_back(iv);
    }
  }
}

bool IntervalSet::contains(const QuadScalar& x) const {
  for (const auto& iv : pieces_) {
    if (iv.contains(x)) return true;
    if (x < iv.l) break;
  }
  return false;
}

QuadScalar IntervalSet::measure() const {
  QuadScalar total;
  for (const auto& iv : pieces_) total += iv.r - iv.l;
  return total;
}

IntervalSet iv_union(const IntervalSet& x, const IntervalSet& y) {
  std::vector<Interval> all = x.pieces();
  all.insert(all.end(), y.pieces().begin(), y.pieces().end());
  return IntervalSet(std::move(all));
}

IntervalSet iv_intersect(const IntervalSet& x, const IntervalSet& y) {
  std::vector<Interval> out;
  for (const auto& p : x.pieces())
    for (const auto& q : y.pieces()) {
      Interval overlap{std::max(p.l, q.l), std::min(p.r, q.r)};
      if (!overlap.empty()) out.push_back(overlap);
    }
  return IntervalSet(std::move(out));
}

IntervalSet iv_subtract(const IntervalSet& x, const IntervalSet& y) {
  std::vector<Interval> out;
  for (const auto& p : x.pieces()) {
    QuadScalar cursor = p.l;
    for (const auto& q : y.pieces()) {
      if (q.r <= cursor) continue;
      if (q.l >= p.r) break;
      if (cursor < q.l) out.push_back({cursor, std::min(q.l, p.r)});
      cursor = std::max(cursor, q.r);
      if (cursor >= p.r) break;
    }
    if (cursor < p.r) out.push_back({cursor, p.r});
  }
  return IntervalSet(std::move(out));
}

bool iv_subset(const IntervalSet& x, const IntervalSet& y) {
  return iv_subtract(x, y).is_empty();
}

std::string print_interval_set(const IntervalSet& s) {
  if (s.is_empty()) return "{}";
  std::ostringstream out;
  for (std::size_t i = 0; i < s.pieces().size(); ++i) {
    if (i) out << " u ";
    out << print_interval(s.pieces()[i]);
  }
  return out.str();
}

PAMap::PAMap(IntervalSet domain, std::vector<AffinePiece> pieces)
    : domain_(std::move(domain)) {
  std::erase_if(pieces, [](const AffinePiece& p) { return p.dom.empty(); });
  std::sort(pieces.begin(), pieces.end(),
            [](const AffinePiece& x, const AffinePiece& y) { return x.dom.l < y.dom.l; });
  std::vector<Interval> doms;
  std::vector<Interval> images;
  for (const auto& p : pieces) {
    if (p.slope.sign() <= 0)
      throw Error("piecewise-affine map with non-increasing piece");
    doms.push_back(p.dom);
    images.push_back(p.image());
  }
  for (std::size_t i = 0; i + 1 < doms.size(); ++i)
    if (doms[i + 1].l < doms[i].r)
      throw Error("piecewise-affine map with overlapping pieces");
  if (IntervalSet(doms) != domain_)
    throw Error("piecewise-affine map pieces do not partition the domain");
  QuadScalar covered;
  for (const auto& im : images) covered += im.r - im.l;
  range_ = IntervalSet(std::move(images));
  if (range_.measure() != covered)
    throw Error("piecewise-affine map with overlapping images");
  pieces_ = std::move(pieces);
}

QuadScalar PAMap::apply(const QuadScalar& x) const {
  for (const auto& p : pieces_)
    if (p.dom.contains(x)) return p.apply(x);
  throw Error("point outside the domain of a piecewise-affine map");
}

IntervalSet PAMap::preimage(const IntervalSet& s) const {
  std::vector<Interval> out;
  for (const auto& p : pieces_) {
    const Interval im = p.image();
    for (const auto& target : s.pieces()) {
      Interval hit{std::max(im.l, target.l), std::min(im.r, target.r)};
      if (hit.empty()) continue;
      out.push_back({(hit.l - p.offset) / p.slope, (hit.r - p.offset) / p.slope});
    }
  }
  return IntervalSet(std::move(out));
}

PAMap PAMap::inverse() const {
  std::vector<AffinePiece> inv;
  inv.reserve(pieces_.size());
  for (const auto& p : pieces_) {
    const QuadScalar slope = QuadScalar(1) / p.slope;
    inv.push_back({p.image(), slope, -(p.offset * slope)});
  }
  return {range_, std::move(inv)};
}

PAMap pa_compose(const PAMap& f, const PAMap& g) {
  std::vector<AffinePiece> out;
  for (const auto& gp : g.pieces()) {
    const Interval gim = gp.image();
    for (const auto& fp : f.pieces()) {
      Interval hit{std::max(gim.l, fp.dom.l), std::min(gim.r, fp.dom.r)};
      if (hit.empty()) continue;
      Interval dom{(hit.l - gp.offset) / gp.slope, (hit.r - gp.offset) / gp.slope};
      out.push_back({dom, fp.slope * gp.slope, fp.slope * gp.offset + fp.offset});
    }
  }
  IntervalSet dom = g.preimage(f.domain());
  return {std::move(dom), std::move(out)};
}

PAMap affine_between(const Interval& from, const Interval& to) {
  if (from.empty() || to.empty())
    throw Error("affine bijection requires nonempty intervals");
  const QuadScalar slope = (to.r - to.l) / (from.r - from.l);
  return {IntervalSet(from), {{from, slope, to.l - slope * from.l}}};
}

FixedSet fixed_points(const PAMap& f) {
  FixedSet out;
  std::vector<Interval> intervals;
  for (const auto& p : f.pieces()) {
    if (p.slope == QuadScalar(1)) {
      if (p.offset.is_zero()) intervals.push_back(p.dom);
      continue;
    }
    const QuadScalar x = p.offset / (QuadScalar(1) - p.slope);
    if (p.dom.contains(x)) out.points.push_back(x);
  }
  out.intervals = IntervalSet(std::move(intervals));
  std::sort(out.points.begin(), out.points.end());
  return out;
}

}  // namespace cohnpath
