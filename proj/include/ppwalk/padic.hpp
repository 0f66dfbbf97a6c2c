#pragma once

#include "ppwalk/rational.hpp"

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ppwalk::padic {

bool is_prime(unsigned long n);

// A p-adic valuation: an exact rational, or +infinity for the valuation of 0.
class Valuation {
 public:
  Valuation() : infinite_(true) {}
  Valuation(Rational v) : infinite_(false), value_(std::move(v)) {}  // NOLINT(implicit)
  Valuation(long v) : infinite_(false), value_(v) {}                 // NOLINT(implicit)

  static Valuation infinity() { return Valuation(); }

  bool is_infinite() const { return infinite_; }
  // Throws InvalidArgument on infinity.
  const Rational& value() const;

  std::string str() const;

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b);

 private:
  bool infinite_;
  Rational value_;
};

// v_p(x). Requires p prime.
Valuation val(const Rational& x, unsigned long p);
// v_p(x) for nonzero integers, as a machine integer.
long val_int(const Integer& x, unsigned long p);

struct Segment {
  Rational slope;
  long length;
  friend bool operator==(const Segment&, const Segment&) = default;
};

// Lower convex hull of points (x, v). Points with infinite v are kept in
// points() but play no part in the hull.
class NewtonPolygon {
 public:
  using Point = std::pair<long, Valuation>;

  static NewtonPolygon from_points(std::vector<Point> points);
  // Points (i, v_p(c_i)) for a coefficient list c_0..c_d.
  static NewtonPolygon of_coefficients(std::span<const Rational> coeffs, unsigned long p);

  const std::vector<Point>& points() const { return points_; }
  const std::vector<Segment>& segments() const { return segments_; }
  // Vertices of the hull, left to right.
  const std::vector<std::pair<long, Rational>>& vertices() const { return vertices_; }

 private:
  std::vector<Point> points_;
  std::vector<std::pair<long, Rational>> vertices_;
  std::vector<Segment> segments_;
};

struct RootValuations {
  // Valuations of the nonzero roots, ascending, with multiplicity.
  std::vector<Rational> slopes;
  // Multiplicity of X = 0 as a root (index of the lowest nonzero coefficient).
  std::size_t zero_roots = 0;
};

// Root valuations of c_0 + c_1 X + ... + c_d X^d from its Newton polygon.
// Trailing zero coefficients are ignored; throws EmptyPolynomial if all are 0.
RootValuations newton_slopes(std::span<const Rational> coeffs, unsigned long p);

}  // namespace ppwalk::padic
