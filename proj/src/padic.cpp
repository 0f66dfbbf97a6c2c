#include "ppwalk/padic.hpp"

#include "ppwalk/errors.hpp"

#include <algorithm>

namespace ppwalk::padic {

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

void require_prime(unsigned long p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
}

}  // namespace

const Rational& Valuation::value() const {
  if (infinite_) throw Error(ErrorCode::InvalidArgument, "valuation is infinite");
  return value_;
}

std::string Valuation::str() const {
  if (infinite_) return "inf";
  return is_integral(value_) ? value_.get_num().get_str() : value_.get_str();
}

std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
  const int c = cmp(a.value_, b.value_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

long val_int(const Integer& x, unsigned long p) {
  if (x == 0) throw Error(ErrorCode::InvalidArgument, "valuation of zero is infinite");
  if (p == 2) return static_cast<long>(mpz_scan1(x.get_mpz_t(), 0));
  Integer pz(p);
  Integer rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t()));
}

Valuation val(const Rational& x, unsigned long p) {
  require_prime(p);
  if (x == 0) return Valuation::infinity();
  return Valuation(val_int(x.get_num(), p) - val_int(x.get_den(), p));
}

NewtonPolygon NewtonPolygon::from_points(std::vector<Point> points) {
  std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
    return a.first != b.first ? a.first < b.first : a.second < b.second;
  });

  NewtonPolygon poly;
  poly.points_ = points;

  // Lowest finite value at each abscissa.
  std::vector<std::pair<long, Rational>> finite;
  for (const auto& [x, v] : points) {
    if (v.is_infinite()) continue;
    if (!finite.empty() && finite.back().first == x) continue;
    finite.emplace_back(x, v.value());
  }

  // Monotone chain: drop the middle vertex while the turn is not strictly convex.
  auto& hull = poly.vertices_;
  for (const auto& pt : finite) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const Rational lhs = (b.second - a.second) * (pt.first - a.first);
      const Rational rhs = (pt.second - a.second) * (b.first - a.first);
      if (lhs >= rhs)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }

  for (std::size_t i = 1; i < hull.size(); ++i) {
    const long len = hull[i].first - hull[i - 1].first;
    poly.segments_.push_back({Rational(hull[i].second - hull[i - 1].second) / len, len});
  }
  return poly;
}

NewtonPolygon NewtonPolygon::of_coefficients(std::span<const Rational> coeffs, unsigned long p) {
  require_prime(p);
  std::vector<Point> pts;
  pts.reserve(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) pts.emplace_back(static_cast<long>(i), val(coeffs[i], p));
  return from_points(std::move(pts));
}

RootValuations newton_slopes(std::span<const Rational> coeffs, unsigned long p) {
  require_prime(p);
  std::size_t top = coeffs.size();
  while (top > 0 && coeffs[top - 1] == 0) --top;
  if (top == 0) throw Error(ErrorCode::EmptyPolynomial, "all coefficients are zero");
  const auto trimmed = coeffs.first(top);

  RootValuations out;
  while (trimmed[out.zero_roots] == 0) ++out.zero_roots;

  const auto polygon = NewtonPolygon::of_coefficients(trimmed, p);
  // Segments run left to right with increasing slope; root valuations are the
  // negated slopes, so walk right to left for ascending order.
  const auto& segs = polygon.segments();
  for (auto it = segs.rbegin(); it != segs.rend(); ++it)
    for (long i = 0; i < it->length; ++i) out.slopes.push_back(-it->slope);
  return out;
}

}  // namespace ppwalk::padic
