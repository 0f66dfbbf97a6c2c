#include "ppwalk/eigencurve.hpp"

#include "ppwalk/errors.hpp"

namespace ppwalk::eigencurve {

namespace {

std::string describe(const Point& pt) {
  return weightspace::to_string(pt.wc) + ",slope=" + pt.slope.get_str();
}

}  // namespace

void validate(const Point& pt) {
  weightspace::validate(pt.wc);
  if (pt.slope < 0) throw Error(ErrorCode::InvalidArgument, "negative slope at " + describe(pt));
  if (weightspace::in_boundary(pt.wc)) annulus_index(pt);
  if (pt.classical && classify(pt).kind == Classicality::Neither)
    throw Error(ErrorCode::InvalidArgument, "classical claim without a classicality criterion at " + describe(pt));
}

long annulus_index(const Point& pt) {
  if (!weightspace::in_boundary(pt.wc))
    throw Error(ErrorCode::NotInBoundary, weightspace::to_string(pt.wc) + " is outside |8| < |w| < 1");
  const Rational i = pt.slope / weightspace::w_valuation(pt.wc).value();
  if (!is_integral(i) || i <= 0)
    throw Error(ErrorCode::NonIntegralIndex, "slope/v(w) = " + i.get_str() + " at " + describe(pt));
  return i.get_num().get_si();
}

Point twin(const Point& pt) {
  if (!pt.pc) throw Error(ErrorCode::NotPotentiallyCrystalline, "twin is defined on pc points only");
  const Rational k1 = pt.wc.k - 1;
  if (pt.slope < 0 || pt.slope > k1)
    throw Error(ErrorCode::SlopeOutOfRange, "slope must lie in [0, k-1] at " + describe(pt));
  Point t{pt.wc, k1 - pt.slope, true, pt.classical};
  t.classical = pt.classical && classify(t).kind != Classicality::Neither;
  return t;
}

bool twin_index_sum_check(const Point& pt) {
  const long i = annulus_index(pt);
  const long j = annulus_index(twin(pt));
  const Rational total = Rational(pt.wc.k - 1) / weightspace::w_valuation(pt.wc).value();
  return is_integral(total) && total == i + j;
}

const char* classicality_name(Classicality c) {
  switch (c) {
    case Classicality::Ordinary: return "ordinary";
    case Classicality::NumericallyNonCritical: return "numerically_non_critical";
    case Classicality::Neither: return "neither";
  }
  return "?";
}

Classification classify(const Rational& slope, long k) {
  const bool nnc = slope >= 0 && slope < k - 1;
  if (slope == 0) return {Classicality::Ordinary, nnc};
  return {nnc ? Classicality::NumericallyNonCritical : Classicality::Neither, nnc};
}

Rational bk_predicted_slope(long i, const WeightCharacter& wc) {
  if (!weightspace::in_boundary(wc))
    throw Error(ErrorCode::NotInBoundary, weightspace::to_string(wc) + " is outside |8| < |w| < 1");
  if (i < 1) throw Error(ErrorCode::InvalidArgument, "annulus index must be positive");
  return i * weightspace::w_valuation(wc).value();
}

}  // namespace ppwalk::eigencurve
