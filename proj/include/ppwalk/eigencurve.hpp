#pragma once

#include "ppwalk/rational.hpp"
#include "ppwalk/weightspace.hpp"

namespace ppwalk::eigencurve {

using weightspace::WeightCharacter;

// The data of a classical point on the 2-adic tame level 1 eigencurve that
// the annulus walk consumes: weight character, slope and two flags.
struct Point {
  WeightCharacter wc;
  Rational slope;
  bool pc = true;          // potentially crystalline (not a twist of Steinberg)
  bool classical = true;   // claimed classical

  friend bool operator==(const Point& a, const Point& b) {
    return a.wc == b.wc && a.slope == b.slope && a.pc == b.pc && a.classical == b.classical;
  }
};

// Throws InvalidArgument / CenterOfWeightSpace / NonIntegralIndex when the
// point breaks a model invariant.
void validate(const Point& pt);

// i with slope = i * v(w); throws NotInBoundary or NonIntegralIndex.
long annulus_index(const Point& pt);

// slope' = k - 1 - slope on the same weight character. Throws
// NotPotentiallyCrystalline, or SlopeOutOfRange when slope > k - 1.
Point twin(const Point& pt);

// annulus_index(pt) + annulus_index(twin(pt)) == (k - 1) / v(w), with that
// quotient integral.
bool twin_index_sum_check(const Point& pt);

enum class Classicality { Ordinary, NumericallyNonCritical, Neither };
const char* classicality_name(Classicality c);

struct Classification {
  Classicality kind;
  bool numerically_non_critical;  // slope < k - 1, reported alongside ordinarity
};

Classification classify(const Rational& slope, long k);
inline Classification classify(const Point& pt) { return classify(pt.slope, pt.wc.k); }

// i * v(w); throws NotInBoundary.
Rational bk_predicted_slope(long i, const WeightCharacter& wc);

}  // namespace ppwalk::eigencurve
