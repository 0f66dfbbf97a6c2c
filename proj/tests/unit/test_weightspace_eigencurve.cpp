#include "support.hpp"

#include "ppwalk/eigencurve.hpp"
#include "ppwalk/errors.hpp"
#include "ppwalk/weightspace.hpp"

#include <doctest.h>

#include <random>

using namespace ppwalk;
using eigencurve::Point;
using weightspace::WeightCharacter;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

std::pair<long, long> split2(const std::string& key, char sep = ',') {
  const auto c = key.find(sep);
  return {std::stol(key.substr(0, c)), std::stol(key.substr(c + 1))};
}

Point pt(long k, long m, Rational s) { return Point{{k, m}, std::move(s), true, true}; }

}  // namespace

TEST_CASE("w valuations") {
  for (const auto& [key, want] : test_support::fixture("wval.examples").items()) {
    INFO(key);
    const auto [k, m] = split2(key);
    const WeightCharacter wc{k, m};
    CHECK(weightspace::w_valuation(wc).value() == test_support::rational(want.at("v")));
    CHECK(weightspace::in_boundary(wc) == want.at("in_boundary").get<bool>());
  }
  CHECK(weightspace::w_valuation({5, 0}).value() == test_support::rational(test_support::fixture("wval.odd_weight")));
  for (const auto& [key, want] : test_support::fixture("wval.root_of_unity").items()) {
    const auto [k, m] = split2(key);
    CHECK(weightspace::w_valuation({k, m}).value() == test_support::rational(want));
  }
  CHECK(weightspace::w_valuation({34, 0}).value() == 7);
  CHECK(code_of([] { weightspace::w_valuation({2, 0}); }) == ErrorCode::CenterOfWeightSpace);
  CHECK(code_of([] { weightspace::validate({1, 0}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { weightspace::validate({4, -1}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("weight characters print and parse") {
  const WeightCharacter wc{7, 3};
  CHECK(weightspace::to_string(wc) == "k=7,m=3");
  CHECK(weightspace::parse_weight_character("k=7,m=3") == wc);
  CHECK(code_of([] { weightspace::parse_weight_character("k=7"); }) == ErrorCode::ParseError);
}

TEST_CASE("annulus index") {
  CHECK(eigencurve::annulus_index(pt(5, 0, 2)) == 1);
  for (long m = 2; m <= 10; ++m) {
    const Rational s = 1 - rational_pow(2, -m);
    CHECK(eigencurve::annulus_index(pt(2, m + 1, s)) == (1L << m) - 1);
  }
  CHECK(code_of([] { eigencurve::annulus_index(pt(12, 0, 3)); }) == ErrorCode::NotInBoundary);
  CHECK(code_of([] { eigencurve::annulus_index(pt(5, 0, 3)); }) == ErrorCode::NonIntegralIndex);
  CHECK(code_of([] { eigencurve::annulus_index(pt(5, 0, 0)); }) == ErrorCode::NonIntegralIndex);
}

TEST_CASE("twins") {
  const Point f0 = pt(5, 0, 2);
  CHECK(eigencurve::twin(f0) == f0);
  for (const auto& [key, want] : test_support::fixture("twin.index_sums").items()) {
    INFO(key);
    const auto [k, s] = split2(key);
    const Point p = pt(k, 0, s);
    CHECK(eigencurve::annulus_index(p) == test_support::rational(want.at("index")));
    CHECK(eigencurve::annulus_index(eigencurve::twin(p)) == test_support::rational(want.at("twin_index")));
    CHECK(eigencurve::twin_index_sum_check(p));
  }
  Point not_pc = f0;
  not_pc.pc = false;
  CHECK(code_of([&] { eigencurve::twin(not_pc); }) == ErrorCode::NotPotentiallyCrystalline);
  CHECK(code_of([] { eigencurve::twin(Point{{5, 0}, 6, true, false}); }) == ErrorCode::SlopeOutOfRange);
}

TEST_CASE("classicality") {
  CHECK(eigencurve::classify(0, 12).kind == eigencurve::Classicality::Ordinary);
  CHECK(eigencurve::classicality_name(eigencurve::classify(0, 12).kind) ==
        test_support::fixture("classify.slope0").get<std::string>());
  CHECK(eigencurve::classify(3, 12).kind == eigencurve::Classicality::NumericallyNonCritical);
  CHECK(eigencurve::classify(11, 12).kind == eigencurve::Classicality::Neither);
  CHECK(code_of([] { eigencurve::validate(Point{{12, 0}, 11, true, true}); }) == ErrorCode::InvalidArgument);
  CHECK_NOTHROW(eigencurve::validate(Point{{12, 0}, 11, true, false}));
}

TEST_CASE("predicted boundary slopes") {
  const auto& bk = test_support::fixture("bk.predicted_slopes");
  CHECK(eigencurve::bk_predicted_slope(1, {5, 0}) == test_support::rational(bk.at("1;5,0")));
  CHECK(eigencurve::bk_predicted_slope(3, {2, 4}) == test_support::rational(bk.at("3;2,4")));
  CHECK(code_of([] { eigencurve::bk_predicted_slope(1, {12, 0}); }) == ErrorCode::NotInBoundary);
}

TEST_CASE("property: the twin is an involution and index sums are integral") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> kdist(3, 201), mdist(0, 8);
  long checked = 0;
  while (checked < 5000) {
    long k = kdist(rng);
    const long m = mdist(rng);
    if (m == 0 && k % 2 == 0) ++k;
    const WeightCharacter wc{k, m};
    const Rational v = weightspace::w_valuation(wc).value();
    const Rational top = Rational(k - 1) / v;  // number of boundary slopes i v with i v < k - 1
    if (!is_integral(top) || top < 2) continue;
    std::uniform_int_distribution<long> idist(1, top.get_num().get_si() - 1);
    const Point p{wc, idist(rng) * v, true, true};
    const Point t = eigencurve::twin(p);
    CHECK(eigencurve::twin(t) == p);
    CHECK(eigencurve::annulus_index(p) + eigencurve::annulus_index(t) == top);
    CHECK(eigencurve::twin_index_sum_check(p));
    ++checked;
  }
}
