#include "support.hpp"

#include "ppwalk/errors.hpp"
#include "ppwalk/padic.hpp"
#include "ppwalk/poly.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace ppwalk;
using padic::Valuation;

TEST_CASE("valuations of integers and rationals") {
  CHECK(padic::val(Rational(0), 2).is_infinite());
  CHECK(padic::val(Rational(12), 2) == Valuation(2));
  CHECK(padic::val(Rational(12), 3) == Valuation(1));
  CHECK(padic::val(Rational(3, 8), 2) == Valuation(-3));
  CHECK(padic::val(Rational(-250, 7), 5) == Valuation(3));
  CHECK(padic::val_int(Integer(-96), 2) == 5);

  Integer x;
  mpz_ui_pow_ui(x.get_mpz_t(), 5, 10);
  x -= 1;
  CHECK(padic::val_int(x, 2) == test_support::fixture("val.5pow10_minus_1").get<long>());
  CHECK_THROWS_AS(padic::val(Rational(4), 6), Error);
}

TEST_CASE("valuation ordering puts infinity last") {
  CHECK(Valuation(3) < Valuation::infinity());
  CHECK(Valuation(Rational(-1, 2)) < Valuation(0));
  CHECK(Valuation::infinity() == Valuation::infinity());
  CHECK(Valuation::infinity().str() == "inf");
  CHECK_THROWS_AS(Valuation::infinity().value(), Error);
}

TEST_CASE("primality") {
  CHECK(padic::is_prime(2));
  CHECK(padic::is_prime(65521));
  CHECK_FALSE(padic::is_prime(1));
  CHECK_FALSE(padic::is_prime(91));
}

TEST_CASE("refinement polygons") {
  const std::vector<Rational> delta{2048, 24, 1};
  CHECK(padic::newton_slopes(delta, 2).slopes == test_support::rationals(test_support::fixture("newton.delta_refinement")));

  const Rational a2 = test_support::rational(test_support::fixture("s16.a2"));
  const std::vector<Rational> s16{32768, -a2, 1};
  CHECK(padic::newton_slopes(s16, 2).slopes == test_support::rationals(test_support::fixture("newton.s16_refinement")));

  const auto poly = padic::NewtonPolygon::of_coefficients(delta, 2);
  REQUIRE(poly.vertices().size() == 3);
  CHECK(poly.segments()[0] == padic::Segment{Rational(-8), 1});
  CHECK(poly.segments()[1] == padic::Segment{Rational(-3), 1});
}

TEST_CASE("zero roots and degenerate input") {
  const std::vector<Rational> f{0, 0, 2, 1};  // X^3 + 2X^2
  const auto r = padic::newton_slopes(f, 2);
  CHECK(r.zero_roots == 2);
  CHECK(r.slopes == std::vector<Rational>{1});

  const std::vector<Rational> trailing{4, 1, 0, 0};
  CHECK(padic::newton_slopes(trailing, 2).slopes == std::vector<Rational>{2});

  const std::vector<Rational> zero{0, 0};
  CHECK_THROWS_AS(padic::newton_slopes(zero, 2), Error);
  try {
    padic::newton_slopes(zero, 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyPolynomial);
  }
}

TEST_CASE("collinear points are merged into one segment") {
  const auto poly = padic::NewtonPolygon::from_points({{2, Valuation(0)}, {0, Valuation(4)}, {1, Valuation(2)}});
  CHECK(poly.vertices().size() == 2);
  REQUIRE(poly.segments().size() == 1);
  CHECK(poly.segments()[0].length == 2);
  CHECK(poly.segments()[0].slope == -2);
}

TEST_CASE("fractional slopes") {
  const std::vector<Rational> f{2, 0, 1};  // X^2 + 2: both roots of valuation 1/2
  CHECK(padic::newton_slopes(f, 2).slopes == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  const std::vector<Rational> g{Rational(1, 8), 1, 1};  // (1, 0) lies above the hull
  CHECK(padic::newton_slopes(g, 2).slopes == std::vector<Rational>{Rational(-3, 2), Rational(-3, 2)});
  const std::vector<Rational> h{8, 1, 4};  // two segments: roots of valuation 3 and -2
  auto got = padic::newton_slopes(h, 2).slopes;
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<Rational>{-2, 3});
}

TEST_CASE("property: valuation is a homomorphism with the ultrametric bound") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-100000, 100000), den(1, 5000);
  for (unsigned p : {2u, 3u, 5u, 7u}) {
    for (int t = 0; t < 2000; ++t) {
      Rational x(num(rng), den(rng)), y(num(rng), den(rng));
      x.canonicalize();
      y.canonicalize();
      if (x == 0 || y == 0) continue;
      const auto vx = padic::val(x, p), vy = padic::val(y, p);
      CHECK(padic::val(x * y, p) == Valuation(vx.value() + vy.value()));
      const auto vs = padic::val(x + y, p);
      CHECK(vs >= std::min(vx, vy));
      if (vx != vy) CHECK(vs == std::min(vx, vy));
    }
  }
}

TEST_CASE("property: slopes of a product are the union of slopes") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> coef(-64, 64), deg(1, 5);
  for (unsigned p : {2u, 3u}) {
    for (int t = 0; t < 300; ++t) {
      auto random_poly = [&] {
        poly::Polynomial f(deg(rng) + 1);
        for (auto& c : f) c = coef(rng);
        if (f.front() == 0) f.front() = 1;
        if (f.back() == 0) f.back() = 3;
        return f;
      };
      const auto f = random_poly(), g = random_poly();
      auto expected = padic::newton_slopes(f, p).slopes;
      const auto sg = padic::newton_slopes(g, p).slopes;
      expected.insert(expected.end(), sg.begin(), sg.end());
      std::sort(expected.begin(), expected.end());
      CHECK(padic::newton_slopes(poly::multiply(f, g), p).slopes == expected);
    }
  }
}
