#include "support.hpp"

#include "ppwalk/errors.hpp"
#include "ppwalk/qseries.hpp"

#include <doctest.h>

#include <random>

using namespace ppwalk;
using qseries::QSeries;
using qseries::Standard;

namespace {

QSeries from_fixture(const std::string& id, std::size_t offset = 0) {
  auto c = test_support::rationals(test_support::fixture(id));
  c.insert(c.begin(), offset, Rational(0));
  return QSeries(c, c.size());
}

bool error_is(ErrorCode code, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_CASE("Delta and the hauptmodul from their products") {
  const QSeries d = qseries::standard_series(Standard::Delta, 4);
  CHECK(d.prec() == 4);
  CHECK(equal_to_shared_precision(d, from_fixture("delta.prec4")));
  CHECK(equal_to_shared_precision(qseries::standard_series(Standard::Delta, 11), from_fixture("delta.tau_1_10", 1)));
  CHECK(equal_to_shared_precision(qseries::standard_series(Standard::HauptmodulF, 8), from_fixture("hauptmodul.prefix")));

  const std::size_t prec = 40;
  const QSeries f = qseries::standard_series(Standard::HauptmodulF, prec);
  const QSeries delta = qseries::standard_series(Standard::Delta, prec);
  CHECK(equal_to_shared_precision(f * delta, qseries::v_p(delta, 2)));
}

TEST_CASE("Eisenstein series and theta") {
  const QSeries e4 = qseries::standard_series(Standard::E4, 6);
  CHECK(e4[0] == 1);
  CHECK(e4[1] == 240);
  CHECK(e4[2] == 2160);
  const QSeries e2 = qseries::standard_series(Standard::E2, 4);
  CHECK(e2[1] == -24);
  const QSeries th = qseries::standard_series(Standard::Theta, 10);
  CHECK(th[0] == 1);
  CHECK(th[1] == 2);
  CHECK(th[4] == 2);
  CHECK(th[9] == 2);
  CHECK(th[2] == 0);
  const QSeries a = qseries::standard_series(Standard::ALevel2, 4);
  CHECK(a[0] == 1);
  CHECK(a[1] == 24);
  const QSeries fs = qseries::standard_series(Standard::FSigmaOdd, 6);
  CHECK(fs[1] == 1);
  CHECK(fs[2] == 0);
  CHECK(fs[3] == 4);
  CHECK(fs[5] == 6);
  CHECK(qseries::divisor_sums(3, 5) == std::vector<Integer>{0, 1, 9, 28, 73});
}

TEST_CASE("Hecke operators on level 1 eigenforms") {
  const std::size_t prec = 80;
  const QSeries delta = qseries::standard_series(Standard::Delta, prec);
  const Rational tau2 = test_support::rational(test_support::fixture("hecke.t2_delta"));
  CHECK(qseries::u_p(delta, 2)[1] == tau2);
  CHECK(equal_to_shared_precision(qseries::hecke_t_p(delta, 12, 2), tau2 * delta));

  const QSeries e4 = qseries::standard_series(Standard::E4, 42);
  const QSeries t2e4 = qseries::hecke_t_p(e4, 4, 2);
  CHECK(t2e4.prec() >= 20);
  const Rational ev = test_support::rational(test_support::fixture("hecke.t2_e4"));
  CHECK(equal_to_shared_precision(t2e4, ev * e4));

  const QSeries t3 = qseries::hecke_t_p(delta, 12, 3);
  CHECK(equal_to_shared_precision(t3, Rational(252) * delta));
}

TEST_CASE("U_2 on the weight 5 eigenform prefix") {
  const QSeries f0 = from_fixture("f0.a1_a8", 1);
  const QSeries u = qseries::u_p(f0, 2);
  CHECK(u.prec() == 4);
  CHECK(equal_to_shared_precision(u, Rational(-4) * f0));
}

TEST_CASE("precision bookkeeping") {
  const QSeries a({1, 2, 3}, 10);
  const QSeries b = QSeries({1, 1}, 6).shifted(2);  // q^2 + q^3 + O(q^8)
  CHECK(b.prec() == 8);
  CHECK(b.order() == 2);
  CHECK((a * b).prec() == std::min<std::size_t>(10 + 2, 8 + 0));
  CHECK((a + b).prec() == 8);
  CHECK(qseries::u_p(a, 3).prec() == 3);
  CHECK(qseries::v_p(a, 3).prec() == 30);
  CHECK(qseries::v_p(a, 3)[3] == 2);
  CHECK(error_is(ErrorCode::InsufficientPrecision, [&] { (void)a[10]; }));
  CHECK(error_is(ErrorCode::InsufficientPrecision, [&] { (void)qseries::u_p(QSeries({1}, 1), 2); }));
  CHECK(error_is(ErrorCode::InsufficientPrecision, [&] { (void)a.truncated(11); }));
  CHECK(QSeries::zero(5).order() == 5);
}

TEST_CASE("inversion of units") {
  const QSeries a({1, 3, -2, 5}, 12);
  const QSeries inv = qseries::invert_unit(a);
  CHECK(equal_to_shared_precision(a * inv, QSeries::constant(1, 12)));
  CHECK(error_is(ErrorCode::NonUnitConstantTerm, [&] { qseries::invert_unit(QSeries({0, 1}, 4)); }));
}

TEST_CASE("text round trip and reduction") {
  const QSeries a({Rational(1, 3), 0, -7, Rational(22, 5)}, 6);
  const auto text = qseries::to_text(a);
  CHECK(text.rfind("# prec 6", 0) == 0);
  const QSeries b = qseries::from_text(text);
  CHECK(b.prec() == 6);
  CHECK(equal_to_shared_precision(a, b));
  CHECK(error_is(ErrorCode::ParseError, [] { qseries::from_text("# prec x\n"); }));

  const QSeries d = qseries::standard_series(Standard::Delta, 6);
  CHECK(qseries::reduce_mod(d, 8) == std::vector<unsigned long>{0, 1, 0, 4, 0, 6});
  CHECK_THROWS_AS(qseries::reduce_mod(a, 3), Error);
}

TEST_CASE("property: ring axioms on random series") {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<long> c(-9, 9);
  std::uniform_int_distribution<std::size_t> len(1, 14), sh(0, 3);
  auto rnd = [&] {
    std::vector<Rational> v(len(rng));
    for (auto& x : v) x = Rational(c(rng), 1 + (c(rng) & 3));
    for (auto& x : v) x.canonicalize();
    return QSeries(v, v.size()).shifted(sh(rng));
  };
  for (int t = 0; t < 300; ++t) {
    const QSeries a = rnd(), b = rnd(), d = rnd();
    CHECK(equal_to_shared_precision(a * b, b * a));
    CHECK(equal_to_shared_precision((a * b) * d, a * (b * d)));
    CHECK(equal_to_shared_precision(a * (b + d), a * b + a * d));
    CHECK(equal_to_shared_precision(qseries::pow(a, 3), a * a * a));
    CHECK(equal_to_shared_precision(qseries::u_p(qseries::v_p(a, 2), 2), a));
  }
}
