#include "support.hpp"

#include "ppwalk/errors.hpp"
#include "ppwalk/pingpong.hpp"
#include "ppwalk/serialize.hpp"

#include <doctest.h>

#include <algorithm>

using namespace ppwalk;
using pingpong::Certificate;
using pingpong::MoveKind;

namespace {

bool has_code(const std::vector<pingpong::Violation>& vs, const std::string& code) {
  return std::any_of(vs.begin(), vs.end(), [&](const auto& v) { return v.code == code; });
}

std::pair<long, long> split2(const std::string& key) {
  const auto c = key.find(',');
  return {std::stol(key.substr(0, c)), std::stol(key.substr(c + 1))};
}

}  // namespace

TEST_CASE("first step") {
  for (const auto& [key, want] : test_support::fixture("first_step.examples").items()) {
    INFO(key);
    const auto [i, m] = split2(key);
    const auto fs = pingpong::first_step(i, m);
    CHECK(fs.k_prime == want.at("k_prime").get<long>());
    CHECK(fs.z_prime.slope == test_support::rational(want.at("slope")));
    CHECK(fs.z_doubleprime.slope == test_support::rational(want.at("twin_slope")));
    CHECK(eigencurve::annulus_index(fs.z_prime) == test_support::rational(want.at("index")));
    CHECK(eigencurve::annulus_index(fs.z_doubleprime) == test_support::rational(want.at("twin_index")));
    CHECK(fs.moves.size() == 2);
  }
  try {
    pingpong::first_step(3, 2);
    FAIL("expected ConstraintViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConstraintViolated);
  }
}

TEST_CASE("induction step") {
  for (const auto& [key, want] : test_support::fixture("induction_step.examples").items()) {
    INFO(key);
    const long m = std::stol(key);
    const auto st = pingpong::induction_step(m);
    CHECK(st.z_doubleprime.slope == test_support::rational(want.at("slope")));
    CHECK(st.z_prime.slope == test_support::rational(want.at("twin_slope")));
    CHECK(eigencurve::annulus_index(st.z_doubleprime) == test_support::rational(want.at("index")));
    CHECK(eigencurve::annulus_index(st.z_prime) == 1);
  }
  for (const auto& [key, want] : test_support::fixture("induction_step.slope_formula").items())
    CHECK(pingpong::induction_step(std::stol(key)).z_doubleprime.slope == test_support::rational(want));
  const auto id = pingpong::induction_step(1);
  CHECK(id.z_prime == id.z_doubleprime);
  REQUIRE(id.moves.size() == 1);
  CHECK(id.moves[0].from == id.moves[0].to);
}

TEST_CASE("connect produces checkable walks") {
  for (auto [a, b] : std::vector<std::pair<long, long>>{{4, 1}, {2, 5}, {4, 7}, {1, 1}, {1, 9}, {63, 64}}) {
    INFO(a << " -> " << b);
    const auto cert = pingpong::connect(a, b);
    CHECK(cert.moves.size() <= 10);
    CHECK(cert.moves.front().kind == MoveKind::Start);
    CHECK(eigencurve::annulus_index(cert.moves.front().from) == a);
    CHECK(eigencurve::annulus_index(cert.moves.back().to) == b);
    const auto violations = pingpong::verify_certificate(cert);
    for (const auto& v : violations) INFO(v.move << " " << v.code << " " << v.message);
    CHECK(violations.empty());
  }
  // X_4 escapes through X_7 at weight 23.
  const auto c41 = pingpong::connect(4, 1);
  CHECK(c41.moves[1].to.wc.k == 23);
  CHECK(eigencurve::annulus_index(c41.moves[1].to) == 7);
}

TEST_CASE("certificates survive a JSON round trip") {
  const auto cert = pingpong::connect(6, 3);
  const auto j = serialize::to_json(cert);
  CHECK(serialize::certificate_from_json(j) == cert);
  CHECK(serialize::certificate_from_json(nlohmann::json::parse(j.dump())) == cert);
}

TEST_CASE("checker rejects broken certificates") {
  const Certificate good = pingpong::connect(4, 7);

  Certificate c = good;
  c.assumptions.erase(std::remove_if(c.assumptions.begin(), c.assumptions.end(),
                                     [](const auto& a) { return a.status == "axiom"; }),
                      c.assumptions.end());
  CHECK(has_code(pingpong::verify_certificate(c), "MissingAxiom"));

  c = good;
  c.moves[2].to.slope += 1;
  CHECK(!pingpong::verify_certificate(c).empty());

  c = good;
  c.end_index = 6;
  CHECK(has_code(pingpong::verify_certificate(c), "EndpointMismatch"));

  c = good;
  c.moves[1].from.pc = false;
  c.moves[0].to.pc = false;
  c.moves[0].from.pc = false;
  CHECK(has_code(pingpong::verify_certificate(c), "NotPotentiallyCrystalline"));

  c = good;
  std::swap(c.moves[0], c.moves[1]);
  CHECK(has_code(pingpong::verify_certificate(c), "BadStart"));

  c = good;
  c.moves.clear();
  CHECK(has_code(pingpong::verify_certificate(c), "Empty"));
}

TEST_CASE("seed regularity assumptions") {
  pingpong::ConnectOptions opts;
  opts.start_seed = pingpong::Seed{-24, 12, 9};
  opts.end_seed = pingpong::Seed{-24, 12, 9};
  const auto ok = pingpong::connect(2, 3, opts);
  CHECK(pingpong::verify_certificate(ok).empty());
  CHECK(std::any_of(ok.assumptions.begin(), ok.assumptions.end(), [](const auto& a) { return a.status == "discharged"; }));

  // alpha/beta of order 3 cannot be 4-regular.
  opts.start_seed = pingpong::Seed{-4, 5, 4};
  const auto bad = pingpong::connect(2, 3, opts);
  CHECK(has_code(pingpong::verify_certificate(bad), "RefutedAssumption"));
}

TEST_CASE("points with equal refinement slopes need an explicit regularity assumption") {
  const eigencurve::Point f0{{5, 0}, 2, true, true};
  Certificate c = pingpong::connect(1, 1);
  const eigencurve::Point seed = c.moves[0].to;
  c.moves = {{MoveKind::Start, seed, seed, pingpong::Justification::FirstStep},
             {MoveKind::WithinAnnulus, seed, f0, pingpong::Justification::Propagation},
             {MoveKind::WithinAnnulus, f0, f0, pingpong::Justification::InductionStep}};
  CHECK(has_code(pingpong::verify_certificate(c), "NotRegular"));
  c.assumptions.push_back({"n_regular_point:k=5,m=0,slope=2/1", "assumed", ""});
  CHECK(pingpong::verify_certificate(c).empty());
}

TEST_CASE("assumption statuses are checked") {
  const Certificate good = pingpong::connect(3, 5);
  auto with_status = [&](const std::string& id, const std::string& status) {
    Certificate c = good;
    for (auto& a : c.assumptions)
      if (a.id == id) a.status = status;
    return pingpong::verify_certificate(c);
  };
  CHECK(!with_status("local_image_contains_sl2", "discharged").empty());
  CHECK(!with_status("boundary_slope_law", "assumed").empty());
  CHECK(!with_status("start_seed_n_regular", "axiom").empty());
  CHECK(!with_status("start_seed_n_regular", "discharged").empty());
  CHECK(!with_status("end_seed_n_regular", "unknown").empty());

  Certificate c = good;
  c.assumptions.pop_back();
  CHECK(pingpong::verify_certificate(c).empty());  // seeds are optional
  c.assumptions.erase(c.assumptions.begin() + 1);
  CHECK(has_code(pingpong::verify_certificate(c), "MissingAssumption"));

  pingpong::ConnectOptions opts;
  opts.start_seed = pingpong::Seed{-24, 12, 9};
  Certificate seeded = pingpong::connect(3, 5, opts);
  for (auto& a : seeded.assumptions)
    if (a.id == "start_seed_n_regular") a.status = "refuted";
  CHECK(has_code(pingpong::verify_certificate(seeded), "BadAssumption"));
}

TEST_CASE("justifications are tied to move kinds") {
  const Certificate good = pingpong::connect(2, 6);
  Certificate c = good;
  c.moves[0].justification = pingpong::Justification::InductionStep;
  CHECK(has_code(pingpong::verify_certificate(c), "BadStartPoint"));
  c = good;
  c.moves[1].justification = pingpong::Justification::SlopeOfTwinPoint;
  CHECK(has_code(pingpong::verify_certificate(c), "BadJustification"));
  c = good;
  c.moves[2].justification = pingpong::Justification::InductionStep;
  CHECK(has_code(pingpong::verify_certificate(c), "IdentityExpected"));

  Certificate id = pingpong::connect(1, 1);
  REQUIRE(id.moves.size() == 2);
  id.moves[1].justification = pingpong::Justification::Propagation;
  CHECK(has_code(pingpong::verify_certificate(id), "BadJustification"));

  // A standalone induction step starts from its own z''.
  const auto st = pingpong::induction_step(3);
  CHECK(st.moves[0].kind == MoveKind::Start);
  CHECK(st.moves[0].justification == pingpong::Justification::InductionStep);
}
