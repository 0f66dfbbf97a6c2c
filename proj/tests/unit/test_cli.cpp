#include "support.hpp"

#include "ppwalk/cache.hpp"
#include "ppwalk/errors.hpp"
#include "ppwalk/serialize.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace ppwalk;
using serialize::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(PPWALK_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("ppwalk-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("error classes map onto exit codes") {
  CHECK(error_class(ErrorCode::ParityError) == ErrorClass::Precondition);
  CHECK(error_class(ErrorCode::FixtureMismatch) == ErrorClass::Verification);
  CHECK(error_class(ErrorCode::ResidualNonzero) == ErrorClass::InvariantBreach);
  CHECK(error_class(ErrorCode::DependentGenerators) == ErrorClass::InvariantBreach);
  CHECK(std::string(Error(ErrorCode::NotInBoundary, "x").what()) == "NotInBoundary: x");
}

TEST_CASE("JSON round trips") {
  const eigencurve::Point p{{9, 0}, Rational(6), true, false};
  CHECK(serialize::point_from_json(json::parse(serialize::to_json(p).dump())) == p);

  const qseries::QSeries s({Rational(1, 2), 0, -3}, 7);
  const auto s2 = serialize::qseries_from_json(serialize::to_json(s));
  CHECK(s2.prec() == 7);
  CHECK(qseries::equal_to_shared_precision(s, s2));

  const auto b = spaces::basis_for_operators(spaces::Level::Gamma0_2, 8, 2);
  const auto m = spaces::operator_matrix(spaces::HeckeOperator::u2(), b);
  const json jb = serialize::to_json(b, m);
  const auto b2 = serialize::basis_from_json(jb);
  CHECK(b2.id() == b.id());
  REQUIRE(b2.dim() == b.dim());
  for (std::size_t i = 0; i < b.dim(); ++i) CHECK(qseries::equal_to_shared_precision(b.basis[i], b2.basis[i]));
  CHECK(serialize::matrix_from_json(jb.at("matrix")) == m.entries);

  overconvergent::SlopeReport r{4, {0, 3, 7, 13}, 0, overconvergent::Stabilization{8, 4}};
  const auto r2 = serialize::slope_report_from_json(serialize::to_json(r));
  CHECK(r2.slopes == r.slopes);
  CHECK(r2.stabilization->stable_prefix == 4);

  CHECK_THROWS_AS(serialize::point_from_json(json{{"k", 5}}), Error);
  CHECK_THROWS_AS(serialize::rational_from_json(json("1/0")), Error);
  CHECK_THROWS_AS(serialize::certificate_from_json(json::object()), Error);
}

TEST_CASE("cache entries: hit, key isolation and eviction") {
  const fs::path dir = scratch_dir("cache");
  cache::Cache c(dir);
  const cache::CacheKey k1{"slopes", "sl2z", 12, "t2", 0, "1"};
  cache::CacheKey k2 = k1;
  k2.version = "2";
  CHECK(k1.filename() != k2.filename());
  CHECK(!c.get(k1));
  c.put(k1, json{{"x", 1}});
  REQUIRE(c.get(k1));
  CHECK(*c.get(k1) == json{{"x", 1}});
  CHECK(!c.get(k2));

  std::ofstream(dir / k1.filename()) << "{\"key\": \"truncated";
  CHECK(!c.get(k1));
  CHECK(c.evicted() == 1);
  CHECK(!fs::exists(dir / k1.filename()));

  // A payload edited behind the cache's back fails its digest.
  c.put(k1, json{{"x", 1}});
  {
    std::ifstream in(dir / k1.filename());
    json entry = json::parse(in);
    entry["payload"]["x"] = 2;
    std::ofstream(dir / k1.filename()) << entry.dump();
  }
  CHECK(!c.get(k1));
  CHECK(c.evicted() == 2);
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() == ".json");
  fs::remove_all(dir);
}

TEST_CASE("command line: documented invocations") {
  const Run s = run("slopes --level sl2z --k 12 --op t2");
  CHECK(s.code == 0);
  const json js = json::parse(s.out);
  CHECK(js["charpoly"] == "X + 24");
  CHECK(js["slopes"][0]["slope"] == "3/1");
  CHECK(js["refinements"][0]["slopes"] == json{"3/1", "8/1"});

  const json g = json::parse(run("slopes --level gamma0_2 --k 12 --op u2").out);
  std::vector<std::string> slopes;
  for (const auto& r : g["slopes"]) slopes.push_back(r["slope"]);
  CHECK(slopes == std::vector<std::string>{"0/1", "3/1", "8/1", "11/1"});

  CHECK(run("slopes --level gamma1_4 --k 5 --op u2 --csv").out.find(",2/1,") != std::string::npos);
  CHECK(run("nregular -24 12 2 9").out == "true\n");
  CHECK(run("wval 5 0").out == "2, in_boundary true\n");

  const Run pp = run("pingpong 4 7 --verify");
  CHECK(pp.code == 0);
  REQUIRE(pp.out.rfind("ok\n", 0) == 0);
  const auto cert = serialize::certificate_from_json(json::parse(pp.out.substr(3)));
  CHECK(cert.start_index == 4);
  CHECK(cert.end_index == 7);
}

TEST_CASE("command line: exit codes") {
  CHECK(run("wval 2 0").code == 2);
  CHECK(run("slopes --level sl2z --k 7 --op t2").code == 2);
  CHECK(run("slopes --level sl2z --k 12 --op u2").code == 2);
  CHECK(run("twin --k 12 --m 0 --slope 13").code == 2);
  CHECK(run("pingpong 0 3").code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("hatada --kmax 24").code == 0);

  const fs::path dir = scratch_dir("cert");
  const fs::path file = dir / "cert.json";
  CHECK(run("pingpong 3 9 --emit " + file.string()).code == 0);
  CHECK(run("pingpong --check " + file.string()).out == "ok\n");
  json doc;
  {
    std::ifstream in(file);
    doc = json::parse(in);
  }
  doc["moves"][1]["to"]["slope"] = "5/1";
  std::ofstream(file) << doc.dump();
  CHECK(run("pingpong --check " + file.string()).code == 3);
  std::ofstream(file) << "not json";
  CHECK(run("pingpong --check " + file.string()).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("command line: deterministic output and cache verification") {
  CHECK(run("pingpong 5 12").out == run("pingpong 5 12").out);
  const fs::path dir = scratch_dir("clicache");
  const std::string flag = "--cache-dir " + dir.string() + " ";
  const Run first = run(flag + "oc --trunc 12");
  CHECK(first.code == 0);
  const Run second = run(flag + "oc --trunc 12");
  CHECK(second.out == first.out);
  CHECK(run(flag + "--verify-cache oc --trunc 12").code == 0);
  CHECK(run(flag + "slopes --level gamma0_2 --k 10 --op u2").out == run("slopes --level gamma0_2 --k 10 --op u2").out);

  // Tamper with the stored payload but keep its digest consistent: verification must notice.
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().filename().string().rfind("oc-", 0) != 0) continue;
    std::ifstream in(e.path());
    json entry = json::parse(in);
    in.close();
    entry["payload"]["slopes"][1] = "4/1";
    entry["digest"] = std::to_string(cache::fnv1a(entry["payload"].dump()));
    std::ofstream(e.path()) << entry.dump();
  }
  CHECK(run(flag + "--verify-cache oc --trunc 12").code == 3);
  fs::remove_all(dir);
}
