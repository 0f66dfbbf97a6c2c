// ppwalk: slopes, twins, ping-pong certificates and overconvergent truncations at p = 2.

#include "ppwalk/cache.hpp"
#include "ppwalk/eigencurve.hpp"
#include "ppwalk/errors.hpp"
#include "ppwalk/fixtures.hpp"
#include "ppwalk/overconvergent.hpp"
#include "ppwalk/pingpong.hpp"
#include "ppwalk/serialize.hpp"
#include "ppwalk/spaces.hpp"
#include "ppwalk/weightspace.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#ifndef PPWALK_VERSION
#define PPWALK_VERSION "dev"
#endif

namespace {

using namespace ppwalk;
using serialize::json;

constexpr int kExitOk = 0;
constexpr int kExitPrecondition = 2;
constexpr int kExitVerification = 3;
constexpr int kExitInvariant = 4;

int exit_code(ErrorClass c) {
  switch (c) {
    case ErrorClass::Precondition: return kExitPrecondition;
    case ErrorClass::Verification: return kExitVerification;
    case ErrorClass::InvariantBreach: return kExitInvariant;
  }
  return kExitInvariant;
}

struct Common {
  bool csv = false;
  std::string cache_dir;
  bool verify_cache = false;
};

std::optional<cache::Cache> open_cache(const Common& c) {
  if (!c.cache_dir.empty()) return cache::Cache(c.cache_dir);
  if (auto dir = cache::Cache::dir_from_env()) return cache::Cache(*dir);
  return std::nullopt;
}

// Look the key up, computing on a miss. With verify, recompute and compare
// against the stored payload byte for byte.
template <class F>
json cached(const Common& c, const cache::CacheKey& key, F&& compute) {
  auto store = open_cache(c);
  if (!store) return compute();
  if (auto hit = store->get(key)) {
    if (!c.verify_cache) return *hit;
    json fresh = compute();
    if (fresh.dump() != hit->dump())
      throw Error(ErrorCode::FixtureMismatch, "cache entry " + key.filename() + " differs from recomputation");
    std::cerr << "cache ok: " << key.filename() << "\n";
    return fresh;
  }
  json fresh = compute();
  store->put(key, fresh);
  return fresh;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

json rational_list(const std::vector<Rational>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(to_string(x));
  return a;
}

std::string valuation_str(const padic::Valuation& v) { return v.is_infinite() ? "inf" : to_string(v.value()); }

// ---- slopes ----

struct SlopesArgs {
  std::string level = "sl2z";
  long k = 12;
  std::string op = "t2";
  unsigned long p = 2;
  std::string subspace;  // default: cusp at level 1, full otherwise
};

json compute_slopes(const SlopesArgs& a) {
  const auto level = spaces::parse_level(a.level);
  const auto op = spaces::parse_operator(a.op);
  const auto full = spaces::basis_for_operators(level, a.k, op.p);
  const std::string sub = a.subspace.empty() ? (level == spaces::Level::SL2Z ? "cusp" : "full") : a.subspace;
  spaces::SpaceBasis basis = full;
  if (sub == "cusp") {
    if (level != spaces::Level::SL2Z) throw Error(ErrorCode::InvalidArgument, "cusp subspace is implemented at level 1 only");
    basis = spaces::cusp_subspace_level1(full);
  } else if (sub == "a0zero") {
    basis = spaces::a0_zero_subspace(full);
  } else if (sub != "full") {
    throw Error(ErrorCode::InvalidArgument, "unknown subspace '" + sub + "'");
  }

  json out = {{"schema", serialize::kSchema}, {"level", spaces::level_name(level)}, {"k", a.k},  {"op", op.tag()},
              {"p", a.p},                     {"subspace", sub},  {"dim", basis.dim()}};
  if (basis.dim() == 0) {
    out["charpoly"] = "1";
    out["slopes"] = json::array();
    return out;
  }
  const auto m = spaces::operator_matrix(op, basis);
  const auto cp = spaces::charpoly(m);
  out["charpoly"] = poly::to_string(cp);
  out["charpoly_coeffs"] = rational_list(cp);
  const auto rv = padic::newton_slopes(cp, a.p);
  std::vector<Rational> slopes = rv.slopes;
  json rows = json::array();
  for (std::size_t z = 0; z < rv.zero_roots; ++z) rows.push_back({{"slope", "inf"}, {"classicality", "none"}});
  for (const auto& s : slopes) {
    const auto c = eigencurve::classify(s, a.k);
    rows.push_back({{"slope", to_string(s)},
                    {"classicality", eigencurve::classicality_name(c.kind)},
                    {"numerically_non_critical", c.numerically_non_critical}});
  }
  out["slopes"] = rows;
  if (op.kind == spaces::HeckeOperator::Kind::Tp) {
    json refinements = json::array();
    for (const auto& [ev, mult] : spaces::rational_eigenvalues(m)) {
      const auto r = spaces::refinement(ev, a.k, op.p);
      refinements.push_back({{"eigenvalue", to_string(ev)},
                             {"multiplicity", mult},
                             {"slopes", {valuation_str(r.alpha_val), valuation_str(r.beta_val)}}});
    }
    out["refinements"] = refinements;
  }
  return out;
}

void print_slopes_csv(const json& out) {
  std::cout << "level,k,op,slope,classicality\n";
  for (const auto& r : out["slopes"])
    std::cout << out["level"].get<std::string>() << ',' << out["k"] << ',' << out["op"].get<std::string>() << ','
              << r["slope"].get<std::string>() << ',' << r["classicality"].get<std::string>() << '\n';
}

// ---- hatada ----

json compute_hatada(long k_min, long k_max) {
  json rows = json::array();
  bool all = true;
  for (const auto& e : spaces::hatada_check(k_min, k_max)) {
    all = all && e.pass();
    rows.push_back({{"k", e.k},
                    {"dim", e.dim},
                    {"charpoly", poly::to_string(e.charpoly)},
                    {"mod3", e.congruent_mod3},
                    {"mod8", e.congruent_mod8},
                    {"nonzero_constant", e.nonzero_constant},
                    {"non_ordinary", e.non_ordinary},
                    {"slopes", rational_list(e.slopes)},
                    {"pass", e.pass()}});
  }
  return {{"schema", serialize::kSchema}, {"k_min", k_min}, {"k_max", k_max}, {"pass", all}, {"weights", rows}};
}

// ---- oc ----

json compute_oc(std::size_t n, std::size_t prec) {
  const auto op = overconvergent::u2_matrix_weight0(n, prec);
  const auto r = overconvergent::oc_slopes(op);
  json j = serialize::to_json(r);
  j["prec"] = prec;
  j["status"] = op.status();
  j["residual_checked"] = op.residual_checked;
  json mins = json::array();
  for (const auto& v : op.column_min_valuation) mins.push_back(valuation_str(v));
  j["column_min_valuation"] = mins;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ppwalk: 2-adic slopes, eigencurve walks and overconvergent truncations"};
  app.set_version_flag("--version", PPWALK_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_flag("--csv", common.csv, "CSV instead of JSON where supported");
  app.add_flag("--json", [&](std::int64_t) { common.csv = false; }, "JSON output (default)");
  app.add_option("--cache-dir", common.cache_dir, "cache directory (overrides PPWALK_CACHE_DIR)");
  app.add_flag("--verify-cache", common.verify_cache, "recompute cached results and compare");

  SlopesArgs sa;
  auto* slopes = app.add_subcommand("slopes", "characteristic polynomial and slopes of a Hecke operator");
  slopes->add_option("--level", sa.level, "sl2z | gamma0_2 | gamma1_4 (or 1, 2, 4)")->capture_default_str();
  slopes->add_option("--k", sa.k, "weight")->capture_default_str();
  slopes->add_option("--op", sa.op, "u2 | tN")->capture_default_str();
  slopes->add_option("--p", sa.p, "prime for the slopes")->capture_default_str();
  slopes->add_option("--subspace", sa.subspace, "full | cusp | a0zero");

  long tk = 5, tm = 0;
  std::string tslope = "2";
  bool tnot_pc = false;
  auto* twin = app.add_subcommand("twin", "twin of a classical point");
  twin->add_option("--k", tk)->capture_default_str();
  twin->add_option("--m", tm)->capture_default_str();
  twin->add_option("--slope,slope", tslope)->capture_default_str();
  twin->add_flag("--not-pc", tnot_pc, "mark the point as not potentially crystalline");

  long pi = 1, pj = 1;
  bool pverify = false;
  std::string pemit, pcheck, seed_a;
  long seed_k = 12, seed_n = 2;
  auto* pp = app.add_subcommand("pingpong", "certificate connecting X_i to X_j");
  pp->add_option("i", pi, "start annulus");
  pp->add_option("j", pj, "end annulus");
  pp->add_flag("--verify", pverify, "run the checker and print ok before the certificate");
  pp->add_option("--emit", pemit, "also write the certificate to this file");
  pp->add_option("--check", pcheck, "verify a stored certificate instead");
  pp->add_option("--seed-a2", seed_a, "a_2 of the level 1 seed at both ends");
  pp->add_option("--seed-k", seed_k, "weight of the seed")->capture_default_str();
  pp->add_option("--n", seed_n, "symmetric power dimension for the regularity check")->capture_default_str();

  std::size_t on = 20, oprec = 0, ocompare = 0;
  std::string oplot;
  auto* oc = app.add_subcommand("oc", "U_2 on weight 0 overconvergent forms, truncated");
  oc->add_option("--trunc,--N", on, "truncation size")->capture_default_str();
  oc->add_option("--prec", oprec, "q-precision (default 2N + 8)");
  oc->add_option("--compare", ocompare, "larger truncation to compare slopes with");
  oc->add_option("--plot", oplot, "write gnuplot data to this file");

  std::string na;
  long nk = 12, nn = 2;
  unsigned long np = 2;
  auto* nreg = app.add_subcommand("nregular", "n-regularity of the refinements of (a_p, k, p)");
  nreg->add_option("a", na, "a_p")->required();
  nreg->add_option("k", nk)->required();
  nreg->add_option("p", np)->required();
  nreg->add_option("n", nn)->required();

  long hk_min = 12, hk_max = 60;
  auto* hat = app.add_subcommand("hatada", "T_2 congruences on level 1 cusp forms");
  hat->add_option("--kmin", hk_min)->capture_default_str();
  hat->add_option("--kmax,kmax", hk_max)->capture_default_str();

  long wk = 5, wm = 0;
  auto* wval = app.add_subcommand("wval", "v_2(w) of a weight character");
  wval->add_option("k", wk)->required();
  wval->add_option("m", wm)->required();

  long li_max = 8, lk_max = 31;
  auto* ladder = app.add_subcommand("ladder", "plot data: slope i v(w) against weight for each annulus");
  ladder->add_option("--imax", li_max)->capture_default_str();
  ladder->add_option("--kmax", lk_max)->capture_default_str();

  auto* orc = app.add_subcommand("oracles", "recompute every computed fixture");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitPrecondition;
  }

  try {
    const std::string version = PPWALK_VERSION;
    if (*slopes) {
      const cache::CacheKey key{"slopes", spaces::level_name(spaces::parse_level(sa.level)), sa.k, sa.op + "/" + sa.subspace + "/p" + std::to_string(sa.p), 0,
                                version};
      const json out = cached(common, key, [&] { return compute_slopes(sa); });
      common.csv ? print_slopes_csv(out) : print(out);
    } else if (*twin) {
      const eigencurve::Point pt{{tk, tm}, parse_rational(tslope), !tnot_pc, true};
      eigencurve::validate(pt);
      const auto t = eigencurve::twin(pt);
      json out = {{"schema", serialize::kSchema}, {"point", serialize::to_json(pt)}, {"twin", serialize::to_json(t)}};
      if (weightspace::in_boundary(pt.wc)) {
        out["index"] = eigencurve::annulus_index(pt);
        out["twin_index"] = eigencurve::annulus_index(t);
        out["index_sum_ok"] = eigencurve::twin_index_sum_check(pt);
      }
      print(out);
    } else if (*pp) {
      if (!pcheck.empty()) {
        std::ifstream in(pcheck);
        if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + pcheck);
        json doc;
        try {
          doc = json::parse(in);
        } catch (const json::exception& e) {
          throw Error(ErrorCode::ParseError, e.what());
        }
        const auto violations = pingpong::verify_certificate(serialize::certificate_from_json(doc));
        if (violations.empty()) {
          std::cout << "ok\n";
          return kExitOk;
        }
        for (const auto& v : violations) std::cout << "move " << v.move << ": " << v.code << ": " << v.message << "\n";
        return kExitVerification;
      }
      pingpong::ConnectOptions opts;
      if (!seed_a.empty()) {
        const pingpong::Seed s{parse_rational(seed_a), seed_k, seed_n};
        opts.start_seed = s;
        opts.end_seed = s;
      }
      const auto cert = pingpong::connect(pi, pj, opts);
      const json doc = serialize::to_json(cert);
      if (!pemit.empty()) {
        std::ofstream out(pemit);
        out << doc.dump(2) << "\n";
        if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + pemit);
      }
      if (pverify) {
        const auto violations = pingpong::verify_certificate(cert);
        if (!violations.empty()) {
          for (const auto& v : violations) std::cerr << "move " << v.move << ": " << v.code << ": " << v.message << "\n";
          return kExitVerification;
        }
        std::cout << "ok\n";
      }
      print(doc);
    } else if (*oc) {
      const std::size_t prec = oprec ? oprec : overconvergent::default_precision(on);
      auto run = [&](std::size_t n, std::size_t p) {
        return cached(common, cache::CacheKey{"oc", "", static_cast<long>(n), "u2", p, version},
                      [&] { return compute_oc(n, p); });
      };
      json out = run(on, prec);
      std::vector<overconvergent::SlopeReport> reports{serialize::slope_report_from_json(out)};
      if (ocompare) {
        if (ocompare <= on) throw Error(ErrorCode::InvalidArgument, "--compare must exceed --trunc");
        const json other = run(ocompare, overconvergent::default_precision(ocompare));
        reports.push_back(serialize::slope_report_from_json(other));
        const auto prefix = overconvergent::common_prefix(reports[0].slopes, reports[1].slopes);
        out["stabilization"] = {{"other_N", ocompare}, {"stable_prefix", prefix}};
      }
      if (!oplot.empty()) {
        std::ofstream f(oplot);
        overconvergent::write_slopes_gnuplot(f, reports);
        if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + oplot);
      }
      if (common.csv) {
        overconvergent::write_slopes_csv(std::cout, reports);
      } else {
        print(out);
      }
    } else if (*nreg) {
      const Rational a = parse_rational(na);
      const auto order = spaces::ratio_order(a, nk, np);
      const bool ok = spaces::is_n_regular(a, nk, np, nn);
      std::cout << (ok ? "true" : "false") << "\n";
      std::cerr << "ratio order: " << (order ? std::to_string(*order) : std::string("infinite")) << "\n";
    } else if (*hat) {
      const json out = compute_hatada(hk_min, hk_max);
      if (common.csv) {
        std::cout << "k,dim,charpoly,pass\n";
        for (const auto& r : out["weights"])
          std::cout << r["k"] << ',' << r["dim"] << ",\"" << r["charpoly"].get<std::string>() << "\","
                    << (r["pass"].get<bool>() ? "true" : "false") << '\n';
      } else {
        print(out);
      }
      if (!out["pass"].get<bool>()) return kExitVerification;
    } else if (*wval) {
      const weightspace::WeightCharacter wc{wk, wm};
      weightspace::validate(wc);
      const auto v = weightspace::w_valuation(wc);
      std::cout << v.str() << ", in_boundary " << (weightspace::in_boundary(wc) ? "true" : "false") << "\n";
    } else if (*ladder) {
      std::cout << "# i k m v slope\n";
      for (long i = 1; i <= li_max; ++i) {
        for (long k = 3; k <= lk_max; k += 2) {
          const weightspace::WeightCharacter wc{k, 0};
          std::cout << i << ' ' << k << " 0 " << weightspace::w_valuation(wc).str() << ' '
                    << to_string(eigencurve::bk_predicted_slope(i, wc)) << '\n';
        }
        for (long m = 1; m <= 6; ++m) {
          const weightspace::WeightCharacter wc{2, m};
          std::cout << i << " 2 " << m << ' ' << weightspace::w_valuation(wc).str() << ' '
                    << to_string(eigencurve::bk_predicted_slope(i, wc)) << '\n';
        }
        std::cout << "\n\n";
      }
    } else if (*orc) {
      const auto store = fixtures::load_default();
      const auto outcomes = fixtures::run_oracles(store);
      bool ok = true;
      for (const auto& o : outcomes) {
        ok = ok && o.ok;
        std::cout << (o.ok ? "PASS " : "FAIL ") << o.id << " [" << o.oracle << "]";
        if (!o.ok) std::cout << " " << o.detail;
        std::cout << "\n";
      }
      return ok ? kExitOk : kExitVerification;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(error_class(e.code()));
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitOk;
}
