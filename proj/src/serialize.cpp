#include "ppwalk/serialize.hpp"

#include "ppwalk/errors.hpp"

namespace ppwalk::serialize {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
  }
}

void expect_schema(const json& j, const char* what) {
  if (!j.contains("schema") || j.at("schema").get<int>() != kSchema)
    throw Error(ErrorCode::ParseError, std::string(what) + ": missing or unsupported schema");
}

json rationals(std::span<const Rational> xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(to_json(x));
  return a;
}

std::vector<Rational> rationals_from(const json& a) {
  std::vector<Rational> out;
  for (const auto& x : a) out.push_back(rational_from_json(x));
  return out;
}

}  // namespace

json to_json(const Rational& x) { return to_string(x); }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  if (!j.is_string()) throw Error(ErrorCode::ParseError, "rational must be a string");
  return parse_rational(j.get<std::string>());
}

json to_json(const qseries::QSeries& s) {
  return {{"schema", kSchema}, {"prec", s.prec()}, {"coeffs", rationals(s.coeffs())}};
}

qseries::QSeries qseries_from_json(const json& j) {
  return guarded("qseries", [&] {
    expect_schema(j, "qseries");
    const auto prec = j.at("prec").get<std::size_t>();
    auto coeffs = rationals_from(j.at("coeffs"));
    if (coeffs.size() > prec) throw Error(ErrorCode::ParseError, "more coefficients than precision");
    return qseries::QSeries(std::move(coeffs), prec);
  });
}

json to_json(const linalg::Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

linalg::Matrix matrix_from_json(const json& j) {
  return guarded("matrix", [&] {
    const std::size_t r = j.size();
    const std::size_t c = r ? j.at(0).size() : 0;
    linalg::Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (j.at(i).size() != c) throw Error(ErrorCode::ParseError, "ragged matrix");
      for (std::size_t k = 0; k < c; ++k) m(i, k) = rational_from_json(j.at(i).at(k));
    }
    return m;
  });
}

json to_json(const spaces::SpaceBasis& b) {
  json forms = json::array();
  for (const auto& f : b.basis) forms.push_back(rationals(f.coeffs()));
  return {{"schema", kSchema}, {"level", spaces::level_name(b.level)}, {"k", b.k},
          {"prec", b.prec},    {"label", b.label},                     {"basis", std::move(forms)}};
}

spaces::SpaceBasis basis_from_json(const json& j) {
  return guarded("basis", [&] {
    expect_schema(j, "basis");
    spaces::SpaceBasis b{spaces::parse_level(j.at("level").get<std::string>()), j.at("k").get<long>(),
                         j.at("prec").get<std::size_t>(), {}, j.value("label", std::string("full"))};
    for (const auto& f : j.at("basis")) {
      auto coeffs = rationals_from(f);
      if (coeffs.size() > b.prec) throw Error(ErrorCode::ParseError, "basis form exceeds precision");
      b.basis.emplace_back(std::move(coeffs), b.prec);
    }
    return b;
  });
}

json to_json(const spaces::SpaceBasis& b, const spaces::OperatorMatrix& m) {
  json j = to_json(b);
  j["op"] = m.op.tag();
  j["matrix"] = to_json(m.entries);
  j["residual_checked"] = m.residual_checked;
  return j;
}

json to_json(const eigencurve::Point& pt) {
  return {{"k", pt.wc.k}, {"m", pt.wc.m}, {"slope", to_json(pt.slope)}, {"pc", pt.pc}, {"classical", pt.classical}};
}

eigencurve::Point point_from_json(const json& j) {
  return guarded("point", [&] {
    return eigencurve::Point{{j.at("k").get<long>(), j.at("m").get<long>()},
                             rational_from_json(j.at("slope")),
                             j.value("pc", true),
                             j.value("classical", true)};
  });
}

json to_json(const pingpong::Certificate& c) {
  json moves = json::array();
  for (const auto& mv : c.moves)
    moves.push_back({{"kind", pingpong::move_kind_name(mv.kind)},
                     {"from", to_json(mv.from)},
                     {"to", to_json(mv.to)},
                     {"justification", pingpong::justification_name(mv.justification)}});
  json assumptions = json::array();
  for (const auto& a : c.assumptions)
    assumptions.push_back({{"id", a.id}, {"status", a.status}, {"detail", a.detail}});
  return {{"schema", c.schema},
          {"endpoints", {{"start", c.start_index}, {"end", c.end_index}}},
          {"moves", std::move(moves)},
          {"assumptions", std::move(assumptions)}};
}

pingpong::Certificate certificate_from_json(const json& j) {
  return guarded("certificate", [&] {
    pingpong::Certificate c;
    c.schema = j.at("schema").get<int>();
    c.start_index = j.at("endpoints").at("start").get<long>();
    c.end_index = j.at("endpoints").at("end").get<long>();
    for (const auto& mv : j.at("moves"))
      c.moves.push_back({pingpong::parse_move_kind(mv.at("kind").get<std::string>()), point_from_json(mv.at("from")),
                         point_from_json(mv.at("to")),
                         pingpong::parse_justification(mv.at("justification").get<std::string>())});
    for (const auto& a : j.value("assumptions", json::array()))
      c.assumptions.push_back(
          {a.at("id").get<std::string>(), a.at("status").get<std::string>(), a.value("detail", std::string())});
    return c;
  });
}

json to_json(const overconvergent::SlopeReport& r) {
  json j = {{"schema", kSchema},
            {"N", r.size},
            {"slopes", rationals(r.slopes)},
            {"zero_eigenvalues", r.zero_eigenvalues}};
  if (r.stabilization)
    j["stabilization"] = {{"other_N", r.stabilization->other_size},
                          {"stable_prefix", r.stabilization->stable_prefix}};
  return j;
}

overconvergent::SlopeReport slope_report_from_json(const json& j) {
  return guarded("slope report", [&] {
    expect_schema(j, "slope report");
    overconvergent::SlopeReport r;
    r.size = j.at("N").get<std::size_t>();
    r.slopes = rationals_from(j.at("slopes"));
    r.zero_eigenvalues = j.value("zero_eigenvalues", std::size_t{0});
    if (j.contains("stabilization"))
      r.stabilization = overconvergent::Stabilization{j.at("stabilization").at("other_N").get<std::size_t>(),
                                                      j.at("stabilization").at("stable_prefix").get<std::size_t>()};
    return r;
  });
}

}  // namespace ppwalk::serialize
