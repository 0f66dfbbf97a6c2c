#pragma once

#include "ppwalk/eigencurve.hpp"
#include "ppwalk/overconvergent.hpp"
#include "ppwalk/pingpong.hpp"
#include "ppwalk/qseries.hpp"
#include "ppwalk/spaces.hpp"

#include <json.hpp>

namespace ppwalk::serialize {

using nlohmann::json;

inline constexpr int kSchema = 1;

// Rationals are written as "num/den" strings. Parsers throw Error(ParseError).
json to_json(const Rational& x);
Rational rational_from_json(const json& j);

json to_json(const qseries::QSeries& s);
qseries::QSeries qseries_from_json(const json& j);

json to_json(const linalg::Matrix& m);
linalg::Matrix matrix_from_json(const json& j);

json to_json(const spaces::SpaceBasis& b);
spaces::SpaceBasis basis_from_json(const json& j);

// Basis together with an operator matrix on it.
json to_json(const spaces::SpaceBasis& b, const spaces::OperatorMatrix& m);

json to_json(const eigencurve::Point& pt);
eigencurve::Point point_from_json(const json& j);

json to_json(const pingpong::Certificate& c);
pingpong::Certificate certificate_from_json(const json& j);

json to_json(const overconvergent::SlopeReport& r);
overconvergent::SlopeReport slope_report_from_json(const json& j);

}  // namespace ppwalk::serialize
