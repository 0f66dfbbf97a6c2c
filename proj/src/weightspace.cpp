#include "ppwalk/weightspace.hpp"

#include "ppwalk/errors.hpp"

#include <charconv>

namespace ppwalk::weightspace {

void validate(const WeightCharacter& wc) {
  if (wc.k < 2 || wc.m < 0)
    throw Error(ErrorCode::InvalidArgument, "weight character needs k >= 2 and m >= 0, got " + to_string(wc));
}

padic::Valuation w_valuation(const WeightCharacter& wc) {
  validate(wc);
  if (wc.m >= 1) return padic::Valuation(rational_pow(2, 1 - wc.m));
  if (wc.k == 2) throw Error(ErrorCode::CenterOfWeightSpace, "w = 0 at k=2,m=0");
  if (wc.k % 2 != 0) return padic::Valuation(2L);
  return padic::Valuation(2 + padic::val_int(Integer(wc.k - 2), 2));
}

bool in_boundary(const WeightCharacter& wc) {
  const Rational v = w_valuation(wc).value();
  return v > 0 && v < 3;
}

std::string to_string(const WeightCharacter& wc) {
  return "k=" + std::to_string(wc.k) + ",m=" + std::to_string(wc.m);
}

WeightCharacter parse_weight_character(std::string_view text) {
  auto field = [&](std::string_view part, std::string_view key) {
    if (part.substr(0, key.size()) != key) throw Error(ErrorCode::ParseError, "expected 'k=<int>,m=<int>'");
    part.remove_prefix(key.size());
    long v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size())
      throw Error(ErrorCode::ParseError, "bad integer in '" + std::string(text) + "'");
    return v;
  };
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw Error(ErrorCode::ParseError, "expected 'k=<int>,m=<int>'");
  WeightCharacter wc{field(text.substr(0, comma), "k="), field(text.substr(comma + 1), "m=")};
  validate(wc);
  return wc;
}

}  // namespace ppwalk::weightspace
