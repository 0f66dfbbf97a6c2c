#pragma once

#include "ppwalk/padic.hpp"

#include <string>
#include <string_view>

namespace ppwalk::weightspace {

// A point of the even component of 2-adic weight space with
// kappa(5) = 5^{k-2} * zeta_{2^m}. Only the valuation footprint of the root of
// unity matters, so zeta itself is not stored.
struct WeightCharacter {
  long k = 2;
  long m = 0;
  friend bool operator==(const WeightCharacter&, const WeightCharacter&) = default;
};

// Throws InvalidArgument unless k >= 2 and m >= 0.
void validate(const WeightCharacter& wc);

// v_2(w) for w = kappa(5) - 1:
//   m >= 1          -> 2^{1-m}
//   m = 0, k odd    -> 2
//   m = 0, k even   -> 2 + v_2(k - 2)
// Throws CenterOfWeightSpace for (k, m) = (2, 0), where w = 0.
padic::Valuation w_valuation(const WeightCharacter& wc);

// 0 < v_2(w) < 3, i.e. |8| < |w| < 1.
bool in_boundary(const WeightCharacter& wc);

// "k=<int>,m=<int>"
std::string to_string(const WeightCharacter& wc);
WeightCharacter parse_weight_character(std::string_view text);

}  // namespace ppwalk::weightspace
