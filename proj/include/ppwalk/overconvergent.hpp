#pragma once

#include "ppwalk/linalg.hpp"
#include "ppwalk/padic.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ppwalk::overconvergent {

// U_2 on weight 0 overconvergent forms, truncated to the span of
// f^0, ..., f^{N-1} for the hauptmodul f = Delta(q^2)/Delta(q).
inline constexpr long kWitnessShift = 6;

struct TruncatedCompactOperator {
  std::size_t size = 0;
  std::size_t prec = 0;  // q-precision of every U_2(f^j)
  linalg::Matrix matrix;  // U_2(f^j) = sum_i matrix(i, j) f^i, rows i < size kept
  std::string basis_tag = "powers of hauptmodul f, degrees 0..N-1";
  std::size_t residual_checked = 0;  // coefficients verified zero per column
  bool two_integral = true;
  // min_i v_2(matrix(i, j)) per column; infinite for a zero column.
  std::vector<padic::Valuation> column_min_valuation;
  // Same for 2^{-s i} matrix(i, j) 2^{s j} with s = kWitnessShift, the matrix
  // in the basis (2^s f)^i. The raw minima stall because U_2(f^{2i}) has a
  // unit f^i coefficient; the rescaled ones grow with j.
  std::vector<padic::Valuation> scaled_column_min_valuation;

  // "verified" when every entry is 2-integral, "diagnostic" otherwise.
  std::string status() const { return two_integral ? "verified" : "diagnostic"; }
};

// Requires N >= 1 and prec >= 2N + 8 (InsufficientPrecision otherwise).
// Throws ResidualNonzero when some U_2(f^j) leaves the span of f^0..f^{2j}
// within the available precision.
TruncatedCompactOperator u2_matrix_weight0(std::size_t n, std::size_t prec);

inline std::size_t default_precision(std::size_t n) { return 2 * n + 8; }

struct Stabilization {
  std::size_t other_size = 0;
  // Length of the longest common prefix of the two sorted slope lists.
  std::size_t stable_prefix = 0;
};

struct SlopeReport {
  std::size_t size = 0;
  std::vector<Rational> slopes;  // sorted, with multiplicity (zero roots excluded)
  std::size_t zero_eigenvalues = 0;
  std::optional<Stabilization> stabilization;
};

SlopeReport oc_slopes(const TruncatedCompactOperator& op);
// Same, compared against the slopes of a larger truncation.
SlopeReport oc_slopes(const TruncatedCompactOperator& op, const SlopeReport& larger);

std::size_t common_prefix(const std::vector<Rational>& a, const std::vector<Rational>& b);

// "N,index,slope_num,slope_den" rows with a header line.
void write_slopes_csv(std::ostream& out, const std::vector<SlopeReport>& reports);
// Whitespace-separated "N index slope" blocks separated by blank lines.
void write_slopes_gnuplot(std::ostream& out, const std::vector<SlopeReport>& reports);

}  // namespace ppwalk::overconvergent
