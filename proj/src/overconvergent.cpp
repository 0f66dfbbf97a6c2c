#include "ppwalk/overconvergent.hpp"

#include "ppwalk/errors.hpp"
#include "ppwalk/qseries.hpp"

#include <algorithm>
#include <future>
#include <ostream>
#include <thread>

namespace ppwalk::overconvergent {

using qseries::QSeries;

namespace {

// Coefficients of U_2(g) written in the basis f^0, f^1, ...; powers[i] = f^i.
// Returns the coefficient vector and throws ResidualNonzero if anything is
// left over.
std::vector<Rational> solve_triangular(QSeries g, const std::vector<QSeries>& powers, std::size_t max_degree,
                                       std::size_t column) {
  std::vector<Rational> c(max_degree + 1, Rational(0));
  std::vector<Rational> r(g.coeffs().begin(), g.coeffs().end());
  const std::size_t prec = r.size();
  for (std::size_t i = 0; i <= max_degree && i < prec; ++i) {
    if (r[i] == 0) continue;
    const auto& fi = powers[i].coeffs();
    if (fi[i] != 1) throw Error(ErrorCode::InvalidArgument, "hauptmodul power is not q^i + O(q^{i+1})");
    c[i] = r[i];
    for (std::size_t n = i; n < prec; ++n)
      if (fi[n] != 0) r[n] -= c[i] * fi[n];
  }
  for (std::size_t n = 0; n < prec; ++n)
    if (r[n] != 0)
      throw Error(ErrorCode::ResidualNonzero,
                  "U_2(f^" + std::to_string(column) + ") has residual at q^" + std::to_string(n));
  return c;
}

}  // namespace

TruncatedCompactOperator u2_matrix_weight0(std::size_t n, std::size_t prec) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "truncation size must be positive");
  if (prec < default_precision(n))
    throw Error(ErrorCode::InsufficientPrecision,
                "prec " + std::to_string(prec) + " < 2N + 8 = " + std::to_string(default_precision(n)));

  // U_2(f^j) has degree <= 2j in f, so f^0..f^{2N-2} are needed to precision prec,
  // and f^j to precision 2 prec before applying U_2.
  const std::size_t wide = 2 * prec;
  const QSeries f = qseries::standard_series(qseries::Standard::HauptmodulF, wide);
  const std::size_t max_degree = 2 * (n - 1);
  std::vector<QSeries> wide_powers{QSeries::constant(1, wide)};
  for (std::size_t j = 1; j <= max_degree; ++j) wide_powers.push_back(wide_powers.back() * f);
  std::vector<QSeries> powers;
  powers.reserve(wide_powers.size());
  for (const auto& w : wide_powers) powers.push_back(w.truncated(prec));

  std::vector<std::vector<Rational>> columns(n);
  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t j = w; j < n; j += workers)
        columns[j] = solve_triangular(qseries::u_p(wide_powers[j], 2).truncated(prec), powers, 2 * j, j);
    }));
  }
  for (auto& job : jobs) job.get();

  TruncatedCompactOperator op;
  op.size = n;
  op.prec = prec;
  op.matrix = linalg::Matrix(n, n);
  op.residual_checked = prec;
  for (std::size_t j = 0; j < n; ++j) {
    padic::Valuation lo = padic::Valuation::infinity(), scaled = padic::Valuation::infinity();
    for (std::size_t i = 0; i < columns[j].size(); ++i) {
      const Rational& x = columns[j][i];
      if (x == 0) continue;
      if (x.get_den() % 2 == 0) op.two_integral = false;
      if (i < n) {
        op.matrix(i, j) = x;
        const auto v = padic::val(x, 2);
        lo = std::min(lo, v);
        scaled = std::min(scaled, padic::Valuation(v.value() + kWitnessShift * (static_cast<long>(j) - static_cast<long>(i))));
      }
    }
    op.column_min_valuation.push_back(lo);
    op.scaled_column_min_valuation.push_back(scaled);
  }
  return op;
}

SlopeReport oc_slopes(const TruncatedCompactOperator& op) {
  const auto cp = linalg::charpoly_multimodular(op.matrix);
  const auto rv = padic::newton_slopes(cp, 2);
  SlopeReport r;
  r.size = op.size;
  r.slopes = rv.slopes;
  r.zero_eigenvalues = rv.zero_roots;
  return r;
}

SlopeReport oc_slopes(const TruncatedCompactOperator& op, const SlopeReport& larger) {
  SlopeReport r = oc_slopes(op);
  r.stabilization = Stabilization{larger.size, common_prefix(r.slopes, larger.slopes)};
  return r;
}

std::size_t common_prefix(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::size_t n = 0;
  while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
  return n;
}

void write_slopes_csv(std::ostream& out, const std::vector<SlopeReport>& reports) {
  out << "N,index,slope_num,slope_den\n";
  for (const auto& r : reports)
    for (std::size_t i = 0; i < r.slopes.size(); ++i)
      out << r.size << ',' << i << ',' << r.slopes[i].get_num().get_str() << ','
          << r.slopes[i].get_den().get_str() << '\n';
}

void write_slopes_gnuplot(std::ostream& out, const std::vector<SlopeReport>& reports) {
  out << "# N index slope\n";
  for (std::size_t b = 0; b < reports.size(); ++b) {
    if (b) out << "\n\n";
    const auto& r = reports[b];
    for (std::size_t i = 0; i < r.slopes.size(); ++i)
      out << r.size << ' ' << i << ' ' << r.slopes[i].get_d() << '\n';
  }
}

}  // namespace ppwalk::overconvergent
