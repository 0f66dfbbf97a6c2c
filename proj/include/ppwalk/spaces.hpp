#pragma once

#include "ppwalk/linalg.hpp"
#include "ppwalk/padic.hpp"
#include "ppwalk/poly.hpp"
#include "ppwalk/qseries.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ppwalk::spaces {

using qseries::QSeries;

// Graded rings with hard-coded generators:
//   SL2Z      E4 (wt 4), E6 (wt 6)
//   Gamma0_2  2 E2(q^2) - E2(q) (wt 2), E4 (wt 4)
//   Gamma1_4  theta^2 (wt 1), sum_{n odd} sigma_1(n) q^n (wt 2)
enum class Level { SL2Z, Gamma0_2, Gamma1_4 };

const char* level_name(Level level);  // "sl2z", "gamma0_2", "gamma1_4"
Level parse_level(const std::string& name);
// Index of the image in PSL2(Z) used for the working precision (1, 3, 12).
unsigned projective_index(Level level);
unsigned conductor(Level level);

struct SpaceBasis {
  Level level;
  long k;
  std::size_t prec;
  std::vector<QSeries> basis;
  std::string label;  // "full", "a0zero" or "cusp"

  std::size_t dim() const { return basis.size(); }
  std::string id() const;
};

// Number of monomials G1^a G2^b of weight k.
std::size_t monomial_count(Level level, long k);
// 2 ceil(k mu / 12) + dim + 10.
std::size_t working_precision(Level level, long k);

// All generator monomials of weight k to precision max(prec_hint, working_precision).
// Throws ParityError for inadmissible weights, DependentGenerators if the
// monomials fail to be linearly independent.
SpaceBasis build_basis(Level level, long k, std::size_t prec_hint = 0);
// Basis with enough precision for Hecke operators at primes up to max_p.
SpaceBasis basis_for_operators(Level level, long k, unsigned long max_p);

// {f : a_0(f) = 0}, in reduced echelon form.
SpaceBasis a0_zero_subspace(const SpaceBasis& basis);
// Level 1 cusp forms in Victor Miller form: a_i(f_j) = delta_ij, 1 <= i,j <= dim.
SpaceBasis cusp_subspace_level1(const SpaceBasis& basis);

struct HeckeOperator {
  enum class Kind { U2, Tp };
  Kind kind;
  unsigned long p;

  static HeckeOperator u2() { return {Kind::U2, 2}; }
  static HeckeOperator t(unsigned long p) { return {Kind::Tp, p}; }
  std::string tag() const;  // "u2", "t3", ...
  friend bool operator==(const HeckeOperator&, const HeckeOperator&) = default;
};

HeckeOperator parse_operator(const std::string& tag);

struct OperatorMatrix {
  linalg::Matrix entries;  // op(basis_j) = sum_i entries(i, j) basis_i
  HeckeOperator op;
  std::string basis_id;
  std::size_t residual_checked = 0;  // coefficients compared after the solve
};

// Apply op to a single form of the given level and weight.
QSeries apply_operator(const HeckeOperator& op, const QSeries& f, Level level, long k);

// Throws UnsupportedOperator, InsufficientPrecision or ResidualNonzero.
OperatorMatrix operator_matrix(const HeckeOperator& op, const SpaceBasis& basis);

poly::Polynomial charpoly(const OperatorMatrix& m);

struct SlopeEigenform {
  Rational eigenvalue;
  QSeries form;  // a_1-normalized (or first nonzero coefficient, if a_1 = 0)
};

// Throws NoUniqueSlope, IrrationalEigenvalue.
SlopeEigenform extract_slope_eigenform(const OperatorMatrix& m, const SpaceBasis& basis,
                                       const Rational& target_slope, unsigned long p);

// Rational eigenvalues of the matrix with algebraic multiplicity.
std::vector<std::pair<Rational, int>> rational_eigenvalues(const OperatorMatrix& m);

struct RefinementModel {
  Rational a_p;
  long k;
  unsigned long p;
  padic::Valuation alpha_val;  // alpha_val <= beta_val
  padic::Valuation beta_val;
};

// Root valuations of X^2 - a_p X + p^{k-1}.
RefinementModel refinement(const Rational& a_p, long k, unsigned long p);

// Multiplicative order of alpha/beta for the roots of X^2 - a_p X + p^{k-1};
// empty means infinite order. Throws RepeatedRoot when a_p^2 = 4 p^{k-1}.
std::optional<int> ratio_order(const Rational& a_p, long k, unsigned long p);
bool is_n_regular(const Rational& a_p, long k, unsigned long p, long n);

struct HatadaEntry {
  long k = 0;
  std::size_t dim = 0;
  poly::Polynomial charpoly;
  bool congruent_mod3 = true;  // charpoly = X^dim mod 3
  bool congruent_mod8 = true;  // charpoly = X^dim mod 8
  bool nonzero_constant = true;
  bool non_ordinary = true;  // every 2-adic slope > 0
  std::vector<Rational> slopes;

  bool pass() const { return congruent_mod3 && congruent_mod8 && nonzero_constant && non_ordinary; }
};

// T_2 on S_k(SL2Z) for every even k in [k_min, k_max]; failures are reported.
std::vector<HatadaEntry> hatada_check(long k_min, long k_max);

}  // namespace ppwalk::spaces
