#include "ppwalk/spaces.hpp"

#include "ppwalk/errors.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace ppwalk::spaces {

namespace {

struct Generator {
  long weight;
  QSeries (*make)(std::size_t prec);
};

QSeries make_e4(std::size_t prec) { return qseries::standard_series(qseries::Standard::E4, prec); }
QSeries make_e6(std::size_t prec) { return qseries::standard_series(qseries::Standard::E6, prec); }
QSeries make_a2(std::size_t prec) { return qseries::standard_series(qseries::Standard::ALevel2, prec); }
QSeries make_f(std::size_t prec) { return qseries::standard_series(qseries::Standard::FSigmaOdd, prec); }
QSeries make_theta2(std::size_t prec) {
  const QSeries t = qseries::standard_series(qseries::Standard::Theta, prec);
  return qseries::mul(t, t);
}

std::array<Generator, 2> generators(Level level) {
  switch (level) {
    case Level::SL2Z: return {{{4, &make_e4}, {6, &make_e6}}};
    case Level::Gamma0_2: return {{{2, &make_a2}, {4, &make_e4}}};
    case Level::Gamma1_4: return {{{1, &make_theta2}, {2, &make_f}}};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown level");
}

void check_weight(Level level, long k) {
  const bool ok = [&] {
    if (k < 0) return false;
    switch (level) {
      case Level::SL2Z: return k == 0 || (k % 2 == 0 && k >= 4);
      case Level::Gamma0_2: return k % 2 == 0;
      case Level::Gamma1_4: return true;
    }
    return false;
  }();
  if (!ok)
    throw Error(ErrorCode::ParityError,
                "weight " + std::to_string(k) + " is not admissible for " + level_name(level));
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

// Nebentypus value chi(p) of weight-k forms: chi_{-4}^k on Gamma1(4).
int character_value(Level level, long k, unsigned long p) {
  if (level != Level::Gamma1_4 || k % 2 == 0) return 1;
  return p % 4 == 1 ? 1 : -1;
}

linalg::Matrix coefficient_matrix(const std::vector<QSeries>& forms, std::size_t prec) {
  linalg::Matrix m(forms.size(), prec);
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (std::size_t n = 0; n < prec; ++n) m(i, n) = forms[i][n];
  return m;
}

}  // namespace

const char* level_name(Level level) {
  switch (level) {
    case Level::SL2Z: return "sl2z";
    case Level::Gamma0_2: return "gamma0_2";
    case Level::Gamma1_4: return "gamma1_4";
  }
  return "?";
}

Level parse_level(const std::string& name) {
  for (Level l : {Level::SL2Z, Level::Gamma0_2, Level::Gamma1_4})
    if (name == level_name(l)) return l;
  if (name == "1") return Level::SL2Z;
  if (name == "2") return Level::Gamma0_2;
  if (name == "4") return Level::Gamma1_4;
  throw Error(ErrorCode::InvalidArgument, "unknown level '" + name + "'");
}

unsigned projective_index(Level level) {
  switch (level) {
    case Level::SL2Z: return 1;
    case Level::Gamma0_2: return 3;
    case Level::Gamma1_4: return 12;
  }
  return 0;
}

unsigned conductor(Level level) {
  switch (level) {
    case Level::SL2Z: return 1;
    case Level::Gamma0_2: return 2;
    case Level::Gamma1_4: return 4;
  }
  return 0;
}

std::string SpaceBasis::id() const {
  return std::string(level_name(level)) + "/k" + std::to_string(k) + "/" + label + "/prec" + std::to_string(prec);
}

std::size_t monomial_count(Level level, long k) {
  if (k < 0) return 0;
  const auto gens = generators(level);
  std::size_t count = 0;
  for (long a = 0; a * gens[0].weight <= k; ++a)
    if ((k - a * gens[0].weight) % gens[1].weight == 0) ++count;
  return count;
}

std::size_t working_precision(Level level, long k) {
  const std::size_t kk = static_cast<std::size_t>(std::max<long>(k, 0));
  return 2 * ceil_div(kk * projective_index(level), 12) + monomial_count(level, k) + 10;
}

SpaceBasis build_basis(Level level, long k, std::size_t prec_hint) {
  check_weight(level, k);
  const std::size_t prec = std::max(prec_hint, working_precision(level, k));
  const auto gens = generators(level);

  std::map<long, QSeries> powers0, powers1;
  const QSeries g0 = gens[0].make(prec), g1 = gens[1].make(prec);
  auto power_of = [&](std::map<long, QSeries>& cache, const QSeries& g, long e) -> const QSeries& {
    auto it = cache.find(e);
    if (it == cache.end()) it = cache.emplace(e, qseries::pow(g, static_cast<unsigned>(e)).truncated(prec)).first;
    return it->second;
  };

  SpaceBasis out{level, k, prec, {}, "full"};
  for (long a = k / gens[0].weight; a >= 0; --a) {
    const long rest = k - a * gens[0].weight;
    if (rest % gens[1].weight != 0) continue;
    const long b = rest / gens[1].weight;
    out.basis.push_back(qseries::mul(power_of(powers0, g0, a), power_of(powers1, g1, b)).truncated(prec));
  }

  const std::size_t expected = monomial_count(level, k);
  if (out.basis.size() != expected || linalg::rank(coefficient_matrix(out.basis, prec)) != expected)
    throw Error(ErrorCode::DependentGenerators,
                std::string("monomials of weight ") + std::to_string(k) + " at " + level_name(level) +
                    " are not independent to precision " + std::to_string(prec));
  return out;
}

SpaceBasis basis_for_operators(Level level, long k, unsigned long max_p) {
  return build_basis(level, k, std::max<unsigned long>(max_p, 1) * working_precision(level, k));
}

SpaceBasis a0_zero_subspace(const SpaceBasis& basis) {
  const auto e = linalg::row_reduce(coefficient_matrix(basis.basis, basis.prec));
  SpaceBasis out{basis.level, basis.k, basis.prec, {}, "a0zero"};
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == 0) continue;
    std::vector<Rational> c(basis.prec);
    for (std::size_t n = 0; n < basis.prec; ++n) c[n] = e.rref(r, n);
    out.basis.emplace_back(std::move(c), basis.prec);
  }
  return out;
}

SpaceBasis cusp_subspace_level1(const SpaceBasis& basis) {
  if (basis.level != Level::SL2Z)
    throw Error(ErrorCode::InvalidArgument, "cusp_subspace_level1 needs a level 1 basis");
  SpaceBasis out = a0_zero_subspace(basis);
  out.label = "cusp";
  for (std::size_t j = 0; j < out.dim(); ++j)
    for (std::size_t i = 1; i <= out.dim(); ++i)
      if (out.basis[j][i] != (i == j + 1 ? 1 : 0))
        throw Error(ErrorCode::ResidualNonzero, "level 1 cusp basis is not in Victor Miller form");
  return out;
}

std::string HeckeOperator::tag() const {
  return kind == Kind::U2 ? std::string("u2") : "t" + std::to_string(p);
}

HeckeOperator parse_operator(const std::string& tag) {
  if (tag == "u2") return HeckeOperator::u2();
  if (tag.size() >= 2 && tag[0] == 't') {
    try {
      std::size_t used = 0;
      const unsigned long p = std::stoul(tag.substr(1), &used);
      if (used == tag.size() - 1 && padic::is_prime(p)) return HeckeOperator::t(p);
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown operator '" + tag + "'");
}

QSeries apply_operator(const HeckeOperator& op, const QSeries& f, Level level, long k) {
  if (op.kind == HeckeOperator::Kind::U2) return qseries::u_p(f, 2);
  return qseries::hecke_t_p(f, k, op.p, character_value(level, k, op.p));
}

OperatorMatrix operator_matrix(const HeckeOperator& op, const SpaceBasis& basis) {
  if (op.kind == HeckeOperator::Kind::U2) {
    if (basis.level == Level::SL2Z)
      throw Error(ErrorCode::UnsupportedOperator, "U2 does not preserve level 1 spaces");
  } else {
    if (!padic::is_prime(op.p)) throw Error(ErrorCode::InvalidArgument, std::to_string(op.p) + " is not prime");
    if (conductor(basis.level) % op.p == 0)
      throw Error(ErrorCode::UnsupportedOperator,
                  "T" + std::to_string(op.p) + " needs p prime to the level of " + level_name(basis.level));
  }

  const std::size_t dim = basis.dim();
  OperatorMatrix out{linalg::Matrix(dim, dim), op, basis.id(), 0};
  if (dim == 0) return out;

  std::vector<QSeries> images;
  images.reserve(dim);
  for (const auto& f : basis.basis) images.push_back(apply_operator(op, f, basis.level, basis.k));
  const std::size_t avail = images.front().prec();

  const auto e = linalg::row_reduce(coefficient_matrix(basis.basis, basis.prec));
  const std::size_t sturm =
      ceil_div(static_cast<std::size_t>(basis.k) * projective_index(basis.level), 12);
  if (e.pivots.back() >= avail || avail <= sturm + 1)
    throw Error(ErrorCode::InsufficientPrecision,
                "operator image has " + std::to_string(avail) + " coefficients; basis " + basis.id() +
                    " needs more precision");

  for (std::size_t j = 0; j < dim; ++j) {
    const QSeries& g = images[j];
    // Coordinates in the echelon rows are read off at the pivots, then mapped
    // back through the transform to the original basis.
    for (std::size_t i = 0; i < dim; ++i) {
      Rational s = 0;
      for (std::size_t r = 0; r < dim; ++r) s += g[e.pivots[r]] * e.transform(r, i);
      out.entries(i, j) = s;
    }
    for (std::size_t n = 0; n < avail; ++n) {
      Rational s = 0;
      for (std::size_t i = 0; i < dim; ++i) s += out.entries(i, j) * basis.basis[i][n];
      if (s != g[n])
        throw Error(ErrorCode::ResidualNonzero, op.tag() + " image of basis element " + std::to_string(j) +
                                                    " leaves the span at q^" + std::to_string(n));
    }
  }
  out.residual_checked = avail - dim;
  return out;
}

poly::Polynomial charpoly(const OperatorMatrix& m) { return linalg::charpoly(m.entries); }

std::vector<std::pair<Rational, int>> rational_eigenvalues(const OperatorMatrix& m) {
  if (m.entries.rows() == 0) return {};
  return poly::rational_roots(charpoly(m));
}

SlopeEigenform extract_slope_eigenform(const OperatorMatrix& m, const SpaceBasis& basis,
                                       const Rational& target_slope, unsigned long p) {
  const std::size_t dim = basis.dim();
  if (m.entries.rows() != dim) throw Error(ErrorCode::InvalidArgument, "matrix and basis differ in size");
  if (dim == 0) throw Error(ErrorCode::NoUniqueSlope, "empty space");

  const auto cp = charpoly(m);
  const auto rv = padic::newton_slopes(cp, p);
  const auto hits = std::count(rv.slopes.begin(), rv.slopes.end(), target_slope);
  if (hits != 1)
    throw Error(ErrorCode::NoUniqueSlope, std::to_string(hits) + " eigenvalues of slope " + target_slope.get_str());

  std::optional<Rational> lambda;
  for (const auto& [root, mult] : poly::rational_roots(cp))
    if (root != 0 && padic::val(root, p) == padic::Valuation(target_slope)) lambda = root;
  if (!lambda)
    throw Error(ErrorCode::IrrationalEigenvalue, "the slope " + target_slope.get_str() + " eigenvalue is not rational");

  linalg::Matrix shifted = m.entries;
  for (std::size_t i = 0; i < dim; ++i) shifted(i, i) -= *lambda;
  const auto ker = linalg::kernel(shifted);
  if (ker.size() != 1) throw Error(ErrorCode::ResidualNonzero, "eigenspace is not one-dimensional");

  QSeries form = QSeries::zero(basis.prec);
  for (std::size_t j = 0; j < dim; ++j) form = form + qseries::scalar_mul(basis.basis[j], ker[0][j]);
  std::size_t lead = form.prec() > 1 && form[1] != 0 ? 1 : form.order();
  if (lead >= form.prec()) throw Error(ErrorCode::InsufficientPrecision, "eigenform vanishes to working precision");
  form = qseries::scalar_mul(form, 1 / form[lead]);
  return {*lambda, form};
}

RefinementModel refinement(const Rational& a_p, long k, unsigned long p) {
  const poly::Polynomial hecke{rational_pow(p, k - 1), -a_p, Rational(1)};
  const auto rv = padic::newton_slopes(hecke, p);
  return {a_p, k, p, rv.slopes.at(0), rv.slopes.at(1)};
}

std::optional<int> ratio_order(const Rational& a_p, long k, unsigned long p) {
  // alpha/beta + beta/alpha = t - 2 with t = a_p^2 / p^{k-1}; a root of unity
  // of order d has 2 cos(2 pi j / d) rational only for d in {1, 2, 3, 4, 6}.
  const Rational norm = rational_pow(p, k - 1);
  const Rational t = a_p * a_p / norm;
  if (t == 4) throw Error(ErrorCode::RepeatedRoot, "a_p^2 = 4 p^{k-1}");
  if (t == 0) return 2;
  if (t == 1) return 3;
  if (t == 2) return 4;
  if (t == 3) return 6;
  return std::nullopt;
}

bool is_n_regular(const Rational& a_p, long k, unsigned long p, long n) {
  const auto order = ratio_order(a_p, k, p);
  return !order || *order > n - 1;
}

std::vector<HatadaEntry> hatada_check(long k_min, long k_max) {
  std::vector<HatadaEntry> out;
  for (long k = std::max<long>(k_min, 4); k <= k_max; ++k) {
    if (k % 2 != 0) continue;
    HatadaEntry entry;
    entry.k = k;
    const SpaceBasis cusp = cusp_subspace_level1(basis_for_operators(Level::SL2Z, k, 2));
    entry.dim = cusp.dim();
    if (entry.dim == 0) {
      entry.charpoly = {Rational(1)};
      out.push_back(std::move(entry));
      continue;
    }
    entry.charpoly = charpoly(operator_matrix(HeckeOperator::t(2), cusp));
    for (std::size_t i = 0; i < entry.dim; ++i) {
      const Rational& c = entry.charpoly[i];
      if (!is_integral(c)) {
        entry.congruent_mod3 = entry.congruent_mod8 = false;
        continue;
      }
      if (mpz_divisible_ui_p(c.get_num_mpz_t(), 3) == 0) entry.congruent_mod3 = false;
      if (mpz_divisible_ui_p(c.get_num_mpz_t(), 8) == 0) entry.congruent_mod8 = false;
    }
    entry.nonzero_constant = entry.charpoly[0] != 0;
    const auto rv = padic::newton_slopes(entry.charpoly, 2);
    entry.slopes = rv.slopes;
    entry.non_ordinary = rv.zero_roots == 0 &&
                         std::all_of(rv.slopes.begin(), rv.slopes.end(), [](const Rational& s) { return s > 0; });
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace ppwalk::spaces
