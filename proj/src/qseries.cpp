#include "ppwalk/qseries.hpp"

#include "ppwalk/errors.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace ppwalk::qseries {

QSeries::QSeries(std::vector<Rational> coeffs, std::size_t prec) : coeffs_(std::move(coeffs)) {
  coeffs_.resize(prec, Rational(0));
}

const Rational& QSeries::operator[](std::size_t n) const {
  if (n >= coeffs_.size())
    throw Error(ErrorCode::InsufficientPrecision,
                "coefficient " + std::to_string(n) + " beyond precision " + std::to_string(coeffs_.size()));
  return coeffs_[n];
}

std::size_t QSeries::order() const {
  std::size_t n = 0;
  while (n < coeffs_.size() && coeffs_[n] == 0) ++n;
  return n;
}

bool QSeries::all_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

QSeries QSeries::truncated(std::size_t prec) const {
  if (prec > coeffs_.size()) throw Error(ErrorCode::InsufficientPrecision, "cannot extend a truncated series");
  return QSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + static_cast<long>(prec)), prec);
}

QSeries QSeries::shifted(std::size_t s) const {
  std::vector<Rational> c(s, Rational(0));
  c.insert(c.end(), coeffs_.begin(), coeffs_.end());
  return QSeries(std::move(c), coeffs_.size() + s);
}

QSeries add(const QSeries& a, const QSeries& b) {
  const std::size_t prec = std::min(a.prec(), b.prec());
  std::vector<Rational> c(prec);
  for (std::size_t n = 0; n < prec; ++n) c[n] = a[n] + b[n];
  return QSeries(std::move(c), prec);
}

QSeries sub(const QSeries& a, const QSeries& b) {
  const std::size_t prec = std::min(a.prec(), b.prec());
  std::vector<Rational> c(prec);
  for (std::size_t n = 0; n < prec; ++n) c[n] = a[n] - b[n];
  return QSeries(std::move(c), prec);
}

QSeries scalar_mul(const QSeries& a, const Rational& s) {
  std::vector<Rational> c(a.coeffs().begin(), a.coeffs().end());
  for (auto& x : c) x *= s;
  return QSeries(std::move(c), a.prec());
}

QSeries mul(const QSeries& a, const QSeries& b) {
  const std::size_t va = a.order(), vb = b.order();
  const std::size_t prec = std::min(a.prec() + vb, b.prec() + va);
  std::vector<Rational> c(prec, Rational(0));
  if (va >= a.prec() || vb >= b.prec()) return QSeries(std::move(c), prec);

  if (a.all_integral() && b.all_integral()) {
    std::vector<Integer> acc(prec, Integer(0));
    for (std::size_t i = va; i < a.prec() && i < prec; ++i) {
      const mpz_srcptr ai = a[i].get_num_mpz_t();
      if (mpz_sgn(ai) == 0) continue;
      const std::size_t jmax = std::min(b.prec(), prec - i);
      for (std::size_t j = vb; j < jmax; ++j) mpz_addmul(acc[i + j].get_mpz_t(), ai, b[j].get_num_mpz_t());
    }
    for (std::size_t n = 0; n < prec; ++n) c[n] = Rational(acc[n]);
  } else {
    for (std::size_t i = va; i < a.prec() && i < prec; ++i) {
      if (a[i] == 0) continue;
      const std::size_t jmax = std::min(b.prec(), prec - i);
      for (std::size_t j = vb; j < jmax; ++j) c[i + j] += a[i] * b[j];
    }
  }
  return QSeries(std::move(c), prec);
}

QSeries pow(const QSeries& a, unsigned n) {
  if (n == 0) return QSeries::constant(1, a.prec());
  std::optional<QSeries> result;
  QSeries base = a;
  for (;;) {
    if (n & 1) result = result ? mul(*result, base) : base;
    n >>= 1;
    if (n == 0) break;
    base = mul(base, base);
  }
  return *result;
}

QSeries invert_unit(const QSeries& a) {
  if (a.prec() == 0 || a[0] == 0) throw Error(ErrorCode::NonUnitConstantTerm, "constant term is zero");
  const std::size_t prec = a.prec();
  const Rational inv0 = 1 / a[0];
  std::vector<Rational> b(prec, Rational(0));
  b[0] = inv0;
  for (std::size_t n = 1; n < prec; ++n) {
    Rational s = 0;
    for (std::size_t i = 1; i <= n; ++i)
      if (a[i] != 0) s += a[i] * b[n - i];
    b[n] = -inv0 * s;
  }
  return QSeries(std::move(b), prec);
}

bool equal_to_shared_precision(const QSeries& a, const QSeries& b) {
  const std::size_t prec = std::min(a.prec(), b.prec());
  for (std::size_t n = 0; n < prec; ++n)
    if (a[n] != b[n]) return false;
  return true;
}

QSeries u_p(const QSeries& a, unsigned long p) {
  if (p < 2) throw Error(ErrorCode::InvalidArgument, "U_p needs p >= 2");
  if (a.prec() < p)
    throw Error(ErrorCode::InsufficientPrecision,
                "U_" + std::to_string(p) + " needs precision >= " + std::to_string(p));
  const std::size_t prec = a.prec() / p;
  std::vector<Rational> c(prec);
  for (std::size_t n = 0; n < prec; ++n) c[n] = a[n * p];
  return QSeries(std::move(c), prec);
}

QSeries v_p(const QSeries& a, unsigned long p) {
  if (p < 2) throw Error(ErrorCode::InvalidArgument, "V_p needs p >= 2");
  const std::size_t prec = a.prec() * p;
  std::vector<Rational> c(prec, Rational(0));
  for (std::size_t n = 0; n < a.prec(); ++n) c[n * p] = a[n];
  return QSeries(std::move(c), prec);
}

QSeries hecke_t_p(const QSeries& a, long k, unsigned long p, int character_value) {
  const Rational factor = rational_pow(p, k - 1) * character_value;
  return add(u_p(a, p), scalar_mul(v_p(a, p), factor));
}

std::vector<Integer> divisor_sums(unsigned k, std::size_t count) {
  std::vector<Integer> s(count, Integer(0));
  for (std::size_t d = 1; d < count; ++d) {
    Integer dk;
    mpz_ui_pow_ui(dk.get_mpz_t(), d, k);
    for (std::size_t n = d; n < count; n += d) s[n] += dk;
  }
  return s;
}

namespace {

// prod_{n >= 1} (1 - q^n) by the pentagonal number theorem.
QSeries euler_product(std::size_t prec) {
  std::vector<Rational> c(prec, Rational(0));
  for (long j = 0;; ++j) {
    bool placed = false;
    for (long s : {j, -j}) {
      const long g = s * (3 * s - 1) / 2;
      if (g < static_cast<long>(prec)) {
        c[static_cast<std::size_t>(g)] = (j % 2 == 0) ? 1 : -1;
        placed = true;
      }
      if (j == 0) break;
    }
    if (!placed) break;
  }
  return QSeries(std::move(c), prec);
}

QSeries eisenstein(unsigned k, long factor, std::size_t prec) {
  const auto sigma = divisor_sums(k - 1, prec);
  std::vector<Rational> c(prec);
  c[0] = 1;
  for (std::size_t n = 1; n < prec; ++n) c[n] = Rational(sigma[n] * factor);
  return QSeries(std::move(c), prec);
}

}  // namespace

const char* standard_name(Standard name) {
  switch (name) {
    case Standard::E2: return "E2";
    case Standard::E4: return "E4";
    case Standard::E6: return "E6";
    case Standard::Delta: return "Delta";
    case Standard::Theta: return "Theta";
    case Standard::FSigmaOdd: return "F_sigma_odd";
    case Standard::ALevel2: return "A_level2";
    case Standard::HauptmodulF: return "Hauptmodul_f";
  }
  return "?";
}

QSeries standard_series(Standard name, std::size_t prec) {
  if (prec < 2) throw Error(ErrorCode::InsufficientPrecision, "standard series need prec >= 2");
  switch (name) {
    case Standard::E2: return eisenstein(2, -24, prec);
    case Standard::E4: return eisenstein(4, 240, prec);
    case Standard::E6: return eisenstein(6, -504, prec);
    case Standard::Delta: return pow(euler_product(prec - 1), 24).truncated(prec - 1).shifted(1);
    case Standard::Theta: {
      std::vector<Rational> c(prec, Rational(0));
      c[0] = 1;
      for (std::size_t n = 1; n * n < prec; ++n) c[n * n] = 2;
      return QSeries(std::move(c), prec);
    }
    case Standard::FSigmaOdd: {
      const auto sigma = divisor_sums(1, prec);
      std::vector<Rational> c(prec, Rational(0));
      for (std::size_t n = 1; n < prec; n += 2) c[n] = Rational(sigma[n]);
      return QSeries(std::move(c), prec);
    }
    case Standard::ALevel2: {
      const QSeries e2 = eisenstein(2, -24, prec);
      return sub(scalar_mul(v_p(e2, 2), 2), e2).truncated(prec);
    }
    case Standard::HauptmodulF: {
      // prod (1 + q^n) = prod (1 - q^{2n}) / prod (1 - q^n)
      const QSeries e = euler_product(prec - 1);
      const QSeries plus = mul(v_p(e, 2), invert_unit(e)).truncated(prec - 1);
      return pow(plus, 24).truncated(prec - 1).shifted(1);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown standard series");
}

std::vector<unsigned long> reduce_mod(const QSeries& a, unsigned long modulus) {
  if (modulus == 0) throw Error(ErrorCode::InvalidArgument, "modulus must be positive");
  const Integer m(modulus);
  std::vector<unsigned long> out(a.prec());
  for (std::size_t n = 0; n < a.prec(); ++n) {
    const Rational& c = a[n];
    Integer inv;
    Integer den = c.get_den();
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0 && modulus != 1)
      throw Error(ErrorCode::InvalidArgument, "coefficient " + std::to_string(n) + " not integral mod " +
                                                  std::to_string(modulus));
    Integer r = c.get_num() * inv;
    out[n] = mpz_fdiv_ui(r.get_mpz_t(), modulus);
  }
  return out;
}

std::string to_text(const QSeries& a) {
  std::ostringstream os;
  os << "# prec " << a.prec() << '\n';
  for (std::size_t n = 0; n < a.prec(); ++n) os << n << ' ' << to_string(a[n]) << '\n';
  return os.str();
}

QSeries from_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t prec = 0;
  bool have_prec = false;
  std::vector<Rational> c;
  std::vector<bool> seen;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string hash, key;
      ls >> hash >> key;
      if (key == "prec" && (ls >> prec)) {
        have_prec = true;
        c.assign(prec, Rational(0));
        seen.assign(prec, false);
      }
      continue;
    }
    if (!have_prec) throw Error(ErrorCode::ParseError, "missing '# prec' header");
    std::size_t n = 0;
    std::string value;
    if (!(ls >> n >> value)) throw Error(ErrorCode::ParseError, "bad line: " + line);
    if (n >= prec || seen[n]) throw Error(ErrorCode::ParseError, "index out of range or repeated: " + line);
    c[n] = parse_rational(value);
    seen[n] = true;
  }
  if (!have_prec) throw Error(ErrorCode::ParseError, "missing '# prec' header");
  return QSeries(std::move(c), prec);
}

}  // namespace ppwalk::qseries
