#pragma once

#include "ppwalk/rational.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ppwalk::qseries {

// a_0 + a_1 q + ... + a_{prec-1} q^{prec-1} + O(q^prec).
// Every operation records the precision it can certify; nothing beyond
// prec() is ever claimed.
class QSeries {
 public:
  QSeries() = default;
  // Coefficients past `coeffs.size()` (up to prec) are zero.
  QSeries(std::vector<Rational> coeffs, std::size_t prec);

  static QSeries zero(std::size_t prec) { return QSeries({}, prec); }
  static QSeries constant(const Rational& c, std::size_t prec) { return QSeries({c}, prec); }

  std::size_t prec() const { return coeffs_.size(); }
  const Rational& operator[](std::size_t n) const;
  std::span<const Rational> coeffs() const { return coeffs_; }

  // Index of the first nonzero coefficient, or prec() when all known ones are 0.
  std::size_t order() const;
  bool all_integral() const;

  QSeries truncated(std::size_t prec) const;
  // q^s * this.
  QSeries shifted(std::size_t s) const;

 private:
  std::vector<Rational> coeffs_;
};

QSeries add(const QSeries& a, const QSeries& b);
QSeries sub(const QSeries& a, const QSeries& b);
QSeries scalar_mul(const QSeries& a, const Rational& c);
QSeries mul(const QSeries& a, const QSeries& b);
QSeries pow(const QSeries& a, unsigned n);
// Throws NonUnitConstantTerm when a_0 = 0.
QSeries invert_unit(const QSeries& a);

inline QSeries operator+(const QSeries& a, const QSeries& b) { return add(a, b); }
inline QSeries operator-(const QSeries& a, const QSeries& b) { return sub(a, b); }
inline QSeries operator*(const QSeries& a, const QSeries& b) { return mul(a, b); }
inline QSeries operator*(const Rational& c, const QSeries& a) { return scalar_mul(a, c); }

// Agreement on the first min(a.prec(), b.prec()) coefficients.
bool equal_to_shared_precision(const QSeries& a, const QSeries& b);

// U_p: a_n -> a_{pn}, precision floor(prec/p). Throws InsufficientPrecision when prec < p.
QSeries u_p(const QSeries& a, unsigned long p);
// V_p: q -> q^p.
QSeries v_p(const QSeries& a, unsigned long p);
// T_p = U_p + chi(p) p^{k-1} V_p on forms of weight k with character value chi(p).
QSeries hecke_t_p(const QSeries& a, long k, unsigned long p, int character_value = 1);

enum class Standard { E2, E4, E6, Delta, Theta, FSigmaOdd, ALevel2, HauptmodulF };

// Requires prec >= 2.
QSeries standard_series(Standard name, std::size_t prec);
const char* standard_name(Standard name);

// sigma_k(n) for n = 0..count-1 (sigma_k(0) = 0).
std::vector<Integer> divisor_sums(unsigned k, std::size_t count);

// Coefficients reduced into [0, modulus); throws InvalidArgument unless every
// coefficient is integral at the primes dividing modulus.
std::vector<unsigned long> reduce_mod(const QSeries& a, unsigned long modulus);

// "# prec P" header, then one "n coefficient" line per coefficient.
std::string to_text(const QSeries& a);
QSeries from_text(std::string_view text);

}  // namespace ppwalk::qseries
