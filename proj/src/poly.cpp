#include "ppwalk/poly.hpp"

#include "ppwalk/errors.hpp"

#include <algorithm>
#include <cstdint>

namespace ppwalk::poly {

void normalize(Polynomial& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

long degree(const Polynomial& f) {
  long d = static_cast<long>(f.size()) - 1;
  while (d >= 0 && f[static_cast<std::size_t>(d)] == 0) --d;
  return d;
}

Rational eval(const Polynomial& f, const Rational& x) {
  Rational acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial derivative(const Polynomial& f) {
  Polynomial d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
  normalize(d);
  return d;
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial c(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  normalize(c);
  return c;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  Polynomial den = b;
  normalize(den);
  if (den.empty()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  Polynomial rem = a;
  normalize(rem);
  const std::size_t db = den.size() - 1;
  if (rem.size() <= db) return {Polynomial{}, rem};

  Polynomial quo(rem.size() - db, Rational(0));
  for (std::size_t i = rem.size(); i-- > db;) {
    if (rem[i] == 0) continue;
    const Rational c = rem[i] / den.back();
    quo[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= c * den[j];
  }
  normalize(quo);
  normalize(rem);
  return {quo, rem};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  normalize(x);
  normalize(y);
  while (!y.empty()) {
    auto r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (!x.empty()) {
    const Rational lead = x.back();
    for (auto& c : x) c /= lead;
  }
  return x;
}

namespace {

// Arithmetic in Z/l for small primes l; polynomials low degree first.
using ModPoly = std::vector<std::uint64_t>;

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

void trim(ModPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ModPoly modpoly_rem(ModPoly a, const ModPoly& b, std::uint64_t l) {
  trim(a);
  const std::uint64_t inv = powmod(b.back(), l - 2, l);
  while (a.size() >= b.size()) {
    const std::uint64_t c = a.back() * inv % l;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = (a[shift + j] + (l - c) * b[j]) % l;
    trim(a);
  }
  return a;
}

bool squarefree_mod(const ModPoly& f, std::uint64_t l) {
  ModPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * (i % l) % l);
  trim(d);
  if (d.empty()) return false;
  ModPoly a = f, b = d;
  while (!b.empty()) {
    auto r = modpoly_rem(a, b, l);
    a = std::move(b);
    b = std::move(r);
  }
  return a.size() == 1;
}

Integer eval_int(const std::vector<Integer>& f, const Integer& x) {
  Integer acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Integer eval_mod(const std::vector<Integer>& f, const Integer& x, const Integer& m) {
  Integer acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    acc = acc * x + *it;
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
  }
  return acc;
}

// Integer roots of a monic squarefree integer polynomial, by Hensel lifting
// every root modulo a prime l at which the polynomial stays squarefree.
std::vector<Integer> integer_roots_monic(const std::vector<Integer>& f) {
  const std::size_t deg = f.size() - 1;
  if (deg == 0) return {};

  // Cauchy bound: |root| <= 1 + max |c_i|.
  Integer bound = 0;
  for (std::size_t i = 0; i < deg; ++i)
    if (abs(f[i]) > bound) bound = abs(f[i]);
  bound += 1;

  std::uint64_t l = 3;
  ModPoly fl;
  for (;; l += 2) {
    bool prime = true;
    for (std::uint64_t d = 3; d * d <= l; d += 2)
      if (l % d == 0) prime = false;
    if (!prime) continue;
    fl.clear();
    for (const auto& c : f) {
      Integer r;
      mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), l);
      fl.push_back(r.get_ui());
    }
    if (squarefree_mod(fl, l)) break;
  }

  const std::vector<Integer> df = [&] {
    std::vector<Integer> d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<unsigned long>(i));
    return d;
  }();

  std::vector<Integer> roots;
  for (std::uint64_t r0 = 0; r0 < l; ++r0) {
    std::uint64_t acc = 0;
    for (auto it = fl.rbegin(); it != fl.rend(); ++it) acc = (acc * r0 + *it) % l;
    if (acc != 0) continue;

    // Quadratic Newton lifting until l^e exceeds 2 * bound.
    Integer modulus = l;
    Integer x = r0;
    while (modulus <= 2 * bound) {
      modulus *= modulus;
      const Integer fx = eval_mod(f, x, modulus);
      Integer dfx = eval_mod(df, x, modulus);
      Integer inv;
      if (mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), modulus.get_mpz_t()) == 0) break;
      x = x - fx * inv;
      mpz_mod(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
    }
    if (2 * x > modulus) x -= modulus;
    if (eval_int(f, x) == 0) roots.push_back(x);
  }
  return roots;
}

}  // namespace

std::vector<std::pair<Rational, int>> rational_roots(const Polynomial& f_in) {
  Polynomial f = f_in;
  normalize(f);
  if (f.empty()) throw Error(ErrorCode::EmptyPolynomial, "zero polynomial has every root");

  std::vector<std::pair<Rational, int>> out;
  int zero_mult = 0;
  while (f.front() == 0) {
    f.erase(f.begin());
    ++zero_mult;
  }
  if (zero_mult > 0) out.emplace_back(Rational(0), zero_mult);

  if (f.size() > 1) {
    // Squarefree part, made monic with integer coefficients via X = Y / a.
    Polynomial sq = divmod(f, gcd(f, derivative(f))).first;
    const Rational lead = sq.back();
    for (auto& c : sq) c /= lead;
    Integer scale = 1;
    for (const auto& c : sq) scale = lcm(scale, Integer(c.get_den()));
    const std::size_t n = sq.size() - 1;
    std::vector<Integer> g(n + 1);
    Integer power = 1;  // scale^(n - i) built from the top down
    for (std::size_t i = n + 1; i-- > 0;) {
      const Rational c = sq[i] * Rational(power);
      g[i] = c.get_num();
      power *= scale;
    }
    for (const auto& y : integer_roots_monic(g)) {
      const Rational root = Rational(y, scale);
      Rational r = root;
      r.canonicalize();
      int mult = 0;
      Polynomial rest = f;
      const Polynomial lin{-r, Rational(1)};
      for (;;) {
        auto [q, rem] = divmod(rest, lin);
        if (!rem.empty()) break;
        rest = std::move(q);
        ++mult;
      }
      out.emplace_back(r, mult);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::string to_string(const Polynomial& f_in) {
  Polynomial f = f_in;
  normalize(f);
  if (f.empty()) return "0";
  std::string out;
  for (std::size_t i = f.size(); i-- > 0;) {
    const Rational& c = f[i];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    const bool unit = mag == 1;
    if (!unit || i == 0) out += is_integral(mag) ? mag.get_num().get_str() : "(" + mag.get_str() + ")";
    if (i >= 1) out += "X";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

}  // namespace ppwalk::poly
