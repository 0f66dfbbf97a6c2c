#include "ppwalk/oracles.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>

namespace ppwalk::oracles {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;
using nlohmann::json;
using Z = cpp_int;
using Q = cpp_rational;
using Series = std::vector<Z>;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error("oracle self-check failed: " + what);
}

std::string str(const Q& x) {
  return boost::multiprecision::numerator(x).str() + "/" + boost::multiprecision::denominator(x).str();
}
std::string str(const Z& x) { return x.str() + "/1"; }

template <class T>
json str_list(const std::vector<T>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(str(x));
  return a;
}

// ---- power series over Z, truncated to a fixed length ----

Series mul(const Series& a, const Series& b, std::size_t n) {
  Series c(n, 0);
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

Series power(const Series& a, unsigned e, std::size_t n) {
  Series r(n, 0);
  r[0] = 1;
  for (unsigned i = 0; i < e; ++i) r = mul(r, a, n);
  return r;
}

// prod_{k>=1} (1 + sign q^k) to n terms.
Series euler_like(std::size_t n, int sign) {
  Series s(n, 0);
  s[0] = 1;
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i) {
      s[i] += sign * s[i - k];
      if (i == k) break;
    }
  return s;
}

Series shift(const Series& a, std::size_t s, std::size_t n) {
  Series r(n, 0);
  for (std::size_t i = 0; i + s < n && i < a.size(); ++i) r[i + s] = a[i];
  return r;
}

// q prod (1 - q^k)^24.
Series delta(std::size_t n) { return shift(power(euler_like(n, -1), 24, n), 1, n); }

// Division of power series whose divisor has constant term 1.
Series divide_unit(const Series& a, const Series& b, std::size_t n) {
  require(b[0] == 1, "unit divisor");
  Series q(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Z acc = i < a.size() ? a[i] : Z(0);
    for (std::size_t j = 1; j <= i && j < b.size(); ++j) acc -= b[j] * q[i - j];
    q[i] = acc;
  }
  return q;
}

Series hauptmodul(std::size_t n) {
  const Series product = shift(power(euler_like(n, 1), 24, n), 1, n);
  // Cross-check against Delta(q^2) / Delta(q), both divided by their leading q-power.
  const Series d = delta(2 * n + 2);
  Series d_over_q(n), d2_over_q2(n, 0);
  for (std::size_t i = 0; i < n; ++i) d_over_q[i] = d[i + 1];
  for (std::size_t i = 0; 2 * i < n; ++i) d2_over_q2[2 * i] = d[i + 1];
  const Series ratio = shift(divide_unit(d2_over_q2, d_over_q, n), 1, n);
  require(ratio == product, "hauptmodul product vs quotient");
  return product;
}

Z sigma(unsigned k, unsigned long n) {
  Z s = 0;
  for (unsigned long d = 1; d <= n; ++d)
    if (n % d == 0) s += boost::multiprecision::pow(Z(d), k);
  return s;
}

Series eisenstein(unsigned k, long c, std::size_t n) {
  Series s(n, 0);
  s[0] = 1;
  for (std::size_t i = 1; i < n; ++i) s[i] = c * sigma(k, i);
  return s;
}

Series theta(std::size_t n) {
  Series s(n, 0);
  for (long m = -100; m <= 100; ++m)
    if (static_cast<std::size_t>(m * m) < n) s[m * m] += 1;
  return s;
}

Series sigma_odd(std::size_t n) {
  Series s(n, 0);
  for (std::size_t i = 1; i < n; i += 2) s[i] = sigma(1, i);
  return s;
}

// ---- 2-adic valuation by repeated halving ----

long v2(Z x) {
  require(x != 0, "valuation of zero");
  long v = 0;
  while (x % 2 == 0) {
    x /= 2;
    ++v;
  }
  return v;
}

long vp(Z x, long p) {
  require(x != 0, "valuation of zero");
  long v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

Q vp(const Q& x, long p) {
  return Q(vp(boost::multiprecision::numerator(x), p) - vp(boost::multiprecision::denominator(x), p));
}

// ---- Newton polygon by gift wrapping ----

// Root valuations (ascending) of sum c_i X^i; zero coefficients skipped, zero
// roots excluded.
std::vector<Q> root_valuations(const std::vector<Q>& c, long p) {
  std::vector<std::pair<long, Q>> pts;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) pts.emplace_back(static_cast<long>(i), vp(c[i], p));
  require(!pts.empty(), "nonzero polynomial");
  std::vector<Q> out;
  std::size_t at = 0;
  while (at + 1 < pts.size()) {
    std::size_t best = at + 1;
    Q best_slope = (pts[best].second - pts[at].second) / (pts[best].first - pts[at].first);
    for (std::size_t j = at + 2; j < pts.size(); ++j) {
      const Q s = (pts[j].second - pts[at].second) / (pts[j].first - pts[at].first);
      if (s <= best_slope) {
        best_slope = s;
        best = j;
      }
    }
    for (long r = pts[at].first; r < pts[best].first; ++r) out.push_back(-best_slope);
    at = best;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- dense rational linear algebra ----

using QMatrix = std::vector<std::vector<Q>>;

std::size_t rank_of(QMatrix m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      const Q f = m[i][c] / m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

std::vector<Q> to_q(const Series& s) { return {s.begin(), s.end()}; }

// Berkowitz: characteristic polynomial det(X - M), low degree first.
std::vector<Z> berkowitz(const std::vector<std::vector<Z>>& m) {
  const std::size_t n = m.size();
  std::vector<Z> c{1, -m[0][0]};  // high degree first
  for (std::size_t r = 1; r < n; ++r) {
    std::vector<Z> t(r + 2);
    t[0] = 1;
    t[1] = -m[r][r];
    std::vector<Z> row(m[r].begin(), m[r].begin() + r);  // R A^i
    for (std::size_t i = 2; i < r + 2; ++i) {
      Z dot = 0;
      for (std::size_t j = 0; j < r; ++j) dot += row[j] * m[j][r];
      t[i] = -dot;
      std::vector<Z> next(r, 0);
      for (std::size_t j = 0; j < r; ++j) {
        if (row[j] == 0) continue;
        for (std::size_t l = 0; l < r; ++l) next[l] += row[j] * m[j][l];
      }
      row = std::move(next);
    }
    std::vector<Z> nc(r + 2, 0);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= i && j < c.size(); ++j) nc[i] += t[i - j] * c[j];
    c = std::move(nc);
  }
  std::reverse(c.begin(), c.end());
  return c;
}

// ---- quadratic field Q(sqrt D) ----

struct Quad {
  Q x, y;  // x + y sqrt(D)
};

Quad qmul(const Quad& a, const Quad& b, const Q& d) { return {a.x * b.x + d * a.y * b.y, a.x * b.y + a.y * b.x}; }

// Smallest d <= 12 with (alpha/beta)^d = 1, by comparing alpha^d with its conjugate.
std::optional<int> ratio_order_brute(const Q& a, long k, long p) {
  const Q disc = a * a - 4 * Q(boost::multiprecision::pow(Z(p), static_cast<unsigned>(k - 1)));
  if (disc == 0) return 0;  // repeated root marker
  const Quad alpha{a / 2, Q(1, 2)};
  Quad acc{1, 0};
  for (int d = 1; d <= 12; ++d) {
    acc = qmul(acc, alpha, disc);
    if (acc.y == 0) return d;
  }
  return std::nullopt;
}

json order_json(const std::optional<int>& o) {
  if (!o) return "infinite";
  if (*o == 0) return "repeated";
  return *o;
}

// ---- weight space arithmetic ----

Q w_valuation(long k, long m) {
  if (m >= 1) return Q(1, Z(1) << (m - 1));
  return Q(v2(boost::multiprecision::pow(Z(5), static_cast<unsigned>(k - 2)) - 1));
}

// ---- individual oracles ----

json tau_prefix() {
  const Series d = delta(11);
  return str_list(std::vector<Z>(d.begin() + 1, d.end()));
}

json delta_prec4() {
  const Series d = delta(4);
  return str_list(d);
}

json hauptmodul_prefix() { return str_list(hauptmodul(8)); }

json val_5_10() { return v2(boost::multiprecision::pow(Z(5), 10) - 1); }

json newton_delta_refinement() {
  const Series d = delta(3);
  return str_list(root_valuations({Q(2048), Q(-d[2]), Q(1)}, 2));
}

Z a2_s16() {
  const Series f = mul(delta(4), eisenstein(3, 240, 4), 4);
  return f[2];
}

json newton_s16_refinement() { return str_list(root_valuations({Q(Z(1) << 15), Q(-a2_s16()), Q(1)}, 2)); }

json t2_delta() {
  const std::size_t n = 42;
  const Series d = delta(n);
  for (std::size_t i = 1; 2 * i < n; ++i) {
    const Z lhs = d[2 * i] + (i % 2 == 0 ? (Z(1) << 11) * d[i / 2] : Z(0));
    require(lhs == d[2] * d[i], "tau(2n) + 2^11 tau(n/2) = tau(2) tau(n)");
  }
  return str(d[2]);
}

json t2_e4() {
  const std::size_t n = 42;
  const Series e = eisenstein(3, 240, n);
  const Z ev = 1 + 8;
  require(e[0] * ev == e[0] + 8 * e[0], "constant term");
  for (std::size_t i = 1; i < 20; ++i) {
    const Z lhs = e[2 * i] + (i % 2 == 0 ? Z(8) * e[i / 2] : Z(0));
    require(lhs == ev * e[i], "T2 E4 coefficient");
  }
  return str(ev);
}

std::size_t rank_of_monomials(const std::vector<Series>& ms, std::size_t n) {
  QMatrix m;
  for (const auto& s : ms) {
    auto row = to_q(s);
    row.resize(n);
    m.push_back(row);
  }
  return rank_of(m);
}

json dim_m5_gamma1_4() {
  const std::size_t n = 30;
  const Series t2 = power(theta(n), 2, n), f = sigma_odd(n);
  std::vector<Series> ms;
  for (unsigned b = 0; 2 * b <= 5; ++b) ms.push_back(mul(power(t2, 5 - 2 * b, n), power(f, b, n), n));
  return rank_of_monomials(ms, n);
}

Series a_level2(std::size_t n) {
  const Series e2 = eisenstein(1, -24, n);
  Series r(n, 0);
  for (std::size_t i = 0; i < n; ++i) r[i] = (i % 2 == 0 ? 2 * e2[i / 2] : Z(0)) - e2[i];
  return r;
}

json dim_m8_gamma0_2() {
  const std::size_t n = 30;
  const Series a = a_level2(n), e4 = eisenstein(3, 240, n);
  std::vector<Series> ms{power(a, 4, n), mul(power(a, 2, n), e4, n), power(e4, 2, n)};
  return rank_of_monomials(ms, n);
}

// Victor Miller basis of S_24 from Delta E4^3 and Delta^2, and T2 on it.
json s24_t2_charpoly() {
  const std::size_t n = 40;
  const Series d = delta(n);
  const Series g1 = mul(d, power(eisenstein(3, 240, n), 3, n), n);
  const Series g2 = mul(d, d, n);
  // f1 = g1 - g1[2] g2 has a_2 = 0; f2 = g2 = q^2 + ...
  Series f1(n), f2 = g2;
  for (std::size_t i = 0; i < n; ++i) f1[i] = g1[i] - g1[2] * g2[i];
  require(f1[1] == 1 && f1[2] == 0 && f2[1] == 0 && f2[2] == 1, "Miller basis");
  const Z two23 = Z(1) << 23;
  auto t2 = [&](const Series& f) {
    Series r(n / 2, 0);
    for (std::size_t i = 0; i < n / 2; ++i) r[i] = f[2 * i] + (i % 2 == 0 ? two23 * f[i / 2] : Z(0));
    return r;
  };
  const Series h1 = t2(f1), h2 = t2(f2);
  // h_j = h_j[1] f1 + h_j[2] f2; confirm on the remaining coefficients.
  for (std::size_t i = 0; i < n / 2; ++i) {
    require(h1[i] == h1[1] * f1[i] + h1[2] * f2[i], "T2 f1 in span");
    require(h2[i] == h2[1] * f1[i] + h2[2] * f2[i], "T2 f2 in span");
  }
  const Z tr = h1[1] + h2[2], det = h1[1] * h2[2] - h1[2] * h2[1];
  return str_list(std::vector<Z>{det, -tr, 1});
}

json s24_dim() {
  const std::size_t n = 30;
  const Series d = delta(n);
  std::vector<Series> ms{mul(d, power(eisenstein(3, 240, n), 3, n), n), mul(d, d, n)};
  return rank_of_monomials(ms, n);
}

json s12_t2_charpoly() {
  const Series d = delta(3);
  return str_list(std::vector<Z>{-d[2], 1});
}

// U2 on {a_0 = 0} in M_5(Gamma1(4)), spanned by theta^6 F and theta^2 F^2.
struct F0Data {
  std::vector<Z> charpoly;
  std::vector<Q> form;
};

F0Data f0_data() {
  const std::size_t n = 40;
  const Series t2 = power(theta(n), 2, n), f = sigma_odd(n);
  const Series g1 = mul(power(t2, 3, n), f, n), g2 = mul(t2, power(f, 2, n), n);
  require(g1[0] == 0 && g2[0] == 0 && g1[1] == 1 && g2[1] == 0 && g2[2] == 1, "slice basis shape");
  // Echelon: e1 = g1 - g1[2] g2, e2 = g2.
  Series e1(n);
  for (std::size_t i = 0; i < n; ++i) e1[i] = g1[i] - g1[2] * g2[i];
  auto u2 = [&](const Series& s) {
    Series r(n / 2);
    for (std::size_t i = 0; i < n / 2; ++i) r[i] = s[2 * i];
    return r;
  };
  const Series h1 = u2(e1), h2 = u2(g2);
  for (std::size_t i = 0; i < n / 2; ++i) {
    require(h1[i] == h1[1] * e1[i] + h1[2] * g2[i], "U2 e1 in span");
    require(h2[i] == h2[1] * e1[i] + h2[2] * g2[i], "U2 e2 in span");
  }
  // Matrix columns (h1[1], h1[2]), (h2[1], h2[2]).
  const Z a = h1[1], b = h2[1], c = h1[2], d = h2[2];
  F0Data out;
  out.charpoly = {a * d - b * c, -(a + d), 1};
  // Eigenvector for -4 with first coordinate 1: (a + 4) x + b y = 0.
  const Q lambda = -4;
  require(Q(out.charpoly[0]) + Q(out.charpoly[1]) * lambda + lambda * lambda == 0, "-4 is an eigenvalue");
  Q x = 1, y;
  if (b != 0) {
    y = -(Q(a) - lambda) / Q(b);
  } else {
    require(Q(d) - lambda != 0, "simple eigenvalue");
    y = -Q(c) / (Q(d) - lambda);
  }
  for (std::size_t i = 0; i < 9; ++i) out.form.push_back(x * Q(e1[i]) + y * Q(g2[i]));
  // Confirm the eigen-relation on every available coefficient.
  for (std::size_t i = 0; i < n / 2; ++i)
    require(x * Q(h1[i]) + y * Q(h2[i]) == lambda * (x * Q(e1[i]) + y * Q(g2[i])), "eigenform relation");
  return out;
}

json f0_coefficients() {
  const auto fd = f0_data();
  return str_list(std::vector<Q>(fd.form.begin() + 1, fd.form.end()));
}

json f0_slice_charpoly() { return str_list(f0_data().charpoly); }

json f0_slice_slopes() {
  const auto cp = f0_data().charpoly;
  return str_list(root_valuations({Q(cp[0]), Q(cp[1]), Q(cp[2])}, 2));
}

json refinement_pair(long a, long k, long p) {
  return str_list(root_valuations({Q(boost::multiprecision::pow(Z(p), static_cast<unsigned>(k - 1))), Q(-a), Q(1)}, p));
}

json gamma0_2_k12_u2_slopes() {
  // Eisenstein stabilizations have slopes 0 and k - 1; Delta's two refinements come from the hull.
  const Series d = delta(3);
  auto slopes = root_valuations({Q(2048), Q(-d[2]), Q(1)}, 2);
  slopes.push_back(0);
  slopes.push_back(11);
  std::sort(slopes.begin(), slopes.end());
  return str_list(slopes);
}

json ratio_examples() {
  json out = json::object();
  auto key = [](long a, long k, long p) {
    return std::to_string(a) + "," + std::to_string(k) + "," + std::to_string(p);
  };
  for (auto [a, k, p] : std::vector<std::tuple<long, long, long>>{
           {-24, 12, 2}, {-4, 5, 5}, {-4, 5, 2}, {0, 3, 2}, {4, 4, 2}, {3, 2, 3}, {8, 5, 2}, {216, 16, 2}})
    out[key(a, k, p)] = order_json(ratio_order_brute(Q(a), k, p));
  return out;
}

json nregular_example() {
  const auto o = ratio_order_brute(Q(-24), 12, 2);
  return !o || *o >= 9;
}

json wval_examples() {
  json out = json::object();
  for (auto [k, m] : std::vector<std::pair<long, long>>{{5, 0}, {12, 0}, {7, 3}, {2, 4}, {11, 0}, {9, 0}}) {
    const Q v = w_valuation(k, m);
    out[std::to_string(k) + "," + std::to_string(m)] = {{"v", str(v)}, {"in_boundary", v > 0 && v < 3}};
  }
  return out;
}

json first_step_examples() {
  json out = json::object();
  for (auto [i, m] : std::vector<std::pair<long, long>>{{1, 2}, {5, 3}, {4, 3}, {2, 2}}) {
    const long kp = 2 * i + (2L << m) - 1;
    const Q v = w_valuation(kp, 0), s = 2 * i, s2 = Q(kp - 1) - s;
    out[std::to_string(i) + "," + std::to_string(m)] = {
        {"k_prime", kp}, {"slope", str(s)}, {"twin_slope", str(s2)}, {"index", str(s / v)}, {"twin_index", str(s2 / v)}};
  }
  return out;
}

json induction_examples() {
  json out = json::object();
  for (long m = 2; m <= 4; ++m) {
    const Q v = w_valuation(2, m + 1), s = (Q((Z(1) << m) - 1)) * v, s2 = Q(1) - s;
    out[std::to_string(m)] = {{"slope", str(s)}, {"twin_slope", str(s2)}, {"index", str(s / v)}, {"twin_index", str(s2 / v)}};
  }
  return out;
}

json twin_index_examples() {
  json out = json::object();
  for (auto [k, s] : std::vector<std::pair<long, long>>{{5, 2}, {11, 2}, {9, 2}}) {
    const Q v = w_valuation(k, 0);
    out[std::to_string(k) + "," + std::to_string(s)] = {{"index", str(Q(s) / v)},
                                                          {"twin_index", str(Q(k - 1 - s) / v)},
                                                          {"total", str(Q(k - 1) / v)}};
  }
  return out;
}

json bk_examples() {
  return {{"1;5,0", str(1 * w_valuation(5, 0))}, {"3;2,4", str(3 * w_valuation(2, 4))}};
}

// U_2 on powers of the hauptmodul, truncated to N x N; returns the sorted
// slopes of its characteristic polynomial.
std::vector<std::vector<Z>> oc_matrix(std::size_t big_n) {
  const std::size_t prec = 2 * big_n + 8, wide = 2 * prec;
  const Series f = hauptmodul(wide);
  std::vector<Series> powers{Series(wide, 0)};
  powers[0][0] = 1;
  for (std::size_t j = 1; j <= 2 * big_n; ++j) powers.push_back(mul(powers.back(), f, wide));
  std::vector<std::vector<Z>> m(big_n, std::vector<Z>(big_n, 0));
  for (std::size_t j = 0; j < big_n; ++j) {
    Series r(prec);
    for (std::size_t i = 0; i < prec; ++i) r[i] = powers[j][2 * i];
    for (std::size_t i = 0; i < prec; ++i) {
      if (r[i] == 0) continue;
      require(i <= 2 * j, "U2 f^j has degree <= 2j");
      const Z c = r[i];
      for (std::size_t l = i; l < prec; ++l) r[l] -= c * powers[i][l];
      if (i < big_n) m[i][j] = c;
    }
  }
  return m;
}

json oc_slopes(std::size_t big_n) {
  const auto cp = berkowitz(oc_matrix(big_n));
  return str_list(root_valuations(std::vector<Q>(cp.begin(), cp.end()), 2));
}

json oc_column1() {
  const auto m = oc_matrix(3);
  return str_list(std::vector<Z>{m[0][1], m[1][1], m[2][1]});
}

const std::map<std::string, std::function<json()>>& table() {
  static const std::map<std::string, std::function<json()>> t = {
      {"product_delta_tau", tau_prefix},
      {"product_delta_prec4", delta_prec4},
      {"product_hauptmodul", hauptmodul_prefix},
      {"halving_val_5_10", val_5_10},
      {"hull_delta_refinement", newton_delta_refinement},
      {"series_a2_s16", [] { return json(str(a2_s16())); }},
      {"hull_s16_refinement", newton_s16_refinement},
      {"eigen_t2_delta", t2_delta},
      {"eigen_t2_e4", t2_e4},
      {"rank_m5_gamma1_4", dim_m5_gamma1_4},
      {"rank_m8_gamma0_2", dim_m8_gamma0_2},
      {"rank_s24", s24_dim},
      {"miller_s12_t2", s12_t2_charpoly},
      {"miller_s24_t2", s24_t2_charpoly},
      {"slice_f0_coefficients", f0_coefficients},
      {"slice_u2_charpoly", f0_slice_charpoly},
      {"slice_u2_slopes", f0_slice_slopes},
      {"hull_refinement_f0", [] { return refinement_pair(-4, 5, 2); }},
      {"stabilized_gamma0_2_k12", gamma0_2_k12_u2_slopes},
      {"quadratic_ratio_orders", ratio_examples},
      {"quadratic_nregular", nregular_example},
      {"halving_wval", wval_examples},
      {"arith_first_step", first_step_examples},
      {"arith_induction_step", induction_examples},
      {"arith_twin_index", twin_index_examples},
      {"arith_bk_slope", bk_examples},
      {"hauptmodul_u2_column1", oc_column1},
      {"berkowitz_oc_20", [] { return oc_slopes(20); }},
      {"berkowitz_oc_40", [] { return oc_slopes(40); }},
      {"berkowitz_oc_60", [] { return oc_slopes(60); }},
  };
  return t;
}

}  // namespace

std::vector<std::string> ids() {
  std::vector<std::string> out;
  for (const auto& [id, fn] : table()) out.push_back(id);
  return out;
}

json evaluate(const std::string& id) { return table().at(id)(); }

}  // namespace ppwalk::oracles
