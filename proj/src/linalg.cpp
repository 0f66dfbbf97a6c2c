#include "ppwalk/linalg.hpp"

#include "ppwalk/errors.hpp"
#include "ppwalk/modkernels.hpp"

#include <algorithm>
#include <cstdint>
#include <span>

namespace ppwalk::linalg {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

Echelon row_reduce(const Matrix& m) {
  Echelon e{m, {}, Matrix::identity(m.rows())};
  Matrix& a = e.rref;
  Matrix& t = e.transform;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
      for (std::size_t j = 0; j < t.cols(); ++j) std::swap(t(piv, j), t(row, j));
    }
    const Rational inv = 1 / a(row, col);
    for (std::size_t j = 0; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t j = 0; j < t.cols(); ++j) t(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      const Rational f = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        if (a(row, j) != 0) a(i, j) -= f * a(row, j);
      for (std::size_t j = 0; j < t.cols(); ++j)
        if (t(row, j) != 0) t(i, j) -= f * t(row, j);
    }
    e.pivots.push_back(col);
    ++row;
  }
  return e;
}

std::size_t rank(const Matrix& m) { return row_reduce(m).pivots.size(); }

std::vector<std::vector<Rational>> kernel(const Matrix& m) {
  const Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.rref(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

poly::Polynomial charpoly(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "charpoly needs a square matrix");
  const std::size_t n = m.rows();
  Matrix h = m;

  // Similarity reduction to upper Hessenberg form.
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && h(piv, j) == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(piv, c), h(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, piv), h(r, j + 1));
    }
    const Rational inv = 1 / h(j + 1, j);
    for (std::size_t i = j + 2; i < n; ++i) {
      if (h(i, j) == 0) continue;
      const Rational u = h(i, j) * inv;
      for (std::size_t c = j; c < n; ++c) h(i, c) -= u * h(j + 1, c);
      for (std::size_t r = 0; r < n; ++r) h(r, j + 1) += u * h(r, i);
    }
  }

  // p_k = charpoly of the leading k x k block.
  std::vector<poly::Polynomial> p(n + 1);
  p[0] = {Rational(1)};
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t c = k - 1;
    poly::Polynomial next(k + 1, Rational(0));
    for (std::size_t d = 0; d < p[k - 1].size(); ++d) {
      next[d + 1] += p[k - 1][d];
      next[d] -= h(c, c) * p[k - 1][d];
    }
    Rational t = 1;
    for (std::size_t i = 1; i < k; ++i) {
      t *= h(c - i + 1, c - i);
      const Rational coef = h(c - i, c) * t;
      if (coef == 0) continue;
      for (std::size_t d = 0; d < p[k - i - 1].size(); ++d) next[d] -= coef * p[k - i - 1][d];
    }
    p[k] = std::move(next);
  }
  return p[n];
}

namespace {

std::uint32_t powmod(std::uint64_t b, std::uint64_t e, std::uint32_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Charpoly of an n x n matrix over Z/p, stored row-major in `a` (destroyed).
std::vector<std::uint32_t> charpoly_mod(std::vector<std::uint32_t>& a, std::size_t n, std::uint32_t p,
                                        const simd::KernelTable& k) {
  auto row = [&](std::size_t i) { return std::span<std::uint32_t>(a.data() + i * n, n); };
  std::vector<std::uint32_t> u(n, 0);

  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && a[piv * n + j] == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      std::swap_ranges(row(piv).begin(), row(piv).end(), row(j + 1).begin());
      for (std::size_t r = 0; r < n; ++r) std::swap(a[r * n + piv], a[r * n + j + 1]);
    }
    const std::uint32_t inv = powmod(a[(j + 1) * n + j], p - 2, p);
    std::fill(u.begin(), u.end(), 0);
    bool any = false;
    for (std::size_t i = j + 2; i < n; ++i) {
      const std::uint32_t hij = a[i * n + j];
      if (hij == 0) continue;
      u[i] = static_cast<std::uint32_t>(std::uint64_t{hij} * inv % p);
      k.axpy(row(i), row(j + 1), p - u[i], p);
      any = true;
    }
    if (!any) continue;
    // Column j+1 += sum_i u_i * column i, one dot product per row.
    const std::span<const std::uint32_t> tail(u.data() + j + 2, n - j - 2);
    for (std::size_t r = 0; r < n; ++r) {
      const std::uint32_t d = k.dot(std::span<const std::uint32_t>(a.data() + r * n + j + 2, n - j - 2), tail, p);
      a[r * n + j + 1] = (a[r * n + j + 1] + d) % p;
    }
  }

  // Polynomials p_0..p_n packed with stride n + 1.
  const std::size_t stride = n + 1;
  std::vector<std::uint32_t> polys(stride * (n + 1), 0);
  auto P = [&](std::size_t i) { return std::span<std::uint32_t>(polys.data() + i * stride, stride); };
  P(0)[0] = 1;
  for (std::size_t kk = 1; kk <= n; ++kk) {
    const std::size_t c = kk - 1;
    auto next = P(kk);
    auto prev = P(kk - 1);
    for (std::size_t d = 0; d < kk; ++d) next[d + 1] = prev[d];
    k.axpy(next.first(kk), prev.first(kk), (p - a[c * n + c]) % p, p);
    std::uint64_t t = 1;
    for (std::size_t i = 1; i < kk; ++i) {
      t = t * a[(c - i + 1) * n + (c - i)] % p;
      if (t == 0) break;
      const std::uint32_t coef = static_cast<std::uint32_t>(t * a[(c - i) * n + c] % p);
      if (coef == 0) continue;
      k.axpy(next.first(kk - i), P(kk - i - 1).first(kk - i), p - coef, p);
    }
  }
  auto top = P(n);
  return {top.begin(), top.end()};
}

}  // namespace

poly::Polynomial charpoly_multimodular(const Matrix& m) { return charpoly_multimodular(m, simd::active_kernels()); }

poly::Polynomial charpoly_multimodular(const Matrix& m, const simd::KernelTable& kernels) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "charpoly needs a square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return {Rational(1)};

  // Integer matrix D*M; charpoly(M)_i = charpoly(DM)_i / D^(n-i).
  Integer scale = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = lcm(scale, Integer(m(i, j).get_den()));
  std::vector<Integer> z(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational v = m(i, j) * Rational(scale);
      z[i * n + j] = v.get_num();
    }

  // Every coefficient is a signed sum of principal minors, so
  // |c| <= prod_j (1 + |col_j|) and likewise for rows; keep the smaller.
  auto log2_bound = [&](bool by_rows) {
    double bits = 0;
    for (std::size_t a = 0; a < n; ++a) {
      Integer sq = 0;
      for (std::size_t b = 0; b < n; ++b) {
        const Integer& v = by_rows ? z[a * n + b] : z[b * n + a];
        sq += v * v;
      }
      bits += static_cast<double>(mpz_sizeinbase(sq.get_mpz_t(), 2)) / 2.0 + 1.0;
    }
    return bits;
  };
  const double need_bits = std::min(log2_bound(false), log2_bound(true)) + 2.0;

  std::vector<Integer> coeffs(n + 1, Integer(0));
  Integer modulus = 1;
  std::vector<std::uint32_t> work(n * n);
  std::uint32_t p = simd::kMaxModulus - 1;
  while (static_cast<double>(mpz_sizeinbase(modulus.get_mpz_t(), 2)) - 1.0 < need_bits) {
    do {
      p -= 2;
    } while (!is_prime_u32(p));
    for (std::size_t i = 0; i < n * n; ++i) work[i] = static_cast<std::uint32_t>(mpz_fdiv_ui(z[i].get_mpz_t(), p));
    const auto residues = charpoly_mod(work, n, p, kernels);

    // Incremental CRT: c <- c + M * ((r - c) * M^-1 mod p).
    const std::uint32_t minv = powmod(mpz_fdiv_ui(modulus.get_mpz_t(), p), p - 2, p);
    for (std::size_t i = 0; i <= n; ++i) {
      const std::uint64_t cur = mpz_fdiv_ui(coeffs[i].get_mpz_t(), p);
      const std::uint64_t diff = (residues[i] + p - cur) % p;
      const unsigned long step = static_cast<unsigned long>(diff * minv % p);
      if (step != 0) mpz_addmul_ui(coeffs[i].get_mpz_t(), modulus.get_mpz_t(), step);
    }
    modulus *= p;
  }

  poly::Polynomial out(n + 1);
  Integer power = 1;  // scale^(n - i), from the top
  for (std::size_t i = n + 1; i-- > 0;) {
    Integer c = coeffs[i];
    if (2 * c > modulus) c -= modulus;
    out[i] = Rational(c, power);
    out[i].canonicalize();
    power *= scale;
  }
  return out;
}

}  // namespace ppwalk::linalg
