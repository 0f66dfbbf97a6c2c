#include "ppwalk/modkernels.hpp"

#include <cstdlib>
#include <cstring>

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define PPWALK_HAVE_AVX2_PATH 1
#include <immintrin.h>
#endif

namespace ppwalk::simd {

namespace {

void axpy_scalar(std::span<std::uint32_t> y, std::span<const std::uint32_t> x, std::uint32_t c,
                 std::uint32_t p) {
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < n; ++i)
    y[i] = static_cast<std::uint32_t>((y[i] + std::uint64_t{c} * x[i]) % p);
}

std::uint32_t dot_scalar(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                         std::uint32_t p) {
  // Products are < 2^52, so 4096 of them fit in 64 bits before reducing.
  std::uint64_t acc = 0;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    acc += std::uint64_t{a[i]} * b[i];
    if ((i & 4095) == 4095) acc %= p;
  }
  return static_cast<std::uint32_t>(acc % p);
}

#ifdef PPWALK_HAVE_AVX2_PATH

// x * c mod p in double precision: the product is exact below 2^52 and the
// quotient estimate is off by at most one, fixed by the two corrections.
__attribute__((target("avx2,fma"))) inline __m256d mulmod_pd(__m256d x, __m256d c, __m256d p,
                                                             __m256d pinv) {
  const __m256d prod = _mm256_mul_pd(x, c);
  const __m256d q = _mm256_floor_pd(_mm256_mul_pd(prod, pinv));
  __m256d r = _mm256_fnmadd_pd(q, p, prod);
  r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, _mm256_setzero_pd(), _CMP_LT_OQ), p));
  r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, p, _CMP_GE_OQ), p));
  return r;
}

__attribute__((target("avx2,fma"))) inline __m256d addmod_pd(__m256d a, __m256d b, __m256d p) {
  const __m256d s = _mm256_add_pd(a, b);
  return _mm256_sub_pd(s, _mm256_and_pd(_mm256_cmp_pd(s, p, _CMP_GE_OQ), p));
}

__attribute__((target("avx2,fma"))) inline __m256d load4(const std::uint32_t* src) {
  return _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(src)));
}

__attribute__((target("avx2,fma"))) void axpy_avx2(std::span<std::uint32_t> y,
                                                   std::span<const std::uint32_t> x,
                                                   std::uint32_t c, std::uint32_t p) {
  const std::size_t n = y.size();
  const __m256d vp = _mm256_set1_pd(static_cast<double>(p));
  const __m256d vpinv = _mm256_set1_pd(1.0 / static_cast<double>(p));
  const __m256d vc = _mm256_set1_pd(static_cast<double>(c));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = mulmod_pd(load4(x.data() + i), vc, vp, vpinv);
    const __m256d s = addmod_pd(load4(y.data() + i), r, vp);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(y.data() + i), _mm256_cvttpd_epi32(s));
  }
  axpy_scalar(y.subspan(i), x.subspan(i), c, p);
}

__attribute__((target("avx2,fma"))) std::uint32_t dot_avx2(std::span<const std::uint32_t> a,
                                                           std::span<const std::uint32_t> b,
                                                           std::uint32_t p) {
  const std::size_t n = a.size();
  const __m256d vp = _mm256_set1_pd(static_cast<double>(p));
  const __m256d vpinv = _mm256_set1_pd(1.0 / static_cast<double>(p));
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = addmod_pd(acc, mulmod_pd(load4(a.data() + i), load4(b.data() + i), vp, vpinv), vp);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  std::uint64_t total = dot_scalar(a.subspan(i), b.subspan(i), p);
  for (double lane : lanes) total += static_cast<std::uint64_t>(lane);
  return static_cast<std::uint32_t>(total % p);
}

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

#endif

const KernelTable kScalar{"scalar", &axpy_scalar, &dot_scalar};
#ifdef PPWALK_HAVE_AVX2_PATH
const KernelTable kAvx2{"avx2", &axpy_avx2, &dot_avx2};
#endif

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

const KernelTable* avx2_kernels() {
#ifdef PPWALK_HAVE_AVX2_PATH
  static const bool ok = cpu_has_avx2();
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("PPWALK_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return &kScalar;
    const KernelTable* v = avx2_kernels();
    return v != nullptr ? v : &kScalar;
  }();
  return *chosen;
}

}  // namespace ppwalk::simd
