#pragma once

// Word-sized modular kernels behind the multimodular characteristic
// polynomial. Residues are stored as uint32 in [0, p) with p < 2^26.
// Every variant must agree bit for bit with the scalar reference.

#include <cstdint>
#include <span>

namespace ppwalk::simd {

inline constexpr std::uint32_t kMaxModulus = 1u << 26;

struct KernelTable {
  const char* name;
  // y[i] = (y[i] + c * x[i]) mod p
  void (*axpy)(std::span<std::uint32_t> y, std::span<const std::uint32_t> x, std::uint32_t c,
               std::uint32_t p);
  // sum a[i] * b[i] mod p
  std::uint32_t (*dot)(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                       std::uint32_t p);
};

const KernelTable& scalar_kernels();
// nullptr when the CPU (or the build) lacks AVX2+FMA.
const KernelTable* avx2_kernels();

// Best available table; PPWALK_SIMD=scalar in the environment forces the
// reference kernels.
const KernelTable& active_kernels();

}  // namespace ppwalk::simd
