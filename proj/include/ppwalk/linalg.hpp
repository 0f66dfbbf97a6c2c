#pragma once

#include "ppwalk/modkernels.hpp"
#include "ppwalk/poly.hpp"
#include "ppwalk/rational.hpp"

#include <cstddef>
#include <vector>

namespace ppwalk::linalg {

// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);

struct Echelon {
  Matrix rref;                      // reduced row echelon form, zero rows last
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  Matrix transform;                 // rref = transform * input
};

Echelon row_reduce(const Matrix& m);
std::size_t rank(const Matrix& m);
// Basis of {x : m x = 0}.
std::vector<std::vector<Rational>> kernel(const Matrix& m);

// Characteristic polynomial det(X - M), monic, low degree first.
// Reduction to Hessenberg form over Q; suited to small dimensions.
poly::Polynomial charpoly(const Matrix& m);

// Same polynomial, computed modulo many word-sized primes on the
// denominator-cleared matrix and recombined by CRT under a Hadamard bound.
poly::Polynomial charpoly_multimodular(const Matrix& m);
poly::Polynomial charpoly_multimodular(const Matrix& m, const simd::KernelTable& kernels);

}  // namespace ppwalk::linalg
