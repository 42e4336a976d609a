#pragma once

// Dense linear algebra over Z/p^k with machine integers.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hdlab::gammacoh::detail {

struct PrimePower {
  std::int64_t p = 2;
  int k = 1;
  std::int64_t q = 2;

  PrimePower(std::int64_t prime, int exponent);
  std::int64_t reduce(std::int64_t a) const {
    a %= q;
    return a < 0 ? a + q : a;
  }
  // Valuation of a in [0, q); k for zero.
  int valuation(std::int64_t a) const;
  std::int64_t power(int e) const;
  std::int64_t inverse_unit(std::int64_t u) const;
};

class PPMatrix {
 public:
  PPMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::int64_t* row(std::size_t i) { return data_.data() + i * cols_; }
  const std::int64_t* row(std::size_t i) const { return data_.data() + i * cols_; }

 private:
  std::size_t rows_, cols_;
  std::vector<std::int64_t> data_;
};

// Full pivoting reduction A -> P A Q = diagonal, keeping Q and Q^{-1}.
struct Elimination {
  // valuation of the pivot in each column; k for columns without a pivot
  std::vector<int> column_valuation;
  PPMatrix q, q_inverse;
};

Elimination eliminate(PPMatrix a, const PrimePower& ring);

struct KernelBasis {
  std::vector<std::vector<std::int64_t>> generators;
  std::vector<int> exponents;  // generator t has order p^exponents[t]
  std::vector<std::size_t> column;
  Elimination elimination;
};

// Basis of {x in (Z/q)^cols : A x = 0}.
KernelBasis kernel(const PPMatrix& a, const PrimePower& ring);
// Coordinates of a kernel element on the kernel basis.
std::vector<std::int64_t> kernel_coordinates(const KernelBasis& k, const std::vector<std::int64_t>& x,
                                             const PrimePower& ring);

struct CokernelBasis {
  std::vector<int> exponents;  // nontrivial summands Z/p^e
  std::vector<std::vector<std::int64_t>> generators;
};

// (Z/q)^dim modulo the span of the given vectors.
CokernelBasis cokernel(const std::vector<std::vector<std::int64_t>>& relations, std::size_t dim,
                       const PrimePower& ring);

}  // namespace hdlab::gammacoh::detail
