#pragma once

// Finite fields F_{p^d} with table arithmetic and dense matrices over them.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace hdlab::linalg {

class FiniteField {
 public:
  using Elem = std::uint32_t;

  // Shared, immutable instance per (p, d). The defining polynomial is the
  // Conway polynomial where tabulated, otherwise the first primitive monic
  // polynomial in lexicographic coefficient order.
  static std::shared_ptr<const FiniteField> get(unsigned p, unsigned d);
  // Parses "F_4", "F_9", "F_2", also "GF(9)".
  static std::shared_ptr<const FiniteField> parse(const std::string& label);

  unsigned characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return d_; }
  unsigned order() const noexcept { return q_; }
  // Coefficients c_0..c_d of the monic defining polynomial.
  const std::vector<unsigned>& modulus() const noexcept { return modulus_; }
  bool modulus_is_conway() const noexcept { return conway_; }
  std::string modulus_string() const;
  std::string label() const;

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  // Class of x in F_p[x]/(modulus); for d == 1 this is a primitive root.
  Elem generator() const noexcept { return generator_; }
  Elem from_int(long v) const;

  Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  Elem sub(Elem a, Elem b) const { return add_[a * q_ + neg_[b]]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  Elem inv(Elem a) const;
  Elem pow(Elem a, unsigned long e) const;
  // a^p, and its inverse a^{1/p}.
  Elem frobenius(Elem a) const { return frob_[a]; }
  Elem frobenius_inverse(Elem a) const { return frob_inv_[a]; }
  // a^{p^i} for any integer i (negative i applies the inverse).
  Elem frobenius_power(Elem a, long i) const;

  // Coordinates of a over F_p in the power basis 1, x, ..., x^{d-1}.
  std::vector<unsigned> coordinates(Elem a) const;
  Elem from_coordinates(const std::vector<unsigned>& c) const;

  std::string element_string(Elem a) const;

 private:
  FiniteField(unsigned p, unsigned d, std::vector<unsigned> modulus, bool conway);

  unsigned p_, d_, q_;
  std::vector<unsigned> modulus_;
  bool conway_;
  Elem generator_ = 0;
  std::vector<Elem> add_, mul_, neg_, inv_, frob_, frob_inv_;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

class FiniteFieldMatrix {
 public:
  using Elem = FiniteField::Elem;

  FiniteFieldMatrix() = default;
  FiniteFieldMatrix(FieldPtr field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  FiniteFieldMatrix(FieldPtr field, const std::vector<std::vector<long>>& rows);

  static FiniteFieldMatrix identity(FieldPtr field, std::size_t n);

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t rank() const;
  // Basis of the right kernel, as columns of an (cols x k) matrix.
  FiniteFieldMatrix kernel() const;
  bool is_zero() const;
  // Entrywise Frobenius power a -> a^{p^i}.
  FiniteFieldMatrix frobenius_twist(long i) const;

  friend FiniteFieldMatrix operator*(const FiniteFieldMatrix& a, const FiniteFieldMatrix& b);
  friend bool operator==(const FiniteFieldMatrix& a, const FiniteFieldMatrix& b);

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

}  // namespace hdlab::linalg
