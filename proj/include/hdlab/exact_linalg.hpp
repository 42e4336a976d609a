#pragma once

// Exact integer linear algebra: matrices over Z with arbitrary precision
// entries, Smith normal form, lattices in Hermite form, kernels of
// congruence systems and finite subquotients.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace hdlab::linalg {

using Int = mpz_class;
using IntVec = std::vector<Int>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVec>& columns);
  static IntMatrix diagonal(const IntVec& diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVec row(std::size_t i) const;
  IntVec column(std::size_t j) const;
  void set_column(std::size_t j, const IntVec& v);

  IntMatrix transpose() const;
  IntVec apply(const IntVec& v) const;
  bool is_zero() const;
  bool is_identity() const;

  // Entry (i, j) reduced into [0, m_i) for each row modulus m_i != 0.
  void reduce_rows(const IntVec& moduli);

  // Submatrix of the given rows and columns.
  IntMatrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

// Nonnegative representative of a modulo m; m == 0 leaves a unchanged.
Int mod_floor(const Int& a, const Int& m);

struct SmithDecomposition {
  IntMatrix left;   // unimodular, rows x rows
  IntVec diag;      // min(rows, cols) entries, d_i | d_{i+1}, zeros last
  IntMatrix right;  // unimodular, cols x cols
  IntMatrix left_inverse;
  IntMatrix right_inverse;

  std::size_t rank() const;
};

// left * A * right equals the diagonal matrix of diag. Pivot choice: smallest
// nonzero absolute value in the active block, ties by lowest (row, col).
SmithDecomposition smith_normal_form(const IntMatrix& a);

// Invariant factors of Z^rows / colspan(A); 0 for each free summand, 1s dropped.
IntVec cokernel_invariants(const IntMatrix& a);

// Z-basis (as columns) of {x : A x = 0}.
IntMatrix kernel_lattice(const IntMatrix& a);

// Z-basis (as rows) of {x : A x = 0 mod moduli}, row i taken modulo moduli[i]
// (0 means exact equality). The lattice contains every trivial solution.
std::vector<IntVec> kernel_mod(const IntMatrix& a, const IntVec& moduli);

// Some x with A x = b modulo the per-row moduli, or nullopt if unsolvable.
std::optional<IntVec> solve_modular(const IntMatrix& a, const IntVec& b, const IntVec& moduli);

Int determinant(const IntMatrix& a);

// Sublattice of Z^dim held in row Hermite normal form: pivots strictly
// increasing, positive, with entries above each pivot reduced into [0, pivot).
class Lattice {
 public:
  explicit Lattice(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  const std::vector<IntVec>& basis() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  // Returns true when v was not already in the lattice.
  bool add(const IntVec& v);
  void add_all(const std::vector<IntVec>& vs);
  bool contains(const IntVec& v) const;
  bool contains_all(const Lattice& other) const;

  // Coefficients with respect to basis(), or nullopt if v is not a member.
  std::optional<IntVec> coordinates(const IntVec& v) const;

  // Canonical coset representative of v.
  IntVec reduce(IntVec v) const;

  // Index [Z^dim : L] for full rank lattices, 0 otherwise.
  Int index() const;

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.rows_ == b.rows_ && a.dim_ == b.dim_; }

 private:
  void normalize_above(std::size_t r);

  std::size_t dim_;
  std::vector<IntVec> rows_;
  std::vector<std::size_t> pivots_;
};

// The finite (or finitely generated) abelian group big / small, for
// lattices small <= big, in invariant factor form with explicit generators.
class Subquotient {
 public:
  Subquotient() = default;
  Subquotient(Lattice big, const std::vector<IntVec>& small_generators, const IntVec& ambient_moduli = {});

  const IntVec& invariants() const noexcept { return invariants_; }
  const std::vector<IntVec>& generators() const noexcept { return generators_; }
  // Coordinates of v (a member of big) modulo the invariant factors.
  IntVec coordinates(const IntVec& v) const;
  bool is_trivial(const IntVec& v) const;
  // 0 when infinite.
  Int order() const;
  const Lattice& big() const noexcept { return big_; }

 private:
  Lattice big_;
  IntMatrix left_;
  std::vector<std::size_t> kept_;
  IntVec invariants_;
  std::vector<IntVec> generators_;
};

// Order of the finite group with these invariant factors (0 if any is free).
Int group_order(const IntVec& invariants);

// Canonical invariant factors of the direct sum of cyclic groups Z/m_i (0 = Z).
IntVec normalize_invariants(const IntVec& moduli);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

// Prime factors of |n| (n != 0), ascending, by trial division.
std::vector<long> prime_factors(const Int& n);
bool is_prime(long n);

// Split n = part_in * part_out where part_in has all prime factors in primes
// and part_out none of them. n must be positive.
std::pair<Int, Int> split_by_primes(const Int& n, const std::set<long>& primes);

// The S'-part of a finite abelian group: each factor loses its S-primary part.
IntVec prime_complement_invariants(const IntVec& invariants, const std::set<long>& primes);

std::string invariants_to_string(const IntVec& invariants);

}  // namespace hdlab::linalg
