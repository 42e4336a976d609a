#pragma once

// The twisted polynomial ring k[F] with F a = a^p F over a finite field k,
// the cokernels of F - 1 and F on truncations of k[F], and finite-length
// modules with a nilpotent semilinear V.

#include <cstddef>
#include <string>
#include <vector>

#include "hdlab/finite_field.hpp"

namespace hdlab::dieudonne {

using linalg::FieldPtr;
using linalg::FiniteField;
using linalg::FiniteFieldMatrix;
using Elem = FiniteField::Elem;

class TwistedPoly {
 public:
  TwistedPoly() = default;
  TwistedPoly(FieldPtr field, std::vector<Elem> coefficients);

  static TwistedPoly zero(const FieldPtr& field);
  static TwistedPoly constant(const FieldPtr& field, Elem a);
  // a F^i
  static TwistedPoly monomial(const FieldPtr& field, Elem a, std::size_t i);

  const FieldPtr& field() const noexcept { return field_; }
  // Coefficient of F^i, zero past the degree.
  Elem coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
  const std::vector<Elem>& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  // -1 for zero.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }

  std::string to_string() const;

  friend bool operator==(const TwistedPoly& a, const TwistedPoly& b);

 private:
  void trim();

  FieldPtr field_;
  std::vector<Elem> coeffs_;
};

TwistedPoly twisted_add(const TwistedPoly& x, const TwistedPoly& y);
TwistedPoly twisted_sub(const TwistedPoly& x, const TwistedPoly& y);
// (a F^i)(b F^j) = a b^{p^i} F^{i+j}. Throws FieldMismatch.
TwistedPoly twisted_mul(const TwistedPoly& x, const TwistedPoly& y);

// phi(sum t_i F^i) = sum t_i^{p^{-i}}, additive and zero on (F - 1) k[F].
Elem section(const TwistedPoly& x);

struct SectionEntry {
  std::size_t degree;  // i
  std::size_t basis;   // index c of the F_p-basis element x^c of k
  Elem value;          // phi(x^c F^i)
};

struct CokernelReport {
  std::string field;
  unsigned p = 0, d = 0;
  std::size_t truncation = 0;
  std::size_t domain_dimension = 0, codomain_dimension = 0, rank = 0;
  std::size_t dimension = 0;         // over F_p
  std::size_t dimension_over_k = 0;  // dimension / d
  bool stable = false;               // same dimension at truncation + 1
  TwistedPoly representative;        // spans the cokernel over k
  // F - 1 only
  bool section_vanishes_on_image = false;
  std::size_t section_rank = 0;  // F_p-rank of phi on polynomials of degree <= N
  std::vector<SectionEntry> section_table;
};

// x -> F x - x from degree < N to degree <= N.
CokernelReport coker_F_minus_id(const FieldPtr& field, std::size_t truncation);
// x -> F x from degree < N to degree <= N.
CokernelReport coker_F(const FieldPtr& field, std::size_t truncation);

// A k-vector space with a p^{-1}-semilinear nilpotent V:
// V(sum a_j e_j) = sum a_j^{1/p} V(e_j), column j of the matrix being V(e_j).
class VModule {
 public:
  VModule() = default;
  // Throws InvalidArgument when V is not nilpotent.
  VModule(FieldPtr field, FiniteFieldMatrix v);

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t dimension() const noexcept { return v_.rows(); }
  const FiniteFieldMatrix& matrix() const noexcept { return v_; }
  std::size_t nilpotency_index() const noexcept { return nilpotency_; }

  std::vector<Elem> apply(const std::vector<Elem>& x) const;
  // Matrix of V^r as a p^{-r}-semilinear map.
  FiniteFieldMatrix power(std::size_t r) const;

 private:
  FieldPtr field_;
  FiniteFieldMatrix v_;
  std::size_t nilpotency_ = 0;
};

// dim_k Ext^i(M, G_a) from the resolution 0 -> D -V-> D -> D/DV -> 0.
std::size_t ext_D_against_Ga(std::size_t degree, const VModule& m);

struct InjectivityReport {
  std::size_t power = 0, truncation = 0;
  std::size_t domain_dimension = 0, rank = 0;
  bool injective = false;
  bool stable = false;
};

// Left multiplication by F^n on polynomials of degree <= N.
InjectivityReport injectivity_probe_F_pushforward(const FieldPtr& field, std::size_t power, std::size_t truncation);

}  // namespace hdlab::dieudonne
