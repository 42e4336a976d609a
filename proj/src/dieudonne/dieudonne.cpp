#include "hdlab/dieudonne.hpp"

#include <functional>
#include <sstream>

#include "hdlab/error.hpp"

namespace hdlab::dieudonne {

TwistedPoly::TwistedPoly(FieldPtr field, std::vector<Elem> coefficients)
    : field_(std::move(field)), coeffs_(std::move(coefficients)) {
  if (!field_) throw Error(ErrorCode::InvalidArgument, "twisted polynomial without a field");
  for (Elem c : coeffs_)
    if (c >= field_->order()) throw Error(ErrorCode::InvalidArgument, "coefficient outside the field");
  trim();
}

TwistedPoly TwistedPoly::zero(const FieldPtr& field) { return TwistedPoly(field, {}); }

TwistedPoly TwistedPoly::constant(const FieldPtr& field, Elem a) { return TwistedPoly(field, {a}); }

TwistedPoly TwistedPoly::monomial(const FieldPtr& field, Elem a, std::size_t i) {
  std::vector<Elem> c(i + 1, 0);
  c[i] = a;
  return TwistedPoly(field, std::move(c));
}

void TwistedPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::string TwistedPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) out << " + ";
    first = false;
    out << "(" << field_->element_string(coeffs_[i]) << ")";
    if (i == 1) out << "F";
    if (i > 1) out << "F^" << i;
  }
  return out.str();
}

bool operator==(const TwistedPoly& a, const TwistedPoly& b) {
  if (a.coeffs_.empty() && b.coeffs_.empty()) return true;
  return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
}

namespace {

const FieldPtr& common_field(const TwistedPoly& x, const TwistedPoly& y) {
  if (x.field() != y.field()) throw Error(ErrorCode::FieldMismatch, "twisted polynomials over different fields");
  return x.field();
}

}  // namespace

TwistedPoly twisted_add(const TwistedPoly& x, const TwistedPoly& y) {
  const FieldPtr& f = common_field(x, y);
  std::vector<Elem> c(std::max(x.coefficients().size(), y.coefficients().size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f->add(x.coefficient(i), y.coefficient(i));
  return TwistedPoly(f, std::move(c));
}

TwistedPoly twisted_sub(const TwistedPoly& x, const TwistedPoly& y) {
  const FieldPtr& f = common_field(x, y);
  std::vector<Elem> c(std::max(x.coefficients().size(), y.coefficients().size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f->sub(x.coefficient(i), y.coefficient(i));
  return TwistedPoly(f, std::move(c));
}

TwistedPoly twisted_mul(const TwistedPoly& x, const TwistedPoly& y) {
  const FieldPtr& f = common_field(x, y);
  if (x.is_zero() || y.is_zero()) return TwistedPoly::zero(f);
  std::vector<Elem> c(x.coefficients().size() + y.coefficients().size() - 1, 0);
  for (std::size_t i = 0; i < x.coefficients().size(); ++i) {
    const Elem a = x.coefficient(i);
    if (a == 0) continue;
    for (std::size_t j = 0; j < y.coefficients().size(); ++j) {
      const Elem b = y.coefficient(j);
      if (b == 0) continue;
      c[i + j] = f->add(c[i + j], f->mul(a, f->frobenius_power(b, static_cast<long>(i))));
    }
  }
  return TwistedPoly(f, std::move(c));
}

Elem section(const TwistedPoly& x) {
  if (x.is_zero()) return 0;
  const FieldPtr& f = x.field();
  Elem s = 0;
  for (std::size_t i = 0; i < x.coefficients().size(); ++i)
    s = f->add(s, f->frobenius_power(x.coefficient(i), -static_cast<long>(i)));
  return s;
}

namespace {

Elem basis_element(const FiniteField& f, std::size_t c) {
  std::vector<unsigned> coords(f.degree(), 0);
  coords[c] = 1;
  return f.from_coordinates(coords);
}

// F_p-matrix of an additive map on polynomials, columns the images of
// x^c F^i for i < domain_terms, coordinates up to F^(codomain_terms - 1).
FiniteFieldMatrix prime_field_matrix(const FieldPtr& field, std::size_t domain_terms, std::size_t codomain_terms,
                                     const std::function<TwistedPoly(const TwistedPoly&)>& map) {
  const FiniteField& f = *field;
  const std::size_t d = f.degree();
  FiniteFieldMatrix m(FiniteField::get(f.characteristic(), 1), codomain_terms * d, domain_terms * d);
  for (std::size_t i = 0; i < domain_terms; ++i)
    for (std::size_t c = 0; c < d; ++c) {
      const TwistedPoly image = map(TwistedPoly::monomial(field, basis_element(f, c), i));
      if (static_cast<long>(codomain_terms) <= image.degree()) throw std::logic_error("image past the truncation");
      for (std::size_t t = 0; t < codomain_terms; ++t) {
        const auto coords = f.coordinates(image.coefficient(t));
        for (std::size_t r = 0; r < d; ++r) m(t * d + r, i * d + c) = coords[r];
      }
    }
  return m;
}

TwistedPoly f_times(const TwistedPoly& x) {
  return twisted_mul(TwistedPoly::monomial(x.field(), 1, 1), x);
}

std::size_t cokernel_dimension(const FieldPtr& field, std::size_t n, bool minus_id) {
  const auto m = prime_field_matrix(field, n, n + 1, [&](const TwistedPoly& x) {
    return minus_id ? twisted_sub(f_times(x), x) : f_times(x);
  });
  return m.rows() - m.rank();
}

CokernelReport cokernel_report(const FieldPtr& field, std::size_t n, bool minus_id) {
  if (!field) throw Error(ErrorCode::InvalidArgument, "no field");
  CokernelReport out;
  out.field = field->label();
  out.p = field->characteristic();
  out.d = field->degree();
  out.truncation = n;
  auto map = [&](const TwistedPoly& x) { return minus_id ? twisted_sub(f_times(x), x) : f_times(x); };
  const FiniteFieldMatrix m = prime_field_matrix(field, n, n + 1, map);
  out.domain_dimension = m.cols();
  out.codomain_dimension = m.rows();
  out.rank = m.rank();
  out.dimension = out.codomain_dimension - out.rank;
  out.dimension_over_k = out.dimension / out.d;
  out.stable = cokernel_dimension(field, n + 1, minus_id) == out.dimension;
  out.representative = TwistedPoly::constant(field, 1);
  if (!minus_id) return out;

  const FiniteField& f = *field;
  const std::size_t d = f.degree();
  out.section_vanishes_on_image = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < d; ++c)
      if (section(map(TwistedPoly::monomial(field, basis_element(f, c), i))) != 0) out.section_vanishes_on_image = false;
  FiniteFieldMatrix phi(FiniteField::get(f.characteristic(), 1), d, (n + 1) * d);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t c = 0; c < d; ++c) {
      const Elem v = section(TwistedPoly::monomial(field, basis_element(f, c), i));
      out.section_table.push_back({i, c, v});
      const auto coords = f.coordinates(v);
      for (std::size_t r = 0; r < d; ++r) phi(r, i * d + c) = coords[r];
    }
  out.section_rank = phi.rank();
  return out;
}

}  // namespace

CokernelReport coker_F_minus_id(const FieldPtr& field, std::size_t truncation) {
  if (truncation < 2) throw Error(ErrorCode::InvalidArgument, "coker_F_minus_id needs N >= 2");
  return cokernel_report(field, truncation, true);
}

CokernelReport coker_F(const FieldPtr& field, std::size_t truncation) {
  if (truncation < 1) throw Error(ErrorCode::InvalidArgument, "coker_F needs N >= 1");
  return cokernel_report(field, truncation, false);
}

VModule::VModule(FieldPtr field, FiniteFieldMatrix v) : field_(std::move(field)), v_(std::move(v)) {
  if (!field_ || v_.field() != field_) throw Error(ErrorCode::FieldMismatch, "V matrix over a different field");
  if (v_.rows() != v_.cols()) throw Error(ErrorCode::DimMismatch, "V must be square");
  const std::size_t n = v_.rows();
  for (std::size_t r = 0; r <= n; ++r)
    if (power(r).is_zero()) {
      nilpotency_ = r;
      return;
    }
  throw Error(ErrorCode::InvalidArgument, "V is not nilpotent");
}

FiniteFieldMatrix VModule::power(std::size_t r) const {
  FiniteFieldMatrix m = FiniteFieldMatrix::identity(field_, v_.rows());
  for (std::size_t s = 0; s < r; ++s) m = v_ * m.frobenius_twist(-1);
  return m;
}

std::vector<Elem> VModule::apply(const std::vector<Elem>& x) const {
  const std::size_t n = dimension();
  if (x.size() != n) throw Error(ErrorCode::DimMismatch, "vector has the wrong length");
  std::vector<Elem> out(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const Elem a = field_->frobenius_inverse(x[j]);
    if (a == 0) continue;
    for (std::size_t i = 0; i < n; ++i) out[i] = field_->add(out[i], field_->mul(v_(i, j), a));
  }
  return out;
}

std::size_t ext_D_against_Ga(std::size_t degree, const VModule& m) {
  if (m.dimension() == 0) return 0;
  // x in ker V iff x^{1/p} in ker of the matrix, a bijection of k-subspaces
  if (degree == 0) return m.matrix().kernel().cols();
  if (degree == 1) return m.dimension() - m.matrix().rank();
  return 0;
}

InjectivityReport injectivity_probe_F_pushforward(const FieldPtr& field, std::size_t power, std::size_t truncation) {
  if (power < 1) throw Error(ErrorCode::InvalidArgument, "injectivity probe needs n >= 1");
  const TwistedPoly fn = TwistedPoly::monomial(field, 1, power);
  auto rank_at = [&](std::size_t n) {
    const auto m = prime_field_matrix(field, n + 1, n + power + 1, [&](const TwistedPoly& x) { return twisted_mul(fn, x); });
    return std::make_pair(m.cols(), m.rank());
  };
  InjectivityReport out;
  out.power = power;
  out.truncation = truncation;
  const auto [cols, rank] = rank_at(truncation);
  out.domain_dimension = cols;
  out.rank = rank;
  out.injective = rank == cols;
  const auto [cols1, rank1] = rank_at(truncation + 1);
  out.stable = (rank1 == cols1) == out.injective;
  return out;
}

}  // namespace hdlab::dieudonne
