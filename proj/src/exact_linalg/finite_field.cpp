#include "hdlab/finite_field.hpp"

#include <map>
#include <mutex>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "hdlab/error.hpp"

namespace hdlab::linalg {

namespace {

constexpr unsigned kMaxFieldOrder = 1024;

// Conway polynomials, coefficients from the constant term upwards.
const std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>>& conway_table() {
  static const std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>> table = {
      {{2, 1}, {1, 1}},          {{3, 1}, {1, 1}},       {{5, 1}, {3, 1}},       {{7, 1}, {4, 1}},
      {{11, 1}, {9, 1}},         {{13, 1}, {11, 1}},     {{2, 2}, {1, 1, 1}},    {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}}, {{2, 5}, {1, 0, 1, 0, 0, 1}},                   {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},    {{3, 4}, {2, 0, 0, 2, 1}},                      {{5, 2}, {2, 4, 1}},
      {{5, 3}, {3, 3, 0, 1}},    {{7, 2}, {3, 6, 1}},    {{11, 2}, {2, 7, 1}},   {{13, 2}, {2, 12, 1}},
  };
  return table;
}

unsigned ipow(unsigned b, unsigned e) {
  unsigned r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

FiniteField::FiniteField(unsigned p, unsigned d, std::vector<unsigned> modulus, bool conway)
    : p_(p), d_(d), q_(ipow(p, d)), modulus_(std::move(modulus)), conway_(conway) {
  const unsigned q = q_;
  add_.resize(static_cast<std::size_t>(q) * q);
  mul_.resize(static_cast<std::size_t>(q) * q);
  neg_.resize(q);
  auto digits = [&](unsigned a) {
    std::vector<unsigned> c(d_);
    for (unsigned i = 0; i < d_; ++i) {
      c[i] = a % p_;
      a /= p_;
    }
    return c;
  };
  auto pack = [&](const std::vector<unsigned>& c) {
    unsigned a = 0;
    for (unsigned i = d_; i-- > 0;) a = a * p_ + c[i];
    return a;
  };
  for (unsigned a = 0; a < q; ++a) {
    auto ca = digits(a);
    std::vector<unsigned> cn(d_);
    for (unsigned i = 0; i < d_; ++i) cn[i] = (p_ - ca[i]) % p_;
    neg_[a] = pack(cn);
    for (unsigned b = 0; b < q; ++b) {
      auto cb = digits(b);
      std::vector<unsigned> cs(d_);
      for (unsigned i = 0; i < d_; ++i) cs[i] = (ca[i] + cb[i]) % p_;
      add_[static_cast<std::size_t>(a) * q + b] = pack(cs);
      std::vector<unsigned> prod(2 * d_, 0);
      for (unsigned i = 0; i < d_; ++i)
        for (unsigned j = 0; j < d_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
      for (unsigned k = 2 * d_; k-- > d_;) {
        unsigned c = prod[k];
        if (c == 0) continue;
        // x^k = x^{k-d} * x^d and x^d = -(m_0 + ... + m_{d-1} x^{d-1})
        for (unsigned i = 0; i < d_; ++i) prod[k - d_ + i] = (prod[k - d_ + i] + (p_ - modulus_[i]) * c) % p_;
        prod[k] = 0;
      }
      prod.resize(d_);
      mul_[static_cast<std::size_t>(a) * q + b] = pack(prod);
    }
  }
  if (d_ == 1) {
    generator_ = (p_ - modulus_[0]) % p_;
  } else {
    generator_ = p_;  // the digit vector (0, 1, 0, ...)
  }
  inv_.assign(q, 0);
  for (unsigned a = 1; a < q; ++a)
    for (unsigned b = 1; b < q; ++b)
      if (mul(a, b) == 1) {
        inv_[a] = b;
        break;
      }
  frob_.resize(q);
  frob_inv_.resize(q);
  for (unsigned a = 0; a < q; ++a) frob_[a] = pow(a, p_);
  for (unsigned a = 0; a < q; ++a) frob_inv_[frob_[a]] = a;
}

namespace {

bool generator_is_primitive(const FiniteField& f) {
  const unsigned q = f.order();
  FiniteField::Elem x = f.generator();
  if (x == 0) return false;
  FiniteField::Elem acc = 1;
  for (unsigned k = 1; k < q; ++k) {
    acc = f.mul(acc, x);
    if (acc == 1) return k == q - 1;
  }
  return false;
}

}  // namespace

std::shared_ptr<const FiniteField> FiniteField::get(unsigned p, unsigned d) {
  if (p < 2 || d < 1) throw Error(ErrorCode::InvalidArgument, "finite field needs prime p and degree d >= 1");
  bool prime = true;
  for (unsigned t = 2; t * t <= p; ++t)
    if (p % t == 0) prime = false;
  if (!prime) throw Error(ErrorCode::InvalidArgument, "finite field characteristic must be prime");
  unsigned long q = 1;
  for (unsigned i = 0; i < d; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) throw Error(ErrorCode::BudgetExceeded, "finite field order above 1024");
  }

  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const FiniteField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find({p, d}); it != cache.end()) return it->second;

  std::shared_ptr<const FiniteField> field;
  if (auto it = conway_table().find({p, d}); it != conway_table().end()) {
    field.reset(new FiniteField(p, d, it->second, true));
    if (!generator_is_primitive(*field)) throw std::logic_error("tabulated Conway polynomial is not primitive");
  } else {
    const unsigned combos = static_cast<unsigned>(q);
    for (unsigned code = 0; code < combos && !field; ++code) {
      std::vector<unsigned> m(d + 1, 0);
      unsigned c = code;
      // lexicographic from the leading non-monic coefficient down
      for (unsigned i = d; i-- > 0;) {
        m[i] = c % p;
        c /= p;
      }
      m[d] = 1;
      if (m[0] == 0) continue;
      std::shared_ptr<const FiniteField> cand(new FiniteField(p, d, m, false));
      if (generator_is_primitive(*cand)) field = cand;
    }
    if (!field) throw std::logic_error("no primitive polynomial found");
  }
  cache[{p, d}] = field;
  return field;
}

std::shared_ptr<const FiniteField> FiniteField::parse(const std::string& label) {
  static const std::regex re(R"(^\s*(?:F_?|GF\()(\d+)\)?\s*$)");
  std::smatch m;
  if (!std::regex_match(label, m, re)) throw Error(ErrorCode::InvalidArgument, "cannot parse field label '" + label + "'");
  unsigned long q = std::stoul(m[1]);
  if (q < 2) throw Error(ErrorCode::InvalidArgument, "field order must be a prime power");
  unsigned p = 0;
  for (unsigned long t = 2; t <= q; ++t)
    if (q % t == 0) {
      p = static_cast<unsigned>(t);
      break;
    }
  unsigned d = 0;
  unsigned long r = q;
  while (r % p == 0) {
    r /= p;
    ++d;
  }
  if (r != 1) throw Error(ErrorCode::InvalidArgument, "field order must be a prime power: " + label);
  return get(p, d);
}

std::string FiniteField::modulus_string() const {
  std::ostringstream os;
  bool first = true;
  for (unsigned i = d_ + 1; i-- > 0;) {
    unsigned c = modulus_[i];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c != 1) os << c;
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::string FiniteField::label() const { return "F_" + std::to_string(q_); }

FiniteField::Elem FiniteField::from_int(long v) const {
  long r = v % static_cast<long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw std::domain_error("FiniteField::inv: zero has no inverse");
  return inv_[a];
}

FiniteField::Elem FiniteField::pow(Elem a, unsigned long e) const {
  Elem r = 1, b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

FiniteField::Elem FiniteField::frobenius_power(Elem a, long i) const {
  long k = i % static_cast<long>(d_);
  if (k < 0) k += d_;
  for (long t = 0; t < k; ++t) a = frob_[a];
  return a;
}

std::vector<unsigned> FiniteField::coordinates(Elem a) const {
  std::vector<unsigned> c(d_);
  for (unsigned i = 0; i < d_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

FiniteField::Elem FiniteField::from_coordinates(const std::vector<unsigned>& c) const {
  Elem a = 0;
  for (unsigned i = d_; i-- > 0;) a = a * p_ + (i < c.size() ? c[i] % p_ : 0);
  return a;
}

std::string FiniteField::element_string(Elem a) const {
  if (d_ == 1) return std::to_string(a);
  auto c = coordinates(a);
  std::ostringstream os;
  bool first = true;
  for (unsigned i = d_; i-- > 0;) {
    if (c[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || c[i] != 1) os << c[i];
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  return first ? "0" : os.str();
}

FiniteFieldMatrix::FiniteFieldMatrix(FieldPtr field, const std::vector<std::vector<long>>& rows)
    : field_(std::move(field)), rows_(rows.size()), cols_(rows.empty() ? 0 : rows[0].size()) {
  data_.resize(rows_ * cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    if (rows[i].size() != cols_) throw Error(ErrorCode::DimMismatch, "ragged matrix literal");
    for (std::size_t j = 0; j < cols_; ++j) {
      long v = rows[i][j];
      if (v < 0 || v >= static_cast<long>(field_->order()))
        throw Error(ErrorCode::InvalidArgument, "matrix entry outside the field encoding range");
      data_[i * cols_ + j] = static_cast<Elem>(v);
    }
  }
}

FiniteFieldMatrix FiniteFieldMatrix::identity(FieldPtr field, std::size_t n) {
  FiniteFieldMatrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::size_t FiniteFieldMatrix::rank() const {
  FiniteFieldMatrix a = *this;
  const FiniteField& f = *field_;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && a(p, c) == 0) ++p;
    if (p == rows_) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(a(p, j), a(r, j));
    Elem inv = f.inv(a(r, c));
    for (std::size_t i = r + 1; i < rows_; ++i) {
      if (a(i, c) == 0) continue;
      Elem factor = f.mul(a(i, c), inv);
      for (std::size_t j = c; j < cols_; ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(r, j)));
    }
    ++r;
  }
  return r;
}

FiniteFieldMatrix FiniteFieldMatrix::kernel() const {
  FiniteFieldMatrix a = *this;
  const FiniteField& f = *field_;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && a(p, c) == 0) ++p;
    if (p == rows_) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(a(p, j), a(r, j));
    Elem inv = f.inv(a(r, c));
    for (std::size_t j = 0; j < cols_; ++j) a(r, j) = f.mul(a(r, j), inv);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || a(i, c) == 0) continue;
      Elem factor = a(i, c);
      for (std::size_t j = 0; j < cols_; ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(r, j)));
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  FiniteFieldMatrix k(field_, cols_, free_cols.size());
  for (std::size_t t = 0; t < free_cols.size(); ++t) {
    k(free_cols[t], t) = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) k(pivot_cols[i], t) = f.neg(a(i, free_cols[t]));
  }
  return k;
}

bool FiniteFieldMatrix::is_zero() const {
  for (Elem e : data_)
    if (e != 0) return false;
  return true;
}

FiniteFieldMatrix FiniteFieldMatrix::frobenius_twist(long i) const {
  FiniteFieldMatrix out = *this;
  for (auto& e : out.data_) e = field_->frobenius_power(e, i);
  return out;
}

FiniteFieldMatrix operator*(const FiniteFieldMatrix& a, const FiniteFieldMatrix& b) {
  if (a.field_ != b.field_) throw Error(ErrorCode::FieldMismatch, "matrix product over different fields");
  if (a.cols_ != b.rows_) throw Error(ErrorCode::DimMismatch, "matrix product dimension mismatch");
  const FiniteField& f = *a.field_;
  FiniteFieldMatrix c(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      auto x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = f.add(c(i, j), f.mul(x, b(k, j)));
    }
  return c;
}

bool operator==(const FiniteFieldMatrix& a, const FiniteFieldMatrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

}  // namespace hdlab::linalg
