#include "hdlab/exact_linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hdlab::linalg {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVec>& columns) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw std::invalid_argument("IntMatrix::from_columns: length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVec& diag) {
  IntMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

IntVec IntMatrix::row(std::size_t i) const {
  return IntVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVec IntMatrix::column(std::size_t j) const {
  IntVec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void IntMatrix::set_column(std::size_t j, const IntVec& v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntVec IntMatrix::apply(const IntVec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("IntMatrix::apply: dimension mismatch");
  IntVec out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Int acc = 0;
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn((*this)(i, j)) != 0 && sgn(v[j]) != 0) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return sgn(x) == 0; });
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

void IntMatrix::reduce_rows(const IntVec& moduli) {
  for (std::size_t i = 0; i < rows_; ++i) {
    if (sgn(moduli[i]) == 0) continue;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = mod_floor((*this)(i, j), moduli[i]);
  }
}

IntMatrix IntMatrix::select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  IntMatrix m(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(rows[i], cols[j]);
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix product: dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (sgn(b(k, j)) != 0) c(i, j) += x * b(k, j);
    }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix sum: dimension mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix difference: dimension mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

Int mod_floor(const Int& a, const Int& m) {
  if (sgn(m) == 0) return a;
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (sgn(r) < 0) r += abs(m);
  return r;
}

namespace {

Int tdiv_q(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int fdiv_q(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

bool divides(const Int& d, const Int& n) { return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0; }

class SmithWorker {
 public:
  explicit SmithWorker(const IntMatrix& a)
      : a_(a),
        u_(IntMatrix::identity(a.rows())),
        ui_(IntMatrix::identity(a.rows())),
        v_(IntMatrix::identity(a.cols())),
        vi_(IntMatrix::identity(a.cols())) {}

  SmithDecomposition run() {
    const std::size_t m = a_.rows(), n = a_.cols();
    const std::size_t lim = std::min(m, n);
    for (std::size_t t = 0; t < lim; ++t) {
      if (!reduce_block(t)) break;
      if (sgn(a_(t, t)) < 0) negate_row(t);
    }
    SmithDecomposition out;
    out.diag.resize(lim);
    for (std::size_t i = 0; i < lim; ++i) out.diag[i] = a_(i, i);
    out.left = std::move(u_);
    out.right = std::move(v_);
    out.left_inverse = std::move(ui_);
    out.right_inverse = std::move(vi_);
    return out;
  }

 private:
  // Returns false if the active block starting at (t, t) is zero.
  bool reduce_block(std::size_t t) {
    const std::size_t m = a_.rows(), n = a_.cols();
    while (true) {
      std::size_t pi = m, pj = n;
      Int best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const Int& x = a_(i, j);
          if (sgn(x) == 0) continue;
          if (pi == m || mpz_cmpabs(x.get_mpz_t(), best.get_mpz_t()) < 0) {
            best = abs(x);
            pi = i;
            pj = j;
          }
        }
      if (pi == m) return false;
      if (pi != t) swap_rows(pi, t);
      if (pj != t) swap_cols(pj, t);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(a_(i, t)) == 0) continue;
        Int q = tdiv_q(a_(i, t), a_(t, t));
        if (sgn(q) != 0) row_addmul(i, t, -q);
        if (sgn(a_(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(a_(t, j)) == 0) continue;
        Int q = tdiv_q(a_(t, j), a_(t, t));
        if (sgn(q) != 0) col_addmul(j, t, -q);
        if (sgn(a_(t, j)) != 0) clean = false;
      }
      if (!clean) continue;

      bool chain = true;
      for (std::size_t i = t + 1; i < m && chain; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (sgn(a_(i, j)) != 0 && !divides(a_(t, t), a_(i, j))) {
            row_addmul(t, i, Int(1));
            chain = false;
            break;
          }
      if (chain) return true;
    }
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < a_.cols(); ++c) std::swap(a_(i, c), a_(j, c));
    for (std::size_t c = 0; c < u_.cols(); ++c) std::swap(u_(i, c), u_(j, c));
    for (std::size_t r = 0; r < ui_.rows(); ++r) std::swap(ui_(r, i), ui_(r, j));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < a_.rows(); ++r) std::swap(a_(r, i), a_(r, j));
    for (std::size_t r = 0; r < v_.rows(); ++r) std::swap(v_(r, i), v_(r, j));
    for (std::size_t c = 0; c < vi_.cols(); ++c) std::swap(vi_(i, c), vi_(j, c));
  }

  // row dst += q * row src
  void row_addmul(std::size_t dst, std::size_t src, const Int& q) {
    for (std::size_t c = 0; c < a_.cols(); ++c)
      if (sgn(a_(src, c)) != 0) a_(dst, c) += q * a_(src, c);
    for (std::size_t c = 0; c < u_.cols(); ++c)
      if (sgn(u_(src, c)) != 0) u_(dst, c) += q * u_(src, c);
    for (std::size_t r = 0; r < ui_.rows(); ++r)
      if (sgn(ui_(r, dst)) != 0) ui_(r, src) -= q * ui_(r, dst);
  }

  // col dst += q * col src
  void col_addmul(std::size_t dst, std::size_t src, const Int& q) {
    for (std::size_t r = 0; r < a_.rows(); ++r)
      if (sgn(a_(r, src)) != 0) a_(r, dst) += q * a_(r, src);
    for (std::size_t r = 0; r < v_.rows(); ++r)
      if (sgn(v_(r, src)) != 0) v_(r, dst) += q * v_(r, src);
    for (std::size_t c = 0; c < vi_.cols(); ++c)
      if (sgn(vi_(dst, c)) != 0) vi_(src, c) -= q * vi_(dst, c);
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a_.cols(); ++c) a_(i, c) = -a_(i, c);
    for (std::size_t c = 0; c < u_.cols(); ++c) u_(i, c) = -u_(i, c);
    for (std::size_t r = 0; r < ui_.rows(); ++r) ui_(r, i) = -ui_(r, i);
  }

  IntMatrix a_, u_, ui_, v_, vi_;
};

}  // namespace

std::size_t SmithDecomposition::rank() const {
  return static_cast<std::size_t>(std::count_if(diag.begin(), diag.end(), [](const Int& d) { return sgn(d) != 0; }));
}

SmithDecomposition smith_normal_form(const IntMatrix& a) { return SmithWorker(a).run(); }

IntVec cokernel_invariants(const IntMatrix& a) {
  SmithDecomposition s = smith_normal_form(a);
  IntVec out;
  for (const Int& d : s.diag)
    if (d != 1) out.push_back(d);
  for (std::size_t i = s.diag.size(); i < a.rows(); ++i) out.emplace_back(0);
  return out;
}

IntMatrix kernel_lattice(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  Lattice lat(m + n);
  for (std::size_t j = 0; j < n; ++j) {
    IntVec r(m + n);
    for (std::size_t i = 0; i < m; ++i) r[i] = a(i, j);
    r[m + j] = 1;
    lat.add(r);
  }
  std::vector<IntVec> cols;
  for (std::size_t k = 0; k < lat.rank(); ++k) {
    if (lat.pivots()[k] < m) continue;
    cols.emplace_back(lat.basis()[k].begin() + static_cast<std::ptrdiff_t>(m), lat.basis()[k].end());
  }
  return IntMatrix::from_columns(n, cols);
}

namespace {

Lattice augmented_lattice(const IntMatrix& a, const IntVec& moduli) {
  const std::size_t m = a.rows(), n = a.cols();
  if (moduli.size() != m) throw std::invalid_argument("congruence system: moduli length must equal rows");
  Lattice lat(m + n);
  for (std::size_t i = 0; i < m; ++i) {
    if (sgn(moduli[i]) == 0) continue;
    IntVec r(m + n);
    r[i] = abs(moduli[i]);
    lat.add(r);
  }
  for (std::size_t j = 0; j < n; ++j) {
    IntVec r(m + n);
    for (std::size_t i = 0; i < m; ++i) r[i] = mod_floor(a(i, j), moduli[i]);
    r[m + j] = 1;
    lat.add(r);
  }
  return lat;
}

}  // namespace

std::vector<IntVec> kernel_mod(const IntMatrix& a, const IntVec& moduli) {
  const std::size_t m = a.rows();
  Lattice lat = augmented_lattice(a, moduli);
  std::vector<IntVec> out;
  for (std::size_t k = 0; k < lat.rank(); ++k) {
    if (lat.pivots()[k] < m) continue;
    out.emplace_back(lat.basis()[k].begin() + static_cast<std::ptrdiff_t>(m), lat.basis()[k].end());
  }
  return out;
}

std::optional<IntVec> solve_modular(const IntMatrix& a, const IntVec& b, const IntVec& moduli) {
  const std::size_t m = a.rows(), n = a.cols();
  if (b.size() != m) throw std::invalid_argument("solve_modular: right-hand side length must equal rows");
  Lattice lat = augmented_lattice(a, moduli);
  IntVec v(m + n);
  for (std::size_t i = 0; i < m; ++i) v[i] = mod_floor(b[i], moduli[i]);
  for (std::size_t k = 0; k < lat.rank(); ++k) {
    const std::size_t c = lat.pivots()[k];
    if (c >= m) break;
    const IntVec& row = lat.basis()[k];
    if (sgn(v[c]) == 0) continue;
    if (!divides(row[c], v[c])) return std::nullopt;
    Int q = v[c] / row[c];
    for (std::size_t j = c; j < m + n; ++j) v[j] -= q * row[j];
  }
  for (std::size_t i = 0; i < m; ++i)
    if (sgn(v[i]) != 0) return std::nullopt;
  IntVec shifted(m + n);
  for (std::size_t j = 0; j < n; ++j) shifted[m + j] = -v[m + j];
  shifted = lat.reduce(shifted);
  return IntVec(shifted.begin() + static_cast<std::ptrdiff_t>(m), shifted.end());
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix must be square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix m = a;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m(p, k)) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

bool Lattice::add(const IntVec& v0) {
  if (v0.size() != dim_) throw std::invalid_argument("Lattice::add: dimension mismatch");
  if (contains(v0)) return false;
  IntVec v = v0;
  std::size_t k = 0;
  while (true) {
    std::size_t c = 0;
    while (c < dim_ && sgn(v[c]) == 0) ++c;
    if (c == dim_) break;
    while (k < rows_.size() && pivots_[k] < c) ++k;
    if (k == rows_.size() || pivots_[k] > c) {
      if (sgn(v[c]) < 0)
        for (auto& x : v) x = -x;
      rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(k), std::move(v));
      pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(k), c);
      break;
    }
    IntVec& row = rows_[k];
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), row[c].get_mpz_t(), v[c].get_mpz_t());
    Int ra = row[c] / g, vb = v[c] / g;
    IntVec fresh(dim_);
    for (std::size_t j = c; j < dim_; ++j) {
      fresh[j] = s * row[j] + t * v[j];
      v[j] = ra * v[j] - vb * row[j];
    }
    row = std::move(fresh);
    ++k;
  }
  for (std::size_t r = 0; r < rows_.size(); ++r) normalize_above(r);
  return true;
}

void Lattice::normalize_above(std::size_t r) {
  const std::size_t c = pivots_[r];
  const IntVec& row = rows_[r];
  for (std::size_t i = 0; i < r; ++i) {
    if (sgn(rows_[i][c]) == 0) continue;
    Int q = fdiv_q(rows_[i][c], row[c]);
    if (sgn(q) == 0) continue;
    for (std::size_t j = c; j < dim_; ++j)
      if (sgn(row[j]) != 0) rows_[i][j] -= q * row[j];
  }
}

void Lattice::add_all(const std::vector<IntVec>& vs) {
  for (const auto& v : vs) add(v);
}

bool Lattice::contains(const IntVec& v) const { return coordinates(v).has_value(); }

bool Lattice::contains_all(const Lattice& other) const {
  return std::all_of(other.rows_.begin(), other.rows_.end(), [this](const IntVec& r) { return contains(r); });
}

std::optional<IntVec> Lattice::coordinates(const IntVec& v0) const {
  if (v0.size() != dim_) throw std::invalid_argument("Lattice::coordinates: dimension mismatch");
  IntVec v = v0;
  IntVec coeffs(rows_.size());
  std::size_t next = 0;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const std::size_t c = pivots_[k];
    for (std::size_t j = next; j < c; ++j)
      if (sgn(v[j]) != 0) return std::nullopt;
    next = c + 1;
    if (sgn(v[c]) == 0) continue;
    if (!divides(rows_[k][c], v[c])) return std::nullopt;
    Int q = v[c] / rows_[k][c];
    coeffs[k] = q;
    for (std::size_t j = c; j < dim_; ++j)
      if (sgn(rows_[k][j]) != 0) v[j] -= q * rows_[k][j];
  }
  for (std::size_t j = next; j < dim_; ++j)
    if (sgn(v[j]) != 0) return std::nullopt;
  return coeffs;
}

IntVec Lattice::reduce(IntVec v) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const std::size_t c = pivots_[k];
    if (sgn(v[c]) == 0) continue;
    Int q = fdiv_q(v[c], rows_[k][c]);
    if (sgn(q) == 0) continue;
    for (std::size_t j = c; j < dim_; ++j)
      if (sgn(rows_[k][j]) != 0) v[j] -= q * rows_[k][j];
  }
  return v;
}

Int Lattice::index() const {
  if (rows_.size() != dim_) return 0;
  Int p = 1;
  for (std::size_t k = 0; k < rows_.size(); ++k) p *= rows_[k][pivots_[k]];
  return p;
}

Subquotient::Subquotient(Lattice big, const std::vector<IntVec>& small_generators, const IntVec& ambient_moduli)
    : big_(std::move(big)) {
  const std::size_t k = big_.rank();
  std::vector<IntVec> coords;
  coords.reserve(small_generators.size());
  for (const auto& s : small_generators) {
    auto c = big_.coordinates(s);
    if (!c) throw std::logic_error("Subquotient: small lattice is not contained in big lattice");
    coords.push_back(std::move(*c));
  }
  IntMatrix y = IntMatrix::from_columns(k, coords);
  SmithDecomposition s = smith_normal_form(y);
  left_ = s.left;
  for (std::size_t i = 0; i < k; ++i) {
    Int d = i < s.diag.size() ? s.diag[i] : Int(0);
    if (d == 1) continue;
    kept_.push_back(i);
    invariants_.push_back(d);
    IntVec g(big_.dim());
    for (std::size_t j = 0; j < k; ++j) {
      const Int& w = s.left_inverse(j, i);
      if (sgn(w) == 0) continue;
      const IntVec& b = big_.basis()[j];
      for (std::size_t t = 0; t < g.size(); ++t)
        if (sgn(b[t]) != 0) g[t] += w * b[t];
    }
    if (!ambient_moduli.empty())
      for (std::size_t t = 0; t < g.size(); ++t) g[t] = mod_floor(g[t], ambient_moduli[t]);
    generators_.push_back(std::move(g));
  }
}

IntVec Subquotient::coordinates(const IntVec& v) const {
  auto y = big_.coordinates(v);
  if (!y) throw std::logic_error("Subquotient::coordinates: element outside the big lattice");
  IntVec out(kept_.size());
  for (std::size_t t = 0; t < kept_.size(); ++t) {
    const std::size_t i = kept_[t];
    Int acc = 0;
    for (std::size_t j = 0; j < y->size(); ++j)
      if (sgn((*y)[j]) != 0) acc += left_(i, j) * (*y)[j];
    out[t] = mod_floor(acc, invariants_[t]);
  }
  return out;
}

bool Subquotient::is_trivial(const IntVec& v) const {
  IntVec c = coordinates(v);
  return std::all_of(c.begin(), c.end(), [](const Int& x) { return sgn(x) == 0; });
}

Int Subquotient::order() const { return group_order(invariants_); }

Int group_order(const IntVec& invariants) {
  Int p = 1;
  for (const Int& d : invariants) {
    if (sgn(d) == 0) return 0;
    p *= d;
  }
  return p;
}

IntVec normalize_invariants(const IntVec& moduli) { return cokernel_invariants(IntMatrix::diagonal(moduli)); }

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<long> prime_factors(const Int& n0) {
  if (sgn(n0) == 0) throw std::invalid_argument("prime_factors: zero has no factorization");
  Int n = abs(n0);
  std::vector<long> out;
  for (long d = 2; Int(d) * d <= n; ++d) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(d))) {
      out.push_back(d);
      while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(d))) n /= d;
    }
  }
  if (n > 1) {
    if (!n.fits_slong_p()) throw std::overflow_error("prime_factors: cofactor too large");
    out.push_back(n.get_si());
  }
  return out;
}

std::pair<Int, Int> split_by_primes(const Int& n0, const std::set<long>& primes) {
  if (sgn(n0) <= 0) throw std::invalid_argument("split_by_primes: n must be positive");
  Int inside = 1, n = n0;
  for (long p : primes) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
      n /= p;
      inside *= p;
    }
  }
  return {inside, n};
}

IntVec prime_complement_invariants(const IntVec& invariants, const std::set<long>& primes) {
  IntVec out;
  for (const Int& d : invariants) {
    if (sgn(d) == 0) throw std::invalid_argument("prime_complement_invariants: group is not finite");
    Int rest = split_by_primes(d, primes).second;
    if (rest != 1) out.push_back(rest);
  }
  return out;
}

std::string invariants_to_string(const IntVec& invariants) {
  if (invariants.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < invariants.size(); ++i) {
    if (i) s += " + ";
    s += sgn(invariants[i]) == 0 ? std::string("Z") : "Z/" + invariants[i].get_str();
  }
  return s;
}

}  // namespace hdlab::linalg
