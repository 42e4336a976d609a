#include <algorithm>
#include <optional>
#include <sstream>

#include "hdlab/error.hpp"
#include "internal.hpp"

namespace hdlab::modcat {

using linalg::mod_floor;

IntMatrix reduced(IntMatrix m, const IntVec& moduli) {
  m.reduce_rows(moduli);
  return m;
}

IntMatrix stack_columns(const std::vector<IntVec>& columns, std::size_t rows) {
  return IntMatrix::from_columns(rows, columns);
}

Canonical canonicalize(const IntMatrix& relations, const std::vector<IntMatrix>& action) {
  const std::size_t n = relations.rows();
  linalg::SmithDecomposition s = linalg::smith_normal_form(relations);
  Canonical c;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i) {
    Int d = i < s.diag.size() ? s.diag[i] : Int(0);
    if (d == 1) continue;
    kept.push_back(i);
    c.moduli.push_back(d);
  }
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  c.to_new = reduced(s.left.select(kept, all), c.moduli);
  c.to_old = s.left_inverse.select(all, kept);
  for (const IntMatrix& a : action) {
    IntMatrix b = c.to_new * a * c.to_old;
    c.action.push_back(reduced(std::move(b), c.moduli));
  }
  return c;
}

Module ModuleAccess::make(const RingPtr& ring, IntVec moduli, std::vector<IntMatrix> action) {
  auto data = std::make_shared<Module::Data>();
  data->ring = ring;
  data->order = linalg::group_order(moduli);
  std::ostringstream key;
  key << ring->label() << '@' << static_cast<const void*>(ring.get()) << '|';
  for (const auto& d : moduli) key << d.get_str() << ',';
  for (const auto& a : action) {
    key << '|';
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) key << a(i, j).get_str() << ',';
  }
  data->key = key.str();
  data->moduli = std::move(moduli);
  data->action = std::move(action);
  return Module(std::shared_ptr<const Module::Data>(std::move(data)));
}

void validate_action(const RingPtr& ring, const IntVec& moduli, const std::vector<IntMatrix>& action) {
  const std::size_t n = moduli.size();
  const unsigned r = ring->rank();
  if (action.size() != r) throw Error(ErrorCode::NotAnAction, "expected one action matrix per ring basis element");
  for (const auto& a : action)
    if (a.rows() != n || a.cols() != n) throw Error(ErrorCode::DimMismatch, "action matrix has the wrong size");
  auto equal_mod = [&](const IntMatrix& x, const IntMatrix& y) { return reduced(x, moduli) == reduced(y, moduli); };
  for (unsigned t = 0; t < r; ++t)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (mod_floor(moduli[j] * action[t](i, j), moduli[i]) != 0)
          throw Error(ErrorCode::NotAnAction, "action matrix does not respect the relations");
  IntMatrix unit(n, n);
  for (unsigned t = 0; t < r; ++t)
    if (sgn(ring->unit()[t]) != 0)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) unit(i, j) += ring->unit()[t] * action[t](i, j);
  if (!equal_mod(unit, IntMatrix::identity(n))) throw Error(ErrorCode::NotAnAction, "the unit does not act as the identity");
  for (unsigned a = 0; a < r; ++a)
    for (unsigned b = 0; b < r; ++b) {
      IntMatrix lhs = action[a] * action[b];
      IntMatrix rhs(n, n);
      const IntVec& s = ring->structure(a, b);
      for (unsigned t = 0; t < r; ++t)
        if (sgn(s[t]) != 0)
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) rhs(i, j) += s[t] * action[t](i, j);
      if (!equal_mod(lhs, rhs))
        throw Error(ErrorCode::NotAnAction,
                    "action violates the relation for " + ring->basis_names()[a] + " * " + ring->basis_names()[b]);
    }
}

Module::Module() {
  static const Module z = zero(BaseRing::integers());
  data_ = z.data_;
}

Module Module::zero(const RingPtr& ring) {
  return ModuleAccess::make(ring, {}, std::vector<IntMatrix>(ring->rank(), IntMatrix(0, 0)));
}

Module Module::from_scalar_presentation(const RingPtr& ring, const IntMatrix& relations,
                                        const std::vector<IntMatrix>& action, bool validate) {
  const std::size_t n = relations.rows();
  if (action.size() != ring->rank()) throw Error(ErrorCode::NotAnAction, "expected one action matrix per ring basis element");
  for (const auto& a : action)
    if (a.rows() != n || a.cols() != n) throw Error(ErrorCode::DimMismatch, "action matrix has the wrong size");
  IntMatrix rel = relations;
  if (ring->characteristic() != 0) {
    IntMatrix full(n, relations.cols() + n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < relations.cols(); ++j) full(i, j) = relations(i, j);
      full(i, relations.cols() + i) = ring->characteristic();
    }
    rel = std::move(full);
  }
  if (validate) {
    // each action matrix must map the relation lattice into itself
    Lattice lat(n);
    for (std::size_t j = 0; j < rel.cols(); ++j) lat.add(rel.column(j));
    for (const auto& a : action)
      for (const auto& row : lat.basis())
        if (!lat.contains(a.apply(row))) throw Error(ErrorCode::NotAnAction, "action does not preserve the relations");
  }
  Canonical c = canonicalize(rel, action);
  if (validate) validate_action(ring, c.moduli, c.action);
  return ModuleAccess::make(ring, std::move(c.moduli), std::move(c.action));
}

Module Module::present(const RingPtr& ring, std::size_t generators, const std::vector<std::vector<IntVec>>& relators) {
  const unsigned r = ring->rank();
  const std::size_t n = generators * r;
  std::vector<IntMatrix> action;
  for (unsigned a = 0; a < r; ++a) {
    IntMatrix l(n, n);
    for (std::size_t s = 0; s < generators; ++s)
      for (unsigned i = 0; i < r; ++i)
        for (unsigned j = 0; j < r; ++j) l(s * r + i, s * r + j) = ring->left_regular(a)(i, j);
    action.push_back(std::move(l));
  }
  std::vector<IntVec> cols;
  for (const auto& rel : relators) {
    if (rel.size() != generators) throw Error(ErrorCode::DimMismatch, "relator length must equal the generator count");
    IntVec v(n);
    for (std::size_t s = 0; s < generators; ++s) {
      if (rel[s].size() != r) throw Error(ErrorCode::DimMismatch, "ring element has the wrong number of coefficients");
      for (unsigned i = 0; i < r; ++i) v[s * r + i] = rel[s][i];
    }
    for (unsigned a = 0; a < r; ++a) cols.push_back(action[a].apply(v));
  }
  return from_scalar_presentation(ring, IntMatrix::from_columns(n, cols), action, false);
}

Module Module::free(const RingPtr& ring, std::size_t rank) { return present(ring, rank, {}); }

Int Module::exponent() const {
  Int e = 1;
  for (const auto& d : moduli()) {
    if (sgn(d) == 0) return 0;
    e = linalg::lcm(e, d);
  }
  return e;
}

IntVec Module::reduce(IntVec v) const {
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod_floor(v[i], moduli()[i]);
  return v;
}

bool Module::is_zero_element(const IntVec& v) const {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (mod_floor(v[i], moduli()[i]) != 0) return false;
  return true;
}

IntVec Module::act(unsigned a, const IntVec& v) const { return reduce(action(a).apply(v)); }

std::pair<std::size_t, std::size_t> Module::vertex_dims() const {
  if (ring()->kind() != RingKind::PathAlgebraA2) throw Error(ErrorCode::InvalidArgument, "vertex dimensions need an A2 representation");
  auto f = linalg::FiniteField::get(static_cast<unsigned>(ring()->characteristic()), 1);
  auto rank_of = [&](const IntMatrix& m) {
    std::vector<std::vector<long>> rows(m.rows(), std::vector<long>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = mod_floor(m(i, j), ring()->characteristic()).get_si();
    if (m.rows() == 0) return std::size_t{0};
    return linalg::FiniteFieldMatrix(f, rows).rank();
  };
  return {rank_of(action(0)), rank_of(action(1))};
}

std::string Module::describe() const {
  std::ostringstream os;
  switch (ring()->kind()) {
    case RingKind::Integers: os << linalg::invariants_to_string(moduli()); break;
    case RingKind::GroupRing: {
      os << linalg::invariants_to_string(moduli()) << " over " << ring()->label();
      break;
    }
    case RingKind::PathAlgebraA2: {
      auto [d1, d2] = vertex_dims();
      os << "rep(" << d1 << "," << d2 << ") over F_" << ring()->characteristic();
      break;
    }
  }
  return os.str();
}

bool operator==(const Module& a, const Module& b) {
  if (a.data_ == b.data_) return true;
  return a.ring()->same_as(*b.ring()) && a.moduli() == b.moduli() && a.actions() == b.actions();
}

Morphism::Morphism(Module source, Module target, IntMatrix matrix, bool validate)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (!source_.ring()->same_as(*target_.ring())) throw Error(ErrorCode::BaseMismatch, "morphism between modules over different rings");
  if (matrix_.rows() != target_.scalar_rank() || matrix_.cols() != source_.scalar_rank())
    throw Error(ErrorCode::DimMismatch, "morphism matrix has the wrong size");
  matrix_.reduce_rows(target_.moduli());
  if (validate && !is_well_defined(source_, target_, matrix_))
    throw Error(ErrorCode::InvalidArgument, "matrix does not define a module morphism");
}

bool Morphism::is_well_defined(const Module& x, const Module& y, const IntMatrix& m) {
  const IntVec& d = x.moduli();
  const IntVec& e = y.moduli();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (mod_floor(d[c] * m(i, c), e[i]) != 0) return false;
  for (unsigned a = 0; a < x.ring()->rank(); ++a)
    if (reduced(m * x.action(a), e) != reduced(y.action(a) * m, e)) return false;
  return true;
}

Morphism Morphism::zero(const Module& source, const Module& target) {
  return Morphism(source, target, IntMatrix(target.scalar_rank(), source.scalar_rank()), false);
}

Morphism Morphism::identity(const Module& x) { return Morphism(x, x, IntMatrix::identity(x.scalar_rank()), false); }

Morphism Morphism::multiplication(const Module& x, const Int& n) { return identity(x).scaled(n); }

IntVec Morphism::apply(const IntVec& x) const { return target_.reduce(matrix_.apply(x)); }

bool Morphism::is_zero() const { return matrix_.is_zero(); }

Morphism Morphism::scaled(const Int& c) const {
  IntMatrix m = matrix_;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= c;
  return Morphism(source_, target_, std::move(m), false);
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (!(f.target_ == g.source_)) throw Error(ErrorCode::DimMismatch, "composition of non-composable morphisms");
  return Morphism(f.source_, g.target_, g.matrix_ * f.matrix_, false);
}

Morphism operator+(const Morphism& a, const Morphism& b) {
  if (!(a.source_ == b.source_) || !(a.target_ == b.target_)) throw Error(ErrorCode::DimMismatch, "sum of morphisms with different ends");
  return Morphism(a.source_, a.target_, a.matrix_ + b.matrix_, false);
}

Morphism operator-(const Morphism& a, const Morphism& b) {
  if (!(a.source_ == b.source_) || !(a.target_ == b.target_)) throw Error(ErrorCode::DimMismatch, "difference of morphisms with different ends");
  return Morphism(a.source_, a.target_, a.matrix_ - b.matrix_, false);
}

bool operator==(const Morphism& a, const Morphism& b) {
  return a.source_ == b.source_ && a.target_ == b.target_ && a.matrix_ == b.matrix_;
}

Module make_finab(const IntVec& factors) { return make_finab(BaseRing::integers(), factors); }

Module make_finab(const RingPtr& ring, const IntVec& factors) {
  if (ring->characteristic() != 0) throw Error(ErrorCode::InvalidArgument, "finite abelian groups need a ring of characteristic 0");
  for (const auto& f : factors)
    if (f <= 0) throw Error(ErrorCode::InvalidFactors, "invariant factor " + f.get_str() + " is not positive");
  const std::size_t n = factors.size();
  // every group element acts as the identity
  std::vector<IntMatrix> action(ring->rank(), IntMatrix::identity(n));
  return Module::from_scalar_presentation(ring, IntMatrix::diagonal(factors), action, false);
}

Module make_gamma_module(const FiniteGroup& group, const IntVec& factors, const std::map<int, IntMatrix>& action) {
  return make_gamma_module(BaseRing::group_ring(group), factors, action);
}

Module make_gamma_module(const RingPtr& ring, const IntVec& factors, const std::map<int, IntMatrix>& given) {
  const FiniteGroup* g = ring->group();
  if (!g) throw Error(ErrorCode::InvalidArgument, "Gamma-modules need a group ring");
  for (const auto& f : factors)
    if (f <= 0) throw Error(ErrorCode::InvalidFactors, "invariant factor " + f.get_str() + " is not positive");
  const std::size_t n = factors.size();
  const int order = g->order();
  auto reduce_mat = [&](IntMatrix m) { return reduced(std::move(m), factors); };
  std::vector<std::optional<IntMatrix>> act(order);
  act[g->identity()] = IntMatrix::identity(n);
  for (const auto& [elem, m] : given) {
    if (elem < 0 || elem >= order) throw Error(ErrorCode::NotAnAction, "action given on an element outside the group");
    if (m.rows() != n || m.cols() != n) throw Error(ErrorCode::DimMismatch, "action matrix has the wrong size");
    IntMatrix r = reduce_mat(m);
    if (act[elem] && !(*act[elem] == r)) throw Error(ErrorCode::NotAnAction, "the identity must act trivially");
    act[elem] = r;
  }
  // fill in products of known elements
  bool grew = true;
  while (grew) {
    grew = false;
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b) {
        if (!act[a] || !act[b]) continue;
        int c = g->mul(a, b);
        if (!act[c]) {
          act[c] = reduce_mat(*act[a] * *act[b]);
          grew = true;
        }
      }
  }
  std::vector<IntMatrix> full;
  for (int a = 0; a < order; ++a) {
    if (!act[a]) throw Error(ErrorCode::NotAnAction, "action matrices do not generate the group");
    full.push_back(*act[a]);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (int a = 0; a < order; ++a)
      for (std::size_t j = 0; j < n; ++j)
        if (mod_floor(factors[j] * full[a](i, j), factors[i]) != 0)
          throw Error(ErrorCode::NotAnAction, "action matrix is not an endomorphism of the group");
  validate_action(ring, factors, full);
  return Module::from_scalar_presentation(ring, IntMatrix::diagonal(factors), full, false);
}

Module make_quiver_rep(std::size_t v1, std::size_t v2, const linalg::FiniteFieldMatrix& edge_map) {
  const auto& f = edge_map.field();
  if (!f) throw Error(ErrorCode::InvalidArgument, "edge map has no field");
  if (f->degree() != 1) throw Error(ErrorCode::InvalidArgument, "A2 representations are supported over prime fields only");
  if (edge_map.rows() != v2 || edge_map.cols() != v1) throw Error(ErrorCode::DimMismatch, "edge map must be dim V2 x dim V1");
  std::vector<std::vector<long>> rows(v2, std::vector<long>(v1));
  for (std::size_t i = 0; i < v2; ++i)
    for (std::size_t j = 0; j < v1; ++j) rows[i][j] = edge_map(i, j);
  return make_quiver_rep(f->characteristic(), v1, v2, rows);
}

Module make_quiver_rep(unsigned p, std::size_t v1, std::size_t v2, const std::vector<std::vector<long>>& edge_map) {
  RingPtr ring = BaseRing::path_algebra_a2(p);
  const bool empty_ok = edge_map.empty() && (v1 == 0 || v2 == 0);
  if (!empty_ok) {
    if (edge_map.size() != v2) throw Error(ErrorCode::DimMismatch, "edge map must have dim V2 rows");
    for (const auto& row : edge_map)
      if (row.size() != v1) throw Error(ErrorCode::DimMismatch, "edge map must have dim V1 columns");
  }
  const std::size_t n = v1 + v2;
  IntMatrix e1(n, n), e2(n, n), a(n, n);
  for (std::size_t i = 0; i < v1; ++i) e1(i, i) = 1;
  for (std::size_t i = 0; i < v2; ++i) e2(v1 + i, v1 + i) = 1;
  for (std::size_t i = 0; i < v2; ++i)
    for (std::size_t j = 0; j < v1 && !empty_ok; ++j) a(v1 + i, j) = mod_floor(edge_map[i][j], p);
  return Module::from_scalar_presentation(ring, IntMatrix(n, 0), {e1, e2, a}, true);
}

namespace {

void chains(long remaining, long last, IntVec& prefix, std::vector<IntVec>& out) {
  if (remaining == 1) {
    // prefix holds the chain from the largest factor down
    out.emplace_back(prefix.rbegin(), prefix.rend());
    return;
  }
  for (long d = 2; d <= remaining; ++d) {
    if (remaining % d != 0) continue;
    if (last != 0 && last % d != 0) continue;
    prefix.emplace_back(d);
    chains(remaining / d, d, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<IntVec> finite_abelian_groups(long max_order) {
  std::vector<IntVec> out;
  for (long m = 1; m <= max_order; ++m) {
    std::vector<IntVec> here;
    IntVec prefix;
    chains(m, 0, prefix, here);
    std::sort(here.begin(), here.end());
    out.insert(out.end(), here.begin(), here.end());
  }
  return out;
}

}  // namespace hdlab::modcat
