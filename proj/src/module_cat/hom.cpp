#include "hdlab/error.hpp"
#include "internal.hpp"

namespace hdlab::modcat {

using linalg::mod_floor;

namespace {

IntVec flatten(const IntMatrix& m) {
  IntVec v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

IntMatrix unflatten(const IntVec& v, std::size_t rows, std::size_t cols) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = v[i * cols + j];
  return m;
}

}  // namespace

HomGroup hom_group(const Module& x, const Module& y) {
  if (!x.ring()->same_as(*y.ring())) throw Error(ErrorCode::BaseMismatch, "hom between modules over different rings");
  const std::size_t nx = x.scalar_rank(), ny = y.scalar_rank(), unknowns = nx * ny;
  const IntVec& d = x.moduli();
  const IntVec& e = y.moduli();
  std::vector<IntVec> rows;
  IntVec row_moduli;
  auto push = [&](IntVec r, const Int& m) {
    bool zero = true;
    for (auto& c : r) {
      c = mod_floor(c, m);
      if (sgn(c) != 0) zero = false;
    }
    if (zero) return;
    rows.push_back(std::move(r));
    row_moduli.push_back(m);
  };
  for (std::size_t i = 0; i < ny; ++i)
    for (std::size_t c = 0; c < nx; ++c) {
      if (sgn(d[c]) == 0) continue;
      IntVec r(unknowns);
      r[i * nx + c] = d[c];
      push(std::move(r), e[i]);
    }
  for (unsigned a = 0; a < x.ring()->rank(); ++a) {
    const IntMatrix& A = x.action(a);
    const IntMatrix& B = y.action(a);
    if (A.is_identity() && B.is_identity()) continue;
    for (std::size_t i = 0; i < ny; ++i)
      for (std::size_t c = 0; c < nx; ++c) {
        IntVec r(unknowns);
        for (std::size_t k = 0; k < nx; ++k) r[i * nx + k] += A(k, c);
        for (std::size_t k = 0; k < ny; ++k) r[k * nx + c] -= B(i, k);
        push(std::move(r), e[i]);
      }
  }
  Lattice lambda(unknowns);
  std::vector<IntVec> trivial;
  IntVec ambient(unknowns);
  for (std::size_t i = 0; i < ny; ++i)
    for (std::size_t c = 0; c < nx; ++c) {
      ambient[i * nx + c] = e[i];
      if (sgn(e[i]) == 0) continue;
      IntVec t(unknowns);
      t[i * nx + c] = e[i];
      trivial.push_back(std::move(t));
    }
  if (rows.empty()) {
    for (std::size_t k = 0; k < unknowns; ++k) {
      IntVec u(unknowns);
      u[k] = 1;
      lambda.add(u);
    }
  } else {
    IntMatrix sys = IntMatrix::from_columns(unknowns, rows).transpose();
    lambda.add_all(linalg::kernel_mod(sys, row_moduli));
  }
  HomGroup h;
  h.source = x;
  h.target = y;
  h.group = linalg::Subquotient(std::move(lambda), trivial, ambient);
  h.invariants = h.group.invariants();
  for (const auto& g : h.group.generators()) h.generators.emplace_back(x, y, unflatten(g, ny, nx), false);
  return h;
}

IntVec HomGroup::coordinates(const Morphism& f) const { return group.coordinates(flatten(f.matrix())); }

Morphism HomGroup::element(const IntVec& coefficients) const {
  IntMatrix m(target.scalar_rank(), source.scalar_rank());
  for (std::size_t k = 0; k < generators.size() && k < coefficients.size(); ++k) {
    if (sgn(coefficients[k]) == 0) continue;
    const IntMatrix& g = generators[k].matrix();
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) += coefficients[k] * g(i, j);
  }
  return Morphism(source, target, std::move(m), false);
}

bool isomorphic(const Module& x, const Module& y) {
  if (!x.ring()->same_as(*y.ring())) return false;
  if (x.moduli() != y.moduli()) return false;
  if (x == y) return true;
  switch (x.ring()->kind()) {
    case RingKind::Integers: return true;
    case RingKind::PathAlgebraA2: {
      if (x.vertex_dims() != y.vertex_dims()) return false;
      auto f = linalg::FiniteField::get(static_cast<unsigned>(x.ring()->characteristic()), 1);
      auto rank_of = [&](const IntMatrix& m) {
        std::vector<std::vector<long>> rows(m.rows(), std::vector<long>(m.cols()));
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = mod_floor(m(i, j), x.ring()->characteristic()).get_si();
        return m.rows() == 0 ? std::size_t{0} : linalg::FiniteFieldMatrix(f, rows).rank();
      };
      return rank_of(x.action(2)) == rank_of(y.action(2));
    }
    case RingKind::GroupRing: break;
  }
  HomGroup h = hom_group(x, y);
  if (h.order() > 1 << 20) throw Error(ErrorCode::SearchExhausted, "hom group too large to search for an isomorphism");
  const std::size_t k = h.invariants.size();
  IntVec coeff(k);
  while (true) {
    Morphism f = h.element(coeff);
    if (is_mono(f)) return true;  // equal finite orders make a mono bijective
    std::size_t t = 0;
    while (t < k) {
      coeff[t] += 1;
      if (coeff[t] < h.invariants[t]) break;
      coeff[t] = 0;
      ++t;
    }
    if (t == k) break;
  }
  return false;
}

}  // namespace hdlab::modcat
