#include <functional>
#include <map>

#include "hdlab/error.hpp"
#include "hdlab/gammacoh.hpp"

namespace hdlab::gammacoh {

using linalg::Lattice;
using linalg::Subquotient;

namespace {

// Gamma-module on a subquotient of Z^dim, the action given on vectors.
struct ConjugationModule {
  Module module;
  Subquotient group;
};

ConjugationModule build(const modcat::RingPtr& ring, Lattice big, const std::vector<IntVec>& small,
                        const std::function<IntVec(int, const IntVec&)>& op) {
  ConjugationModule out{Module(), Subquotient(std::move(big), small)};
  const IntVec& inv = out.group.invariants();
  for (const auto& d : inv)
    if (d == 0) throw Error(ErrorCode::InvalidArgument, "conjugation module: infinite result");
  const FiniteGroup* g = ring->group();
  std::map<int, IntMatrix> action;
  const auto& gens = out.group.generators();
  if (g) {
    for (int x = 0; x < g->order(); ++x) {
      IntMatrix a(inv.size(), inv.size());
      for (std::size_t j = 0; j < gens.size(); ++j) a.set_column(j, out.group.coordinates(op(x, gens[j])));
      action[x] = std::move(a);
    }
    out.module = modcat::make_gamma_module(ring, inv, action);
  } else {
    out.module = modcat::make_finab(ring, inv);
  }
  if (!(out.module.moduli() == inv)) throw std::logic_error("conjugation module: coordinates were not preserved");
  return out;
}

void check_same_ring(const Module& x, const Module& y) {
  if (!x.ring()->same_as(*y.ring())) throw Error(ErrorCode::BaseMismatch, "modules over different rings");
  if (x.ring()->kind() == modcat::RingKind::PathAlgebraA2)
    throw Error(ErrorCode::InvalidArgument, "conjugation modules need Z or a group ring");
  if (!x.is_finite() || !y.is_finite()) throw Error(ErrorCode::InvalidArgument, "conjugation modules need finite modules");
}

int inverse_of(const Module& x, int g) { return x.ring()->group() ? x.ring()->group()->inverse(g) : 0; }

// phi in Z^{n m}: phi_i in Y is the image of the i-th generator of X.
// (g phi)_i = g_Y sum_j c(j, i) phi_j
IntVec conjugate(const Module& y, int g, const IntMatrix& c, const IntVec& phi) {
  const std::size_t n = c.rows(), m = y.scalar_rank();
  IntVec out(n * m, Int(0));
  for (std::size_t i = 0; i < n; ++i) {
    IntVec acc(m, Int(0));
    for (std::size_t j = 0; j < n; ++j) {
      if (c(j, i) == 0) continue;
      for (std::size_t k = 0; k < m; ++k) acc[k] += c(j, i) * phi[j * m + k];
    }
    acc = y.ring()->group() ? y.act(static_cast<unsigned>(g), acc) : y.reduce(acc);
    for (std::size_t k = 0; k < m; ++k) out[i * m + k] = acc[k];
  }
  return out;
}

std::vector<IntVec> target_relations(const Module& x, const Module& y) {
  const std::size_t n = x.scalar_rank(), m = y.scalar_rank();
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      IntVec v(n * m, Int(0));
      v[i * m + k] = y.moduli()[k];
      out.push_back(std::move(v));
    }
  return out;
}

ConjugationModule hom_z(const Module& x, const Module& y) {
  check_same_ring(x, y);
  const std::size_t n = x.scalar_rank(), m = y.scalar_rank();
  // d_i phi_i = 0 in Y
  IntMatrix cond(n * m, n * m);
  IntVec moduli(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      cond(i * m + k, i * m + k) = x.moduli()[i];
      moduli[i * m + k] = y.moduli()[k];
    }
  Lattice big(n * m);
  big.add_all(linalg::kernel_mod(cond, moduli));
  return build(x.ring(), std::move(big), target_relations(x, y), [&](int g, const IntVec& phi) {
    return conjugate(y, g, x.action(static_cast<unsigned>(inverse_of(x, g))), phi);
  });
}

}  // namespace

Module hom_z_module(const Module& x, const Module& y) { return hom_z(x, y).module; }

Module ext1_z_module(const Module& x, const Module& y) {
  check_same_ring(x, y);
  const std::size_t n = x.scalar_rank(), m = y.scalar_rank();
  const IntVec& d = x.moduli();
  std::vector<IntVec> small = target_relations(x, y);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      IntVec v(n * m, Int(0));
      v[i * m + k] = d[i];
      small.push_back(std::move(v));
    }
  Lattice big(n * m);
  for (std::size_t i = 0; i < n * m; ++i) {
    IntVec v(n * m, Int(0));
    v[i] = 1;
    big.add(v);
  }
  // the lift of g to the relation module: B = D^{-1} A D
  auto lift = [&](int g) {
    const IntMatrix& a = x.action(static_cast<unsigned>(g));
    IntMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Int t = linalg::mod_floor(a(i, j), d[i]) * d[j];
        if (t % d[i] != 0) throw std::logic_error("ext1_z_module: action does not lift");
        b(i, j) = t / d[i];
      }
    return b;
  };
  return build(x.ring(), std::move(big), small, [&](int g, const IntVec& phi) {
    return conjugate(y, g, lift(inverse_of(x, g)), phi);
  }).module;
}

Module coinduced(const FiniteGroup& group, const IntVec& factors) {
  const auto ring = modcat::BaseRing::group_ring(group);
  const std::size_t n = factors.size(), order = static_cast<std::size_t>(group.order());
  IntVec moduli;
  for (std::size_t x = 0; x < order; ++x) moduli.insert(moduli.end(), factors.begin(), factors.end());
  std::map<int, IntMatrix> action;
  for (int g = 0; g < group.order(); ++g) {
    IntMatrix a(n * order, n * order);
    for (int x = 0; x < group.order(); ++x) {
      const auto src = static_cast<std::size_t>(group.mul(x, g));
      for (std::size_t r = 0; r < n; ++r) a(static_cast<std::size_t>(x) * n + r, src * n + r) = 1;
    }
    action[g] = std::move(a);
  }
  return modcat::make_gamma_module(ring, moduli, action);
}

namespace {

Int ell_power(long ell, unsigned k) {
  Int q = 1;
  for (unsigned i = 0; i < k; ++i) q *= ell;
  return q;
}

void check_ell_primary(const Module& m, long ell, unsigned k) {
  if (!linalg::is_prime(ell)) throw Error(ErrorCode::InvalidArgument, "l must be prime");
  if (!m.is_finite()) throw Error(ErrorCode::NotEllPrimary, "the module is infinite");
  if (ell_power(ell, k) % m.exponent() != 0)
    throw Error(ErrorCode::NotEllPrimary, "the module is not killed by " + std::to_string(ell) + "^" + std::to_string(k));
}

ConjugationModule dual(const Module& m, long ell, unsigned k) {
  check_ell_primary(m, ell, k);
  return hom_z(m, modcat::make_finab(m.ring(), IntVec{ell_power(ell, k)}));
}

}  // namespace

Module ell_dual(const Module& m, long ell, unsigned k) { return dual(m, ell, k).module; }

Morphism ell_dual_map(const Morphism& f, long ell, unsigned k) {
  const auto src = dual(f.target(), ell, k);
  const auto dst = dual(f.source(), ell, k);
  const IntMatrix& a = f.matrix();
  IntMatrix out(dst.module.scalar_rank(), src.module.scalar_rank());
  const auto& gens = src.group.generators();
  for (std::size_t t = 0; t < gens.size(); ++t) {
    // (phi o f)(e_j) = sum_i phi_i a(i, j)
    IntVec psi(a.cols(), Int(0));
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t i = 0; i < a.rows(); ++i) psi[j] += gens[t][i] * a(i, j);
    out.set_column(t, dst.group.coordinates(psi));
  }
  return Morphism(src.module, dst.module, out);
}

Morphism double_dual_map(const Module& m, long ell, unsigned k) {
  const auto d1 = dual(m, ell, k);
  const auto d2 = hom_z(d1.module, modcat::make_finab(m.ring(), IntVec{ell_power(ell, k)}));
  const auto& gens = d1.group.generators();
  IntMatrix out(d2.module.scalar_rank(), m.scalar_rank());
  for (std::size_t j = 0; j < m.scalar_rank(); ++j) {
    // evaluation at e_j on each generator of M*
    IntVec v(gens.size());
    for (std::size_t t = 0; t < gens.size(); ++t) v[t] = gens[t][j];
    out.set_column(j, d2.group.coordinates(v));
  }
  return Morphism(m, d2.module, out);
}

}  // namespace hdlab::gammacoh
