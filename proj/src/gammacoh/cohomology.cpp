#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>

#include "hdlab/error.hpp"
#include "hdlab/gammacoh.hpp"
#include "prime_power.hpp"

namespace hdlab::gammacoh {

using detail::PPMatrix;
using detail::PrimePower;

namespace {

const FiniteGroup& group_of(const Module& m) {
  const FiniteGroup* g = m.ring()->group();
  if (!g) throw Error(ErrorCode::InvalidArgument, "group cohomology needs a module over a group ring");
  return *g;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

struct PrimaryPart {
  long p = 0;
  Module module;
  IntMatrix inclusion;
};

std::vector<PrimaryPart> primary_parts(const Module& m) {
  std::vector<PrimaryPart> out;
  const Int e = m.exponent();
  if (e == 1) return out;
  for (long p : linalg::prime_factors(e)) {
    Int pk = 1;
    while (e % (pk * p) == 0) pk *= p;
    const Int c = e / pk;
    std::vector<IntVec> gens;
    for (std::size_t j = 0; j < m.scalar_rank(); ++j) {
      IntVec v(m.scalar_rank(), Int(0));
      v[j] = c;
      gens.push_back(std::move(v));
    }
    auto sub = modcat::subobject(m, modcat::submodule_lattice(m, gens));
    out.push_back({p, sub.object, sub.inclusion.matrix()});
  }
  return out;
}

int p_exponent(Int d, long p) {
  int k = 0;
  while (d > 1 && d % p == 0) {
    d /= p;
    ++k;
  }
  return k;
}

// Normalized bar complex of one p-primary module.
struct PartComplex {
  const FiniteGroup& group;
  PrimePower ring;
  std::size_t n;
  std::vector<int> a;  // coordinate r has order p^a[r]
  std::vector<std::vector<std::int64_t>> action;  // per group element, n x n row-major
  std::vector<int> nonid, pos;

  PartComplex(const FiniteGroup& g, long p, const Module& m)
      : group(g), ring(p, max_exponent(m, p)), n(m.scalar_rank()) {
    for (const auto& d : m.moduli()) a.push_back(p_exponent(d, p));
    for (int x = 0; x < g.order(); ++x) {
      std::vector<std::int64_t> mat(n * n);
      const IntMatrix& ax = m.action(static_cast<unsigned>(x));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) mat[i * n + j] = ring.reduce(linalg::mod_floor(ax(i, j), ring.q).get_si());
      action.push_back(std::move(mat));
    }
    pos.assign(g.order(), -1);
    for (int x = 0; x < g.order(); ++x)
      if (x != g.identity()) {
        pos[x] = static_cast<int>(nonid.size());
        nonid.push_back(x);
      }
  }

  static int max_exponent(const Module& m, long p) {
    int k = 1;
    for (const auto& d : m.moduli()) k = std::max(k, p_exponent(d, p));
    return k;
  }

  std::size_t tuples(std::size_t i) const { return ipow(nonid.size(), i); }

  std::vector<int> decode(std::size_t t, std::size_t i) const {
    std::vector<int> h(i);
    const std::size_t m = nonid.size();
    for (std::size_t s = i; s-- > 0;) {
      h[s] = nonid[t % m];
      t /= m;
    }
    return h;
  }

  // Index of a tuple, or -1 when an entry is the identity.
  long encode(const std::vector<int>& h) const {
    long t = 0;
    for (int x : h) {
      if (pos[x] < 0) return -1;
      t = t * static_cast<long>(nonid.size()) + pos[x];
    }
    return t;
  }

  // Matrix of C^i -> C^{i+1}; with scaled rows the condition mod p^a[r]
  // becomes a condition mod q.
  PPMatrix coboundary(std::size_t i, bool scaled) const {
    const std::size_t rows = tuples(i + 1) * n, cols = tuples(i) * n;
    PPMatrix d(rows, cols);
    auto add_identity = [&](std::size_t rt, long ct, std::int64_t sign) {
      if (ct < 0) return;
      for (std::size_t r = 0; r < n; ++r) {
        auto& e = d(rt * n + r, static_cast<std::size_t>(ct) * n + r);
        e = ring.reduce(e + sign);
      }
    };
    for (std::size_t rt = 0; rt < tuples(i + 1); ++rt) {
      const std::vector<int> h = decode(rt, i + 1);
      const long first = encode(std::vector<int>(h.begin() + 1, h.end()));
      if (first >= 0) {
        const auto& ah = action[h[0]];
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c) {
            auto& e = d(rt * n + r, static_cast<std::size_t>(first) * n + c);
            e = ring.reduce(e + ah[r * n + c]);
          }
      }
      for (std::size_t j = 1; j <= i; ++j) {
        std::vector<int> merged;
        for (std::size_t s = 0; s < h.size(); ++s) {
          if (s + 1 == j) {
            merged.push_back(group.mul(h[s], h[s + 1]));
            ++s;
          } else {
            merged.push_back(h[s]);
          }
        }
        add_identity(rt, encode(merged), j % 2 ? -1 : 1);
      }
      add_identity(rt, encode(std::vector<int>(h.begin(), h.end() - 1)), (i + 1) % 2 ? -1 : 1);
    }
    if (scaled)
      for (std::size_t rt = 0; rt < tuples(i + 1); ++rt)
        for (std::size_t r = 0; r < n; ++r) {
          const std::int64_t s = ring.power(ring.k - a[r]);
          std::int64_t* row = d.row(rt * n + r);
          for (std::size_t c = 0; c < cols; ++c) row[c] = ring.reduce(row[c] * s);
        }
    return d;
  }

  // (order exponent, cochain in coordinates of C^i) per summand of H^i
  std::vector<std::pair<int, std::vector<std::int64_t>>> cohomology(std::size_t i) const {
    const std::size_t dim = tuples(i) * n;
    std::vector<std::pair<int, std::vector<std::int64_t>>> out;
    if (dim == 0) return out;
    const auto ker = detail::kernel(coboundary(i, true), ring);
    const std::size_t kdim = ker.generators.size();
    if (kdim == 0) return out;

    std::vector<std::vector<std::int64_t>> rel;
    auto push_coordinates = [&](const std::vector<std::int64_t>& x) {
      rel.push_back(detail::kernel_coordinates(ker, x, ring));
    };
    for (std::size_t t = 0; t < kdim; ++t) {
      std::vector<std::int64_t> v(kdim, 0);
      v[t] = ring.power(ker.exponents[t]) % ring.q;
      rel.push_back(std::move(v));
    }
    for (std::size_t c = 0; c < dim; ++c) {
      const int ac = a[c % n];
      if (ac == ring.k) continue;
      std::vector<std::int64_t> x(dim, 0);
      x[c] = ring.power(ac);
      push_coordinates(x);
    }
    if (i > 0) {
      const PPMatrix prev = coboundary(i - 1, false);
      for (std::size_t c = 0; c < prev.cols(); ++c) {
        std::vector<std::int64_t> x(dim);
        bool nonzero = false;
        for (std::size_t r = 0; r < dim; ++r) {
          x[r] = prev(r, c);
          nonzero = nonzero || x[r] != 0;
        }
        if (nonzero) push_coordinates(x);
      }
    }
    const auto coker = detail::cokernel(rel, kdim, ring);
    for (std::size_t s = 0; s < coker.exponents.size(); ++s) {
      std::vector<std::int64_t> x(dim, 0);
      for (std::size_t t = 0; t < kdim; ++t) {
        const std::int64_t c = coker.generators[s][t];
        if (c == 0) continue;
        for (std::size_t r = 0; r < dim; ++r) x[r] = ring.reduce(x[r] + c * ker.generators[t][r]);
      }
      for (std::size_t r = 0; r < dim; ++r) x[r] %= ring.power(a[r % n]);
      out.emplace_back(coker.exponents[s], std::move(x));
    }
    return out;
  }
};

std::size_t bar_cells(const FiniteGroup& g, std::size_t degree, std::size_t n) {
  const std::size_t m = static_cast<std::size_t>(g.order() - 1);
  return ipow(m, degree + 1) * n * ipow(m, degree) * n;
}

void check_budget(std::size_t degree, const Module& m) {
  const FiniteGroup& g = group_of(m);
  if (g.order() > kMaxBarGroupOrder)
    throw Error(ErrorCode::BudgetExceeded, "bar complex: group of order " + std::to_string(g.order()) + " > 12");
  if (degree > kMaxBarDegree)
    throw Error(ErrorCode::BudgetExceeded, "bar complex: degree " + std::to_string(degree) + " > 5");
  if (!m.is_finite()) throw Error(ErrorCode::InvalidArgument, "bar complex: the module must be finite");
  const Int e = m.exponent();
  if (e >= Int(1) << 30) throw Error(ErrorCode::BudgetExceeded, "bar complex: exponent too large");
  for (long p : linalg::prime_factors(e)) {
    std::size_t n = 0;
    for (const auto& d : m.moduli())
      if (d % p == 0) ++n;
    const std::size_t cells = bar_cells(g, degree, n);
    if (cells > kMaxBarCells)
      throw Error(ErrorCode::BudgetExceeded,
                  "bar complex: " + std::to_string(cells) + " matrix entries in degree " + std::to_string(degree));
  }
}

CochainTable full_table(const FiniteGroup& g, std::size_t degree, const Module& m, const PartComplex& part,
                        const std::vector<std::int64_t>& x, const IntMatrix& inclusion) {
  const std::size_t order = static_cast<std::size_t>(g.order());
  const std::size_t total = ipow(order, degree);
  CochainTable table(total, IntVec(m.scalar_rank(), Int(0)));
  for (std::size_t t = 0; t < total; ++t) {
    std::vector<int> h(degree);
    std::size_t c = t;
    for (std::size_t s = degree; s-- > 0;) {
      h[s] = static_cast<int>(c % order);
      c /= order;
    }
    const long idx = part.encode(h);
    if (idx < 0) continue;
    IntVec v(part.n);
    for (std::size_t r = 0; r < part.n; ++r) v[r] = static_cast<long>(x[static_cast<std::size_t>(idx) * part.n + r]);
    table[t] = m.reduce(inclusion.apply(v));
  }
  return table;
}

}  // namespace

std::size_t tuple_count(int group_order, std::size_t degree) { return ipow(static_cast<std::size_t>(group_order), degree); }

bool bar_within_budget(std::size_t degree, const Module& m) {
  try {
    check_budget(degree, m);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BudgetExceeded) return false;
    throw;
  }
}

CohomologyGroup group_cohomology(std::size_t degree, const FiniteGroup& group, const Module& m) {
  if (!(group_of(m) == group)) throw Error(ErrorCode::BaseMismatch, "the module is over a different group");
  return group_cohomology(degree, m);
}

CohomologyGroup group_cohomology(std::size_t degree, const Module& m) {
  check_budget(degree, m);
  const FiniteGroup& g = group_of(m);
  CohomologyGroup out;
  out.degree = degree;
  out.coefficients = m;

  struct Summand {
    long p;
    int e;
    CochainTable table;
  };
  std::map<long, std::vector<Summand>> by_prime;
  for (const auto& part : primary_parts(m)) {
    const PartComplex cx(g, part.p, part.module);
    for (auto& [e, x] : cx.cohomology(degree))
      by_prime[part.p].push_back({part.p, e, full_table(g, degree, m, cx, x, part.inclusion)});
  }
  // cyclic summands of coprime orders combine into one summand
  std::size_t longest = 0;
  for (auto& [p, list] : by_prime) {
    std::stable_sort(list.begin(), list.end(), [](const Summand& x, const Summand& y) { return x.e > y.e; });
    longest = std::max(longest, list.size());
  }
  const std::size_t total = tuple_count(g.order(), degree);
  for (std::size_t z = 0; z < longest; ++z) {
    Int inv = 1;
    CochainTable table(total, IntVec(m.scalar_rank(), Int(0)));
    for (const auto& [p, list] : by_prime) {
      if (z >= list.size()) continue;
      for (int s = 0; s < list[z].e; ++s) inv *= p;
      for (std::size_t t = 0; t < total; ++t)
        for (std::size_t r = 0; r < m.scalar_rank(); ++r) table[t][r] += list[z].table[t][r];
    }
    for (auto& v : table) v = m.reduce(v);
    out.invariants.push_back(inv);
    out.representatives.push_back(std::move(table));
  }
  std::reverse(out.invariants.begin(), out.invariants.end());
  std::reverse(out.representatives.begin(), out.representatives.end());
  return out;
}

CochainTable bar_coboundary(const Module& m, std::size_t degree, const CochainTable& f) {
  const FiniteGroup& g = group_of(m);
  const std::size_t order = static_cast<std::size_t>(g.order());
  if (f.size() != tuple_count(g.order(), degree)) throw Error(ErrorCode::DimMismatch, "cochain table has the wrong size");
  const std::size_t total = tuple_count(g.order(), degree + 1);
  CochainTable out(total);
  auto code = [&](const std::vector<int>& h) {
    std::size_t t = 0;
    for (int x : h) t = t * order + static_cast<std::size_t>(x);
    return t;
  };
  for (std::size_t t = 0; t < total; ++t) {
    std::vector<int> h(degree + 1);
    std::size_t c = t;
    for (std::size_t s = degree + 1; s-- > 0;) {
      h[s] = static_cast<int>(c % order);
      c /= order;
    }
    IntVec v = m.act(static_cast<unsigned>(h[0]), f[code(std::vector<int>(h.begin() + 1, h.end()))]);
    for (std::size_t j = 1; j <= degree; ++j) {
      std::vector<int> merged(h.begin(), h.end());
      merged[j - 1] = g.mul(h[j - 1], h[j]);
      merged.erase(merged.begin() + static_cast<long>(j));
      const IntVec& w = f[code(merged)];
      for (std::size_t r = 0; r < v.size(); ++r) v[r] += (j % 2 ? -1 : 1) * w[r];
    }
    const IntVec& last = f[code(std::vector<int>(h.begin(), h.end() - 1))];
    for (std::size_t r = 0; r < v.size(); ++r) v[r] += ((degree + 1) % 2 ? -1 : 1) * last[r];
    out[t] = m.reduce(std::move(v));
  }
  return out;
}

bool is_bar_cocycle(const Module& m, std::size_t degree, const CochainTable& f) {
  for (const auto& v : bar_coboundary(m, degree, f))
    if (!m.is_zero_element(v)) return false;
  return true;
}

Module trivial_integers(const modcat::RingPtr& ring) {
  std::vector<IntMatrix> action(ring->rank(), IntMatrix::identity(1));
  return Module::from_scalar_presentation(ring, IntMatrix(1, 0), action, false);
}

modcat::ExtGroup cohomology_via_resolution(std::size_t degree, const Module& m) {
  group_of(m);
  return modcat::ext_group(degree, trivial_integers(m.ring()), m);
}

CohomologyOrder cohomology_order(std::size_t degree, const Module& m) {
  if (m.is_zero()) return {Int(1), "bar"};
  if (bar_within_budget(degree, m)) return {group_cohomology(degree, m).order(), "bar"};
  return {cohomology_via_resolution(degree, m).order(), "resolution"};
}

}  // namespace hdlab::gammacoh
