#include <set>

#include "hdlab/error.hpp"
#include "internal.hpp"

namespace hdlab::modcat {

using linalg::mod_floor;

Lattice relation_lattice(const Module& x) {
  const std::size_t n = x.scalar_rank();
  Lattice lat(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(x.moduli()[i]) == 0) continue;
    IntVec v(n);
    v[i] = x.moduli()[i];
    lat.add(v);
  }
  return lat;
}

Lattice submodule_lattice(const Module& x, const std::vector<IntVec>& generators) {
  Lattice lat = relation_lattice(x);
  std::vector<IntVec> queue;
  for (const auto& g : generators) {
    if (g.size() != x.scalar_rank()) throw Error(ErrorCode::DimMismatch, "element has the wrong length");
    if (lat.add(g)) queue.push_back(g);
  }
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (unsigned a = 0; a < x.ring()->rank(); ++a) {
      IntVec w = x.act(a, queue[i]);
      if (lat.add(w)) queue.push_back(std::move(w));
    }
  return lat;
}

Lattice intersect(const Lattice& a, const Lattice& b) {
  const std::size_t n = a.dim();
  const std::size_t ka = a.rank(), kb = b.rank();
  IntMatrix m(n, ka + kb);
  for (std::size_t i = 0; i < ka; ++i)
    for (std::size_t t = 0; t < n; ++t) m(t, i) = a.basis()[i][t];
  for (std::size_t j = 0; j < kb; ++j)
    for (std::size_t t = 0; t < n; ++t) m(t, ka + j) = -b.basis()[j][t];
  IntMatrix k = linalg::kernel_lattice(m);
  Lattice out(n);
  for (std::size_t c = 0; c < k.cols(); ++c) {
    IntVec v(n);
    for (std::size_t i = 0; i < ka; ++i) {
      if (sgn(k(i, c)) == 0) continue;
      for (std::size_t t = 0; t < n; ++t) v[t] += k(i, c) * a.basis()[i][t];
    }
    out.add(v);
  }
  return out;
}

Subobject subobject(const Module& x, const Lattice& sub) {
  const std::size_t n = x.scalar_rank();
  const std::size_t k = sub.rank();
  const auto& basis = sub.basis();
  std::vector<IntVec> rels;
  const Lattice relations = relation_lattice(x);
  for (const auto& r : relations.basis()) {
    auto c = sub.coordinates(r);
    if (!c) throw Error(ErrorCode::InvalidArgument, "subobject lattice does not contain the relations");
    rels.push_back(std::move(*c));
  }
  std::vector<IntMatrix> action;
  for (unsigned a = 0; a < x.ring()->rank(); ++a) {
    std::vector<IntVec> cols;
    for (const auto& b : basis) {
      auto c = sub.coordinates(x.action(a).apply(b));
      if (!c) throw Error(ErrorCode::InvalidArgument, "subobject lattice is not stable under the ring");
      cols.push_back(std::move(*c));
    }
    action.push_back(IntMatrix::from_columns(k, cols));
  }
  Canonical c = canonicalize(IntMatrix::from_columns(k, rels), action);
  IntMatrix b(n, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t t = 0; t < n; ++t) b(t, j) = basis[j][t];
  Module s = ModuleAccess::make(x.ring(), std::move(c.moduli), std::move(c.action));
  Morphism incl(s, x, b * c.to_old, false);
  return {s, incl};
}

Quotient quotient(const Module& x, const Lattice& sub) {
  const std::size_t n = x.scalar_rank();
  std::vector<IntVec> cols = sub.basis();
  const Lattice relations = relation_lattice(x);
  for (const auto& r : relations.basis()) cols.push_back(r);
  Canonical c = canonicalize(IntMatrix::from_columns(n, cols), x.actions());
  Module q = ModuleAccess::make(x.ring(), std::move(c.moduli), std::move(c.action));
  Morphism proj(x, q, c.to_new, false);
  return {q, proj};
}

Int subobject_order(const Module& x, const Lattice& sub) {
  if (!x.is_finite()) throw Error(ErrorCode::InvalidArgument, "subobject order needs a finite module");
  Int idx = sub.index();
  if (sgn(idx) == 0) throw Error(ErrorCode::InvalidArgument, "subobject lattice does not contain the relations");
  return x.order() / idx;
}

Lattice kernel_lattice_of(const Morphism& f) {
  Lattice lat = relation_lattice(f.source());
  lat.add_all(linalg::kernel_mod(f.matrix(), f.target().moduli()));
  return lat;
}

Lattice image_lattice_of(const Morphism& f) {
  Lattice lat = relation_lattice(f.target());
  for (std::size_t j = 0; j < f.matrix().cols(); ++j) lat.add(f.matrix().column(j));
  return lat;
}

Subobject kernel(const Morphism& f) { return subobject(f.source(), kernel_lattice_of(f)); }
Quotient cokernel(const Morphism& f) { return quotient(f.target(), image_lattice_of(f)); }
Subobject image(const Morphism& f) { return subobject(f.target(), image_lattice_of(f)); }

bool is_mono(const Morphism& f) { return kernel_lattice_of(f) == relation_lattice(f.source()); }

bool is_epi(const Morphism& f) {
  Lattice im = image_lattice_of(f);
  return im.rank() == im.dim() && im.index() == 1;
}

DirectSum direct_sum(const Module& x, const Module& y) {
  if (!x.ring()->same_as(*y.ring())) throw Error(ErrorCode::BaseMismatch, "direct sum of modules over different rings");
  const std::size_t nx = x.scalar_rank(), ny = y.scalar_rank(), n = nx + ny;
  IntVec moduli = x.moduli();
  moduli.insert(moduli.end(), y.moduli().begin(), y.moduli().end());
  std::vector<IntMatrix> action;
  for (unsigned a = 0; a < x.ring()->rank(); ++a) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j < nx; ++j) m(i, j) = x.action(a)(i, j);
    for (std::size_t i = 0; i < ny; ++i)
      for (std::size_t j = 0; j < ny; ++j) m(nx + i, nx + j) = y.action(a)(i, j);
    action.push_back(std::move(m));
  }
  Canonical c = canonicalize(IntMatrix::diagonal(moduli), action);
  Module s = ModuleAccess::make(x.ring(), c.moduli, c.action);
  IntMatrix i1(n, nx), i2(n, ny), p1(nx, n), p2(ny, n);
  for (std::size_t i = 0; i < nx; ++i) i1(i, i) = p1(i, i) = 1;
  for (std::size_t i = 0; i < ny; ++i) i2(nx + i, i) = p2(i, nx + i) = 1;
  return {s, Morphism(x, s, c.to_new * i1, false), Morphism(y, s, c.to_new * i2, false), Morphism(s, x, p1 * c.to_old, false),
          Morphism(s, y, p2 * c.to_old, false)};
}

ElementCodec::ElementCodec(const Module& x) : module_(x) {
  if (!x.is_finite()) throw Error(ErrorCode::InvalidArgument, "element enumeration needs a finite module");
  if (x.order() > 20000000) throw Error(ErrorCode::SearchExhausted, "module too large to enumerate elements");
  for (const auto& d : x.moduli()) radix_.push_back(d.get_si());
  size_ = x.order().get_ui();
}

std::size_t ElementCodec::encode(const IntVec& v) const {
  std::size_t code = 0;
  for (std::size_t i = radix_.size(); i-- > 0;) code = code * radix_[i] + mod_floor(v[i], radix_[i]).get_ui();
  return code;
}

IntVec ElementCodec::decode(std::size_t code) const {
  IntVec v(radix_.size());
  for (std::size_t i = 0; i < radix_.size(); ++i) {
    v[i] = static_cast<unsigned long>(code % radix_[i]);
    code /= radix_[i];
  }
  return v;
}

bool enumeration_allowed(const Module& x) {
  if (!x.is_finite()) return false;
  if (x.order() <= 512) return true;
  bool elementary = x.ring()->characteristic() != 0;
  if (!elementary && linalg::is_prime(x.moduli().front().get_si())) {
    elementary = true;
    for (const auto& d : x.moduli()) elementary = elementary && d == x.moduli().front();
  }
  return elementary && x.scalar_rank() <= 6 && x.order() <= 15625;
}

namespace {

// Codes of a finite module with digit-wise addition.
struct FastGroup {
  std::vector<long> radix;
  std::size_t size = 1;

  explicit FastGroup(const Module& x) {
    for (const auto& d : x.moduli()) {
      radix.push_back(d.get_si());
      size *= static_cast<std::size_t>(d.get_si());
    }
  }

  std::size_t add(std::size_t a, std::size_t b) const {
    std::size_t out = 0, place = 1;
    for (long r : radix) {
      long s = static_cast<long>(a % r) + static_cast<long>(b % r);
      if (s >= r) s -= r;
      out += static_cast<std::size_t>(s) * place;
      place *= static_cast<std::size_t>(r);
      a /= r;
      b /= r;
    }
    return out;
  }
};

using Bits = std::vector<std::uint64_t>;

bool test(const Bits& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1u; }
void set(Bits& b, std::size_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

}  // namespace

std::vector<Lattice> enumerate_submodules(const Module& x) {
  if (!enumeration_allowed(x)) throw Error(ErrorCode::SearchExhausted, "module exceeds the exhaustive subobject search cap");
  ElementCodec codec(x);
  FastGroup grp(x);
  const std::size_t n = grp.size;
  const std::size_t words = (n + 63) / 64;

  // Z-span closure of a set starting from a subgroup.
  auto close = [&](Bits start, const std::vector<std::size_t>& gens) {
    std::vector<std::size_t> frontier;
    for (std::size_t i = 0; i < n; ++i)
      if (test(start, i)) frontier.push_back(i);
    for (std::size_t k = 0; k < frontier.size(); ++k)
      for (std::size_t g : gens) {
        std::size_t s = grp.add(frontier[k], g);
        if (!test(start, s)) {
          set(start, s);
          frontier.push_back(s);
        }
      }
    return start;
  };

  // distinct cyclic submodules R x
  std::vector<std::vector<std::size_t>> cyclic_gens;
  std::vector<Bits> cyclic;
  std::set<Bits> seen_cyclic;
  Bits zero(words, 0);
  set(zero, 0);
  for (std::size_t c = 1; c < n; ++c) {
    IntVec v = codec.decode(c);
    std::vector<std::size_t> gens;
    for (unsigned a = 0; a < x.ring()->rank(); ++a) gens.push_back(codec.encode(x.act(a, v)));
    gens.push_back(c);
    Bits b = close(zero, gens);
    if (seen_cyclic.insert(b).second) {
      cyclic.push_back(std::move(b));
      cyclic_gens.push_back(std::move(gens));
    }
  }

  std::vector<Bits> subs{zero};
  std::vector<std::vector<std::size_t>> sub_gens{{}};
  std::set<Bits> seen{zero};
  for (std::size_t i = 0; i < subs.size(); ++i) {
    for (std::size_t c = 0; c < cyclic.size(); ++c) {
      bool inside = true;
      for (std::size_t w = 0; w < words && inside; ++w) inside = (cyclic[c][w] & ~subs[i][w]) == 0;
      if (inside) continue;
      Bits t = close(subs[i], cyclic_gens[c]);
      if (seen.insert(t).second) {
        if (subs.size() >= kSubmoduleCap) throw Error(ErrorCode::SearchExhausted, "submodule count cap reached");
        auto gens = sub_gens[i];
        gens.insert(gens.end(), cyclic_gens[c].begin(), cyclic_gens[c].end());
        subs.push_back(std::move(t));
        sub_gens.push_back(std::move(gens));
      }
    }
  }

  std::vector<Lattice> out;
  out.reserve(subs.size());
  for (const auto& gens : sub_gens) {
    Lattice lat = relation_lattice(x);
    for (std::size_t g : gens) lat.add(codec.decode(g));
    out.push_back(std::move(lat));
  }
  return out;
}

}  // namespace hdlab::modcat
