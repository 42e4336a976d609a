#include <map>
#include <mutex>

#include "hdlab/error.hpp"
#include "internal.hpp"

namespace hdlab::modcat {

using linalg::mod_floor;

namespace {

IntVec apply_free_action(const BaseRing& ring, unsigned a, const IntVec& v) {
  const unsigned r = ring.rank();
  const IntMatrix& reg = ring.left_regular(a);
  IntVec out(v.size());
  for (std::size_t s = 0; s < v.size() / r; ++s)
    for (unsigned j = 0; j < r; ++j) {
      const Int& c = v[s * r + j];
      if (sgn(c) == 0) continue;
      for (unsigned i = 0; i < r; ++i)
        if (sgn(reg(i, j)) != 0) out[s * r + i] += reg(i, j) * c;
    }
  long p = ring.characteristic();
  if (p != 0)
    for (auto& c : out) c = mod_floor(c, p);
  return out;
}

Lattice char_lattice(const BaseRing& ring, std::size_t dim) {
  Lattice lat(dim);
  if (ring.characteristic() == 0) return lat;
  for (std::size_t i = 0; i < dim; ++i) {
    IntVec v(dim);
    v[i] = ring.characteristic();
    lat.add(v);
  }
  return lat;
}

// R-generators of an R-stable lattice k (which contains p Z^dim in char p),
// chosen greedily from its Hermite basis.
std::vector<IntVec> greedy_generators(const BaseRing& ring, const Lattice& k) {
  Lattice span = char_lattice(ring, k.dim());
  std::vector<IntVec> gens;
  for (const auto& v : k.basis()) {
    if (span.contains(v)) continue;
    IntVec w = v;
    if (ring.characteristic() != 0)
      for (auto& c : w) c = mod_floor(c, ring.characteristic());
    for (unsigned a = 0; a < ring.rank(); ++a) span.add(apply_free_action(ring, a, w));
    gens.push_back(std::move(w));
  }
  return gens;
}

IntMatrix image_matrix(const BaseRing& ring, const std::vector<IntVec>& gens, std::size_t rows) {
  const unsigned r = ring.rank();
  IntMatrix m(rows, gens.size() * r);
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (unsigned b = 0; b < r; ++b) {
      IntVec col = apply_free_action(ring, b, gens[j]);
      for (std::size_t t = 0; t < rows; ++t) m(t, j * r + b) = col[t];
    }
  return m;
}

void extend(Resolution& res, std::size_t length) {
  const Module& x = res.module;
  const BaseRing& ring = *x.ring();
  const unsigned r = ring.rank();
  if (res.ranks.empty()) {
    // module generators: greedy over the scalar unit vectors
    Lattice span = relation_lattice(x);
    std::vector<IntVec> gens;
    for (std::size_t i = 0; i < x.scalar_rank(); ++i) {
      IntVec e(x.scalar_rank());
      e[i] = 1;
      if (span.contains(e)) continue;
      for (unsigned a = 0; a < r; ++a) span.add(x.act(a, e));
      gens.push_back(std::move(e));
    }
    res.ranks.push_back(gens.size());
    res.images.push_back(std::move(gens));
  }
  while (res.length() < length) {
    const std::size_t i = res.ranks.size();  // building F_i
    IntMatrix d = res.differential(i - 1);
    IntVec moduli;
    if (i == 1) {
      moduli = x.moduli();
    } else {
      moduli.assign(d.rows(), Int(ring.characteristic()));
    }
    Lattice k = char_lattice(ring, d.cols());
    k.add_all(linalg::kernel_mod(d, moduli));
    std::vector<IntVec> gens = greedy_generators(ring, k);
    res.ranks.push_back(gens.size());
    res.images.push_back(std::move(gens));
  }
}

}  // namespace

IntMatrix Resolution::differential(std::size_t i) const {
  const BaseRing& ring = *module.ring();
  const std::size_t rows = i == 0 ? module.scalar_rank() : ranks[i - 1] * ring.rank();
  if (i == 0) {
    const unsigned r = ring.rank();
    IntMatrix m(rows, ranks[0] * r);
    for (std::size_t j = 0; j < ranks[0]; ++j)
      for (unsigned b = 0; b < r; ++b) {
        IntVec col = module.act(b, images[0][j]);
        for (std::size_t t = 0; t < rows; ++t) m(t, j * r + b) = col[t];
      }
    return m;
  }
  return image_matrix(ring, images[i], rows);
}

std::shared_ptr<const Resolution> free_resolution(const Module& x, std::size_t length) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const Resolution>> cache;
  std::shared_ptr<const Resolution> found;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(x.key()); it != cache.end()) found = it->second;
  }
  if (found && found->length() >= length) return found;
  auto res = found ? std::make_shared<Resolution>(*found) : std::make_shared<Resolution>();
  res->module = x;
  extend(*res, length);
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[x.key()];
  if (!slot || slot->length() < res->length()) slot = res;
  return res;
}

bool resolution_is_exact(const Resolution& res) {
  const Module& x = res.module;
  const BaseRing& ring = *x.ring();
  // F_0 -> X is onto
  {
    Lattice im = relation_lattice(x);
    IntMatrix d0 = res.differential(0);
    for (std::size_t j = 0; j < d0.cols(); ++j) im.add(d0.column(j));
    if (im.rank() != im.dim() || im.index() != 1) return false;
  }
  for (std::size_t i = 1; i < res.ranks.size(); ++i) {
    IntMatrix d = res.differential(i);
    IntMatrix prev = res.differential(i - 1);
    IntVec moduli = i == 1 ? x.moduli() : IntVec(prev.rows(), Int(ring.characteristic()));
    Lattice ker = char_lattice(ring, prev.cols());
    ker.add_all(linalg::kernel_mod(prev, moduli));
    Lattice im = char_lattice(ring, d.rows());
    for (std::size_t j = 0; j < d.cols(); ++j) im.add(d.column(j));
    if (!(ker == im)) return false;
  }
  return true;
}

IntMatrix coboundary(const Resolution& res, std::size_t i, const Module& y) {
  const BaseRing& ring = *y.ring();
  const unsigned r = ring.rank();
  const std::size_t ny = y.scalar_rank();
  const std::size_t gi = res.ranks[i], gn = res.ranks[i + 1];
  IntMatrix delta(gn * ny, gi * ny);
  for (std::size_t j = 0; j < gn; ++j) {
    const IntVec& v = res.images[i + 1][j];
    for (std::size_t s = 0; s < gi; ++s)
      for (unsigned b = 0; b < r; ++b) {
        const Int& c = v[s * r + b];
        if (sgn(c) == 0) continue;
        const IntMatrix& B = y.action(b);
        for (std::size_t p = 0; p < ny; ++p)
          for (std::size_t q = 0; q < ny; ++q)
            if (sgn(B(p, q)) != 0) delta(j * ny + p, s * ny + q) += c * B(p, q);
      }
  }
  IntVec moduli;
  for (std::size_t j = 0; j < gn; ++j) moduli.insert(moduli.end(), y.moduli().begin(), y.moduli().end());
  delta.reduce_rows(moduli);
  return delta;
}

namespace {

IntVec repeated(const IntVec& m, std::size_t times) {
  IntVec out;
  for (std::size_t t = 0; t < times; ++t) out.insert(out.end(), m.begin(), m.end());
  return out;
}

}  // namespace

ExtGroup ext_group(std::size_t degree, const Module& x, const Module& y) {
  if (!x.ring()->same_as(*y.ring())) throw Error(ErrorCode::BaseMismatch, "Ext between modules over different rings");
  return ext_group(degree, free_resolution(x, degree + 1), y);
}

ExtGroup ext_group(std::size_t degree, const std::shared_ptr<const Resolution>& res, const Module& y) {
  if (res->length() < degree + 1) throw Error(ErrorCode::InvalidArgument, "resolution too short for this degree");
  const std::size_t ny = y.scalar_rank();
  const std::size_t dim = res->ranks[degree] * ny;
  IntVec moduli = repeated(y.moduli(), res->ranks[degree]);
  Lattice cocycles(dim);
  std::vector<IntVec> small;
  for (std::size_t t = 0; t < dim; ++t) {
    if (sgn(moduli[t]) == 0) continue;
    IntVec v(dim);
    v[t] = moduli[t];
    small.push_back(v);
    cocycles.add(v);
  }
  IntMatrix delta = coboundary(*res, degree, y);
  if (delta.rows() == 0) {
    for (std::size_t t = 0; t < dim; ++t) {
      IntVec v(dim);
      v[t] = 1;
      cocycles.add(v);
    }
  } else {
    cocycles.add_all(linalg::kernel_mod(delta, repeated(y.moduli(), res->ranks[degree + 1])));
  }
  if (degree > 0) {
    IntMatrix prev = coboundary(*res, degree - 1, y);
    for (std::size_t j = 0; j < prev.cols(); ++j) small.push_back(prev.column(j));
  }
  ExtGroup ext;
  ext.degree = degree;
  ext.source = res->module;
  ext.target = y;
  ext.resolution = res;
  ext.group = linalg::Subquotient(std::move(cocycles), small, moduli);
  ext.invariants = ext.group.invariants();
  ext.representatives = ext.group.generators();
  return ext;
}

IntVec ExtGroup::coordinates(const IntVec& cocycle) const { return group.coordinates(cocycle); }

bool is_cocycle(const Resolution& res, std::size_t i, const Module& y, const IntVec& cochain) {
  IntMatrix delta = coboundary(res, i, y);
  IntVec image = delta.apply(cochain);
  IntVec moduli = repeated(y.moduli(), res.ranks[i + 1]);
  for (std::size_t t = 0; t < image.size(); ++t)
    if (mod_floor(image[t], moduli[t]) != 0) return false;
  return true;
}

bool is_coboundary(const Resolution& res, std::size_t i, const Module& y, const IntVec& cochain) {
  IntVec moduli = repeated(y.moduli(), res.ranks[i]);
  if (i == 0) {
    for (std::size_t t = 0; t < cochain.size(); ++t)
      if (mod_floor(cochain[t], moduli[t]) != 0) return false;
    return true;
  }
  IntMatrix prev = coboundary(res, i - 1, y);
  return linalg::solve_modular(prev, cochain, moduli).has_value();
}

IntMatrix ext_pushforward(const ExtGroup& src, const ExtGroup& dst, const Morphism& g) {
  if (src.resolution != dst.resolution || src.degree != dst.degree)
    throw Error(ErrorCode::InvalidArgument, "pushforward needs Ext groups over the same resolution and degree");
  const std::size_t gi = src.resolution->ranks[src.degree];
  const std::size_t ny = src.target.scalar_rank(), nz = dst.target.scalar_rank();
  IntMatrix out(dst.invariants.size(), src.representatives.size());
  for (std::size_t k = 0; k < src.representatives.size(); ++k) {
    const IntVec& c = src.representatives[k];
    IntVec image(gi * nz);
    for (std::size_t s = 0; s < gi; ++s) {
      IntVec block(c.begin() + static_cast<std::ptrdiff_t>(s * ny), c.begin() + static_cast<std::ptrdiff_t>((s + 1) * ny));
      IntVec gb = g.apply(block);
      for (std::size_t t = 0; t < nz; ++t) image[s * nz + t] = gb[t];
    }
    IntVec coords = dst.coordinates(image);
    for (std::size_t t = 0; t < coords.size(); ++t) out(t, k) = coords[t];
  }
  return out;
}

}  // namespace hdlab::modcat
