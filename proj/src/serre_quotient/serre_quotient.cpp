#include "hdlab/serre_quotient.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <sstream>

#include "hdlab/error.hpp"

namespace hdlab::serre {

using linalg::mod_floor;
using modcat::BaseRing;
using modcat::Quotient;
using modcat::RingKind;
using modcat::Subobject;

namespace {

Lattice full_lattice(std::size_t n) {
  Lattice lat(n);
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n);
    e[i] = 1;
    lat.add(e);
  }
  return lat;
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  Lattice out = a;
  out.add_all(b.basis());
  return out;
}

bool is_everything(const Lattice& lat) { return lat.rank() == lat.dim() && lat.index() == 1; }

// Columns y_j of Y with projection(y_j) = e_j.
IntMatrix section(const Quotient& q) {
  const std::size_t k = q.object.scalar_rank();
  const std::size_t n = q.projection.source().scalar_rank();
  IntMatrix s(n, k);
  for (std::size_t j = 0; j < k; ++j) {
    IntVec e(k);
    e[j] = 1;
    auto y = linalg::solve_modular(q.projection.matrix(), e, q.object.moduli());
    if (!y) throw std::logic_error("quotient projection is not onto");
    s.set_column(j, *y);
  }
  return s;
}

// Image of a lattice of the source under f, as a lattice of the target.
Lattice image_of(const Morphism& f, const Lattice& sub) {
  Lattice out = modcat::relation_lattice(f.target());
  for (const auto& v : sub.basis()) out.add(f.apply(v));
  return out;
}

// Preimage under f of a lattice of the target.
Lattice preimage_of(const Morphism& f, const Lattice& sub) {
  Quotient q = modcat::quotient(f.target(), sub);
  return modcat::kernel_lattice_of(modcat::compose(q.projection, f));
}

std::optional<std::set<long>> torsion_primes(const SerrePredicate& b, const Module& x) {
  if (b.kind() == PredicateKind::STorsion) return b.primes();
  if (b.kind() == PredicateKind::Span && x.ring()->kind() == RingKind::Integers) return b.primes();
  return std::nullopt;
}

Int s_part_of_exponent(const Module& x, const std::set<long>& primes) {
  if (x.is_zero()) return 1;
  return linalg::split_by_primes(x.exponent(), primes).first;
}

std::vector<std::size_t> shuffled_order(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  return order;
}

// Stacked rows e_v A_b for the vertices v outside the span, all ring basis b.
IntMatrix off_support_rows(const Module& x, const std::set<int>& vertices) {
  const std::size_t n = x.scalar_rank();
  std::vector<IntVec> rows;
  for (int v : {1, 2}) {
    if (vertices.count(v)) continue;
    const IntMatrix& ev = x.action(static_cast<unsigned>(v - 1));
    for (unsigned b = 0; b < x.ring()->rank(); ++b) {
      IntMatrix m = ev * x.action(b);
      for (std::size_t i = 0; i < n; ++i) rows.push_back(m.row(i));
    }
  }
  return IntMatrix::from_columns(n, rows).transpose();
}

TorsionPairResult pair_from(const Module& x, const Lattice& z) {
  Subobject s = modcat::subobject(x, z);
  Quotient q = modcat::quotient(x, z);
  return {s.object, q.object, s.inclusion, q.projection, z};
}

}  // namespace

SerrePredicate::SerrePredicate() = default;

SerrePredicate SerrePredicate::zero() { return SerrePredicate(); }

SerrePredicate SerrePredicate::all() {
  SerrePredicate p;
  p.kind_ = PredicateKind::All;
  p.name_ = "all";
  return p;
}

SerrePredicate SerrePredicate::s_torsion(std::set<long> primes) {
  for (long q : primes)
    if (!linalg::is_prime(q)) throw Error(ErrorCode::InvalidArgument, "s_torsion needs primes, got " + std::to_string(q));
  SerrePredicate p;
  p.kind_ = PredicateKind::STorsion;
  std::ostringstream name;
  name << "s_torsion:{";
  bool first = true;
  for (long q : primes) {
    name << (first ? "" : ",") << q;
    first = false;
  }
  name << "}";
  p.name_ = name.str();
  p.primes_ = std::move(primes);
  return p;
}

SerrePredicate SerrePredicate::etale_like() {
  SerrePredicate p;
  p.kind_ = PredicateKind::EtaleLike;
  p.name_ = "etale_like";
  return p;
}

SerrePredicate SerrePredicate::span(std::vector<Module> objects) {
  SerrePredicate p;
  p.kind_ = PredicateKind::Span;
  p.name_ = "span";
  for (std::size_t i = 1; i < objects.size(); ++i)
    if (!objects[i].ring()->same_as(*objects[0].ring()))
      throw Error(ErrorCode::BaseMismatch, "span of objects over different rings");
  for (const auto& x : objects) {
    if (!x.is_finite()) throw Error(ErrorCode::InvalidArgument, "span needs finite objects");
    if (x.is_zero()) continue;
    for (long q : linalg::prime_factors(x.order())) p.primes_.insert(q);
    if (x.ring()->kind() == RingKind::PathAlgebraA2) {
      auto [v1, v2] = x.vertex_dims();
      if (v1 > 0) p.vertices_.insert(1);
      if (v2 > 0) p.vertices_.insert(2);
    }
    if (x.ring()->kind() == RingKind::GroupRing) {
      for (auto& s : composition_factors(x)) {
        bool known = false;
        for (const auto& t : p.simples_) known = known || modcat::isomorphic(s, t);
        if (!known) p.simples_.push_back(std::move(s));
      }
    }
  }
  p.generators_ = std::move(objects);
  return p;
}

SerrePredicate SerrePredicate::custom(std::string name, std::function<bool(const Module&)> test) {
  SerrePredicate p;
  p.kind_ = PredicateKind::Custom;
  p.name_ = std::move(name);
  p.test_ = std::move(test);
  return p;
}

bool SerrePredicate::contains(const Module& x) const {
  switch (kind_) {
    case PredicateKind::Zero: return x.is_zero();
    case PredicateKind::All: return true;
    case PredicateKind::EtaleLike: return x.is_finite();
    case PredicateKind::STorsion: {
      if (!x.is_finite()) return false;
      if (x.is_zero()) return true;
      for (long q : linalg::prime_factors(x.order()))
        if (!primes_.count(q)) return false;
      return true;
    }
    case PredicateKind::Span: {
      if (x.is_zero()) return true;
      if (!x.is_finite()) return false;
      if (generators_.empty()) return false;
      if (!x.ring()->same_as(*generators_[0].ring()))
        throw Error(ErrorCode::BaseMismatch, "membership test against a span over another ring");
      for (long q : linalg::prime_factors(x.order()))
        if (!primes_.count(q)) return false;
      switch (x.ring()->kind()) {
        case RingKind::Integers: return true;
        case RingKind::PathAlgebraA2: {
          auto [v1, v2] = x.vertex_dims();
          return (v1 == 0 || vertices_.count(1)) && (v2 == 0 || vertices_.count(2));
        }
        case RingKind::GroupRing: {
          for (const auto& s : composition_factors(x)) {
            bool found = false;
            for (const auto& t : simples_) found = found || modcat::isomorphic(s, t);
            if (!found) return false;
          }
          return true;
        }
      }
      return false;
    }
    case PredicateKind::Custom: return test_(x);
  }
  return false;
}

std::vector<Module> composition_factors(const Module& x0) {
  std::vector<Module> out;
  Module x = x0;
  while (!x.is_zero()) {
    auto subs = modcat::enumerate_submodules(x);
    const Lattice* best = nullptr;
    Int best_order = 0;
    for (const auto& l : subs) {
      Int o = modcat::subobject_order(x, l);
      if (o == 1) continue;
      if (!best || o < best_order) {
        best = &l;
        best_order = o;
      }
    }
    out.push_back(modcat::subobject(x, *best).object);
    x = modcat::quotient(x, *best).object;
  }
  return out;
}

std::vector<std::string> closure_violations(const SerrePredicate& b, const std::vector<Module>& objects) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < objects.size(); ++k) {
    const Module& x = objects[k];
    const bool in_x = b.contains(x);
    for (const auto& l : modcat::enumerate_submodules(x)) {
      const bool in_sub = b.contains(modcat::subobject(x, l).object);
      const bool in_quot = b.contains(modcat::quotient(x, l).object);
      std::string where = "object " + std::to_string(k) + " (" + x.describe() + ")";
      if (in_x && !in_sub) out.push_back(where + ": subobject leaves " + b.name());
      if (in_x && !in_quot) out.push_back(where + ": quotient leaves " + b.name());
      if (!in_x && in_sub && in_quot) out.push_back(where + ": extension leaves " + b.name());
    }
  }
  return out;
}

Lattice largest_b_sublattice_exhaustive(const Module& x, const SerrePredicate& b, std::uint64_t shuffle_seed) {
  auto subs = modcat::enumerate_submodules(x);
  Lattice sum = modcat::relation_lattice(x);
  for (std::size_t i : shuffled_order(subs.size(), shuffle_seed)) {
    if (sum.contains_all(subs[i])) continue;
    if (b.contains(modcat::subobject(x, subs[i]).object)) sum = lattice_sum(sum, subs[i]);
  }
  return sum;
}

Lattice largest_b_sublattice(const Module& x, const SerrePredicate& b) {
  const std::size_t n = x.scalar_rank();
  switch (b.kind()) {
    case PredicateKind::Zero: return modcat::relation_lattice(x);
    case PredicateKind::All: return full_lattice(n);
    case PredicateKind::EtaleLike:
      if (x.is_finite()) return full_lattice(n);
      break;
    default: break;
  }
  if (auto primes = torsion_primes(b, x); primes && x.is_finite())
    return modcat::kernel_lattice_of(Morphism::multiplication(x, s_part_of_exponent(x, *primes)));
  if (b.kind() == PredicateKind::Span && x.ring()->kind() == RingKind::PathAlgebraA2) {
    if (b.vertices().size() == 2) return full_lattice(n);
    Lattice lat = modcat::relation_lattice(x);
    IntMatrix rows = off_support_rows(x, b.vertices());
    lat.add_all(linalg::kernel_mod(rows, IntVec(rows.rows(), Int(x.ring()->characteristic()))));
    return lat;
  }
  return largest_b_sublattice_exhaustive(x, b);
}

TorsionPairResult torsion_pair_exhaustive(const Module& x, const SerrePredicate& b, std::uint64_t shuffle_seed) {
  if (!x.is_finite()) throw Error(ErrorCode::InvalidArgument, "torsion pair needs a finite object");
  auto subs = modcat::enumerate_submodules(x);
  Lattice z = full_lattice(x.scalar_rank());
  for (std::size_t i : shuffled_order(subs.size(), shuffle_seed)) {
    if (subs[i].contains_all(z)) continue;
    if (b.contains(modcat::quotient(x, subs[i]).object)) z = modcat::intersect(z, subs[i]);
  }
  return pair_from(x, z);
}

TorsionPairResult torsion_pair(const Module& x, const SerrePredicate& b) {
  if (!x.is_finite()) throw Error(ErrorCode::InvalidArgument, "torsion pair needs a finite object");
  const std::size_t n = x.scalar_rank();
  switch (b.kind()) {
    case PredicateKind::Zero: return pair_from(x, full_lattice(n));
    case PredicateKind::All:
    case PredicateKind::EtaleLike: return pair_from(x, modcat::relation_lattice(x));
    default: break;
  }
  if (auto primes = torsion_primes(b, x)) {
    Int m = s_part_of_exponent(x, *primes);
    return pair_from(x, modcat::image_lattice_of(Morphism::multiplication(x, m)));
  }
  if (b.kind() == PredicateKind::Span && x.ring()->kind() == RingKind::PathAlgebraA2) {
    std::vector<IntVec> gens;
    for (int v : {1, 2}) {
      if (b.vertices().count(v)) continue;
      const IntMatrix& ev = x.action(static_cast<unsigned>(v - 1));
      for (std::size_t j = 0; j < n; ++j) gens.push_back(ev.column(j));
    }
    return pair_from(x, modcat::submodule_lattice(x, gens));
  }
  return torsion_pair_exhaustive(x, b);
}

bool q_is_zero(const Morphism& f, const SerrePredicate& b) { return b.contains(modcat::image(f).object); }
bool q_is_mono(const Morphism& f, const SerrePredicate& b) { return b.contains(modcat::kernel(f).object); }
bool q_is_epi(const Morphism& f, const SerrePredicate& b) { return b.contains(modcat::cokernel(f).object); }

QMorphism q_morphism(const Morphism& f) {
  Lattice w = modcat::relation_lattice(f.target());
  Quotient q = modcat::quotient(f.target(), w);
  return {f.source(), f.target(), w, q, modcat::compose(q.projection, f)};
}

QMorphism q_morphism(const Morphism& representative, const Module& target, const Lattice& witness,
                     const SerrePredicate& b) {
  if (!b.contains(modcat::subobject(target, witness).object))
    throw Error(ErrorCode::InvalidArgument, "witness subobject is not in " + b.name());
  Quotient q = modcat::quotient(target, witness);
  if (!(representative.target() == q.object))
    throw Error(ErrorCode::DimMismatch, "representative does not land in the quotient by the witness");
  return {representative.source(), target, witness, q, representative};
}

Morphism induced_projection(const Quotient& from, const Quotient& to) {
  return Morphism(from.object, to.object, to.projection.matrix() * section(from));
}

Morphism q_push(const QMorphism& f, const Lattice& bigger) {
  Quotient to = modcat::quotient(f.target, bigger);
  return modcat::compose(induced_projection(f.reduced, to), f.representative);
}

bool q_is_zero(const QMorphism& f, const SerrePredicate& b) { return q_is_zero(f.representative, b); }

bool q_equal(const QMorphism& a, const QMorphism& b, const SerrePredicate& pred) {
  if (!(a.source == b.source) || !(a.target == b.target))
    throw Error(ErrorCode::InvalidArgument, "comparing quotient morphisms with different ends");
  Lattice common = lattice_sum(a.witness, b.witness);
  return q_is_zero(q_push(a, common) - q_push(b, common), pred);
}

IntVec QHomGroup::coordinates(const QMorphism& f) const { return hom.coordinates(q_push(f, witness)); }

bool lifting_holds(const Module& x, const SerrePredicate& b) {
  TorsionPairResult tp = torsion_pair(x, b);
  return is_everything(lattice_sum(largest_b_sublattice(x, b), tp.sub_lattice));
}

QHomGroup q_hom(const Module& x, const Module& y, const SerrePredicate& b) {
  if (!x.ring()->same_as(*y.ring())) throw Error(ErrorCode::BaseMismatch, "quotient hom between different rings");
  if (!lifting_holds(x, b) || !lifting_holds(y, b))
    throw Error(ErrorCode::LiftingPropertyUnverified, "lifting property fails for " + b.name());
  QHomGroup out;
  out.source = x;
  out.target = y;
  out.witness = largest_b_sublattice(y, b);
  out.reduced = modcat::quotient(y, out.witness);
  out.hom = modcat::hom_group(x, out.reduced.object);
  out.invariants = out.hom.invariants;
  for (const auto& g : out.hom.generators) out.generators.push_back({x, y, out.witness, out.reduced, g});
  return out;
}

QExtGroup q_ext(std::size_t degree, const std::shared_ptr<const modcat::Resolution>& res, const Module& y,
                const SerrePredicate& b) {
  const Module& x = res->module;
  if (!x.ring()->same_as(*y.ring())) throw Error(ErrorCode::BaseMismatch, "quotient Ext between different rings");
  if (!lifting_holds(x, b) || !lifting_holds(y, b))
    throw Error(ErrorCode::LiftingPropertyUnverified, "lifting property fails for " + b.name());
  QExtGroup out;
  out.witness = largest_b_sublattice(y, b);
  out.reduced = modcat::quotient(y, out.witness);
  out.ext = modcat::ext_group(degree, res, out.reduced.object);
  return out;
}

QExtGroup q_ext(std::size_t degree, const Module& x, const Module& y, const SerrePredicate& b) {
  return q_ext(degree, modcat::free_resolution(x, degree + 1), y, b);
}

namespace {

struct Localized {
  IntVec invariants;
  std::vector<std::size_t> index;
  IntVec scale;
};

Localized localize(const IntVec& invariants, const std::set<long>& primes) {
  Localized out;
  for (std::size_t i = 0; i < invariants.size(); ++i) {
    if (sgn(invariants[i]) == 0) throw Error(ErrorCode::InvalidArgument, "localization needs a finite group");
    auto [s, t] = linalg::split_by_primes(invariants[i], primes);
    if (t == 1) continue;
    out.invariants.push_back(t);
    out.index.push_back(i);
    out.scale.push_back(s);
  }
  return out;
}

}  // namespace

LocalizedHom localized_hom(const Module& x, const Module& y, const std::set<long>& primes) {
  LocalizedHom out;
  out.hom = modcat::hom_group(x, y);
  Localized l = localize(out.hom.invariants, primes);
  out.invariants = l.invariants;
  out.source_index = l.index;
  out.scale = l.scale;
  for (std::size_t k = 0; k < l.index.size(); ++k) out.generators.push_back(out.hom.generators[l.index[k]].scaled(l.scale[k]));
  return out;
}

LocalizedExt localized_ext(std::size_t degree, const std::shared_ptr<const modcat::Resolution>& res, const Module& y,
                           const std::set<long>& primes) {
  LocalizedExt out;
  out.ext = modcat::ext_group(degree, res, y);
  Localized l = localize(out.ext.invariants, primes);
  out.invariants = l.invariants;
  out.source_index = l.index;
  out.scale = l.scale;
  const IntVec& m = y.moduli();
  for (std::size_t k = 0; k < l.index.size(); ++k) {
    IntVec v = out.ext.representatives[l.index[k]];
    for (std::size_t t = 0; t < v.size(); ++t) v[t] = mod_floor(v[t] * l.scale[k], m[t % m.size()]);
    out.representatives.push_back(std::move(v));
  }
  return out;
}

LocalizedExt localized_ext(std::size_t degree, const Module& x, const Module& y, const std::set<long>& primes) {
  return localized_ext(degree, modcat::free_resolution(x, degree + 1), y, primes);
}

bool is_group_isomorphism(const IntMatrix& images, const IntVec& source_invariants, const IntVec& target_invariants) {
  const std::size_t k = target_invariants.size();
  if (images.rows() != k || images.cols() != source_invariants.size())
    throw Error(ErrorCode::DimMismatch, "image matrix does not match the invariant factor lists");
  Int src = linalg::group_order(source_invariants), dst = linalg::group_order(target_invariants);
  if (src == 0 || dst == 0 || src != dst) return false;
  for (std::size_t j = 0; j < images.cols(); ++j)
    for (std::size_t i = 0; i < k; ++i)
      if (mod_floor(images(i, j) * source_invariants[j], target_invariants[i]) != 0) return false;
  Lattice span = modcat::relation_lattice(modcat::make_finab(target_invariants));
  if (span.dim() != k) return false;
  for (std::size_t j = 0; j < images.cols(); ++j) span.add(images.column(j));
  return is_everything(span);
}

IntMatrix localization_comparison(const LocalizedHom& loc, const QHomGroup& q) {
  IntMatrix out(q.invariants.size(), loc.generators.size());
  for (std::size_t j = 0; j < loc.generators.size(); ++j) {
    IntVec c = q.coordinates(q_morphism(loc.generators[j]));
    for (std::size_t i = 0; i < c.size(); ++i) out(i, j) = c[i];
  }
  return out;
}

IntMatrix localization_comparison(const LocalizedExt& loc, const QExtGroup& q) {
  IntMatrix all = modcat::ext_pushforward(loc.ext, q.ext, q.reduced.projection);
  IntMatrix out(all.rows(), loc.invariants.size());
  for (std::size_t j = 0; j < loc.invariants.size(); ++j)
    for (std::size_t i = 0; i < all.rows(); ++i)
      out(i, j) = mod_floor(all(i, loc.source_index[j]) * loc.scale[j], q.ext.invariants[i]);
  return out;
}

LiftingWitness check_lifting_property(const Morphism& epi, const SerrePredicate& b) {
  const Module& x = epi.source();
  if (!modcat::is_epi(epi)) throw Error(ErrorCode::InvalidArgument, "lifting check needs an epimorphism");
  if (!b.contains(epi.target())) throw Error(ErrorCode::InvalidArgument, "lifting check needs a target in " + b.name());
  LiftingWitness w;
  Lattice lat;
  if (auto primes = torsion_primes(b, x)) {
    w.n = s_part_of_exponent(x, *primes);
    w.method = "ker(n_X)";
    lat = modcat::kernel_lattice_of(Morphism::multiplication(x, w.n));
  } else {
    w.n = 0;
    w.method = "largest B-subobject";
    lat = largest_b_sublattice(x, b);
  }
  w.witness = modcat::subobject(x, lat);
  if (!b.contains(w.witness.object) || !modcat::is_epi(modcat::compose(epi, w.witness.inclusion)))
    throw Error(ErrorCode::NoWitness, "no subobject in " + b.name() + " maps onto the target");
  return w;
}

bool is_exact_complex(const std::vector<Module>& objects, const std::vector<Morphism>& maps) {
  if (maps.size() + 1 != objects.size()) throw Error(ErrorCode::DimMismatch, "a complex of m + 1 objects needs m maps");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    Lattice ker = i < maps.size() ? modcat::kernel_lattice_of(maps[i]) : full_lattice(objects[i].scalar_rank());
    Lattice im = i > 0 ? modcat::image_lattice_of(maps[i - 1]) : modcat::relation_lattice(objects[i]);
    if (!(ker == im)) return false;
  }
  return true;
}

LiftedComplex lift_exact_complex(const std::vector<Module>& objects, const std::vector<QMorphism>& maps,
                                 const SerrePredicate& b) {
  const std::size_t m = maps.size();
  if (objects.size() != m + 1) throw Error(ErrorCode::DimMismatch, "a complex of m + 1 objects needs m maps");
  for (std::size_t i = 0; i < m; ++i)
    if (!(maps[i].source == objects[i]) || !(maps[i].target == objects[i + 1]))
      throw Error(ErrorCode::DimMismatch, "map " + std::to_string(i) + " does not match its objects");

  // Replace each X_i by X_i / K_i with K_i in B and X_i / K_i in the left orthogonal of B.
  std::vector<Lattice> kill(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    if (!lifting_holds(objects[i], b))
      throw Error(ErrorCode::LiftingPropertyUnverified, "lifting property fails for " + b.name());
    kill[i] = largest_b_sublattice(objects[i], b);
  }
  // Represent each map on the reduced objects, enlarging the kernel of the target.
  std::vector<Quotient> reduced(m + 1);
  std::vector<Morphism> f(m);
  reduced[0] = modcat::quotient(objects[0], kill[0]);
  for (std::size_t i = 0; i < m; ++i) {
    Lattice target_kill = lattice_sum(kill[i + 1], maps[i].witness);
    Morphism r = q_push(maps[i], target_kill);
    Quotient t = modcat::quotient(objects[i + 1], target_kill);
    Lattice stray = preimage_of(t.projection, image_of(r, kill[i]));
    kill[i + 1] = lattice_sum(target_kill, stray);
    reduced[i + 1] = modcat::quotient(objects[i + 1], kill[i + 1]);
    Morphism pushed = modcat::compose(induced_projection(t, reduced[i + 1]), r);
    f[i] = Morphism(reduced[i].object, reduced[i + 1].object, pushed.matrix() * section(reduced[i]));
  }
  std::vector<Module> y(m + 1);
  std::vector<Morphism> g(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    y[i] = reduced[i].object;
    g[i] = reduced[i].projection;
  }
  for (std::size_t i = 0; i + 1 < m; ++i)
    if (!modcat::compose(f[i + 1], f[i]).is_zero())
      throw Error(ErrorCode::InputNotExactInQuotient, "consecutive maps do not compose to zero in the quotient");
  for (std::size_t i = 0; i <= m; ++i) {
    Lattice ker = i < m ? modcat::kernel_lattice_of(f[i]) : full_lattice(y[i].scalar_rank());
    Lattice im = i > 0 ? modcat::image_lattice_of(f[i - 1]) : modcat::relation_lattice(y[i]);
    Subobject k = modcat::subobject(y[i], ker);
    Module homology = modcat::quotient(k.object, preimage_of(k.inclusion, im)).object;
    if (!b.contains(homology))
      throw Error(ErrorCode::InputNotExactInQuotient, "homology at position " + std::to_string(i) + " is not in " + b.name());
  }
  // Make the complex exact node by node, from the last object down.
  for (std::size_t i = m + 1; i-- > 0;) {
    Lattice ker = i < m ? modcat::kernel_lattice_of(f[i]) : full_lattice(y[i].scalar_rank());
    Lattice im = i > 0 ? modcat::image_lattice_of(f[i - 1]) : modcat::relation_lattice(y[i]);
    if (ker == im) continue;
    Subobject k = modcat::subobject(y[i], ker);
    Lattice extra = image_of(k.inclusion, largest_b_sublattice(k.object, b));
    if (!(lattice_sum(extra, im) == ker))
      throw Error(ErrorCode::LiftingPropertyUnverified, "homology at position " + std::to_string(i) + " does not lift");
    Quotient h = modcat::quotient(y[i], extra);
    if (i > 0) f[i - 1] = modcat::compose(h.projection, f[i - 1]);
    if (i < m) f[i] = Morphism(h.object, y[i + 1], f[i].matrix() * section(h));
    g[i] = modcat::compose(h.projection, g[i]);
    y[i] = h.object;
  }
  if (!is_exact_complex(y, f)) throw std::logic_error("lifted complex is not exact");
  return {y, f, g};
}

}  // namespace hdlab::serre
