#pragma once

// Serre subcategories of a module realization, torsion pairs, morphisms of
// the quotient category and S-localized Hom and Ext.

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "hdlab/module_cat.hpp"

namespace hdlab::serre {

using linalg::Int;
using linalg::IntMatrix;
using linalg::IntVec;
using linalg::Lattice;
using modcat::Module;
using modcat::Morphism;

enum class PredicateKind { Zero, All, STorsion, EtaleLike, Span, Custom };

class SerrePredicate {
 public:
  SerrePredicate();  // the zero subcategory

  static SerrePredicate zero();
  static SerrePredicate all();
  // S-primary torsion objects.
  static SerrePredicate s_torsion(std::set<long> primes);
  // Finite discrete objects: every object of the shipped realizations.
  static SerrePredicate etale_like();
  // Smallest Serre subcategory containing the given objects (same ring).
  static SerrePredicate span(std::vector<Module> objects);
  static SerrePredicate custom(std::string name, std::function<bool(const Module&)> test);

  PredicateKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  const std::set<long>& primes() const noexcept { return primes_; }
  // Vertices of an A2 span (1 and/or 2).
  const std::set<int>& vertices() const noexcept { return vertices_; }

  bool contains(const Module& x) const;

 private:
  PredicateKind kind_ = PredicateKind::Zero;
  std::string name_ = "zero";
  std::set<long> primes_;
  std::set<int> vertices_;
  std::vector<Module> generators_;
  std::vector<Module> simples_;  // composition factors of a span over a group ring
  std::function<bool(const Module&)> test_;
};

// Composition factors of a finite module, one simple module per factor,
// by exhaustive submodule search.
std::vector<Module> composition_factors(const Module& x);

// Sampled closure audit: every listed object, all of its submodules and the
// matching quotients are tested for the three Serre conditions. Returns one
// line per violation.
std::vector<std::string> closure_violations(const SerrePredicate& b, const std::vector<Module>& objects);

struct TorsionPairResult {
  Module sub;       // X^B, admits no nonzero map to B
  Module quotient;  // X_B in B
  Morphism inclusion, projection;
  Lattice sub_lattice;
};

// Minimal Z with X/Z in B. Structural fast paths where available, exhaustive
// intersection over all submodules otherwise.
TorsionPairResult torsion_pair(const Module& x, const SerrePredicate& b);
// Always exhaustive; the submodule list is shuffled with the seed first.
TorsionPairResult torsion_pair_exhaustive(const Module& x, const SerrePredicate& b, std::uint64_t shuffle_seed = 0);

// Largest subobject of X lying in B (the sum of all B-subobjects).
Lattice largest_b_sublattice(const Module& x, const SerrePredicate& b);
Lattice largest_b_sublattice_exhaustive(const Module& x, const SerrePredicate& b, std::uint64_t shuffle_seed = 0);

bool q_is_zero(const Morphism& f, const SerrePredicate& b);
bool q_is_mono(const Morphism& f, const SerrePredicate& b);
bool q_is_epi(const Morphism& f, const SerrePredicate& b);

// A morphism X -> Y of the quotient category, represented by X -> Y/Y'.
struct QMorphism {
  Module source, target;
  Lattice witness;           // Y' in B
  modcat::Quotient reduced;  // Y -> Y/Y'
  Morphism representative;   // X -> Y/Y'
};

QMorphism q_morphism(const Morphism& f);
QMorphism q_morphism(const Morphism& representative, const Module& target, const Lattice& witness, const SerrePredicate& b);
bool q_is_zero(const QMorphism& f, const SerrePredicate& b);
// Equality tested in the common quotient Y/(Y' + Y'').
bool q_equal(const QMorphism& a, const QMorphism& b, const SerrePredicate& pred);
// Representative pushed to Y/L for a lattice L containing the witness.
Morphism q_push(const QMorphism& f, const Lattice& bigger);

// Matrix of the map Y/L1 -> Y/L2 induced by the identity of Y (L1 <= L2).
Morphism induced_projection(const modcat::Quotient& from, const modcat::Quotient& to);

struct QHomGroup {
  Module source, target;
  Lattice witness;  // largest B-subobject of the target
  modcat::Quotient reduced;
  modcat::HomGroup hom;  // Hom(X, Y/witness)
  IntVec invariants;
  std::vector<QMorphism> generators;

  Int order() const { return linalg::group_order(invariants); }
  IntVec coordinates(const QMorphism& f) const;
};

// Whether every epimorphism from X onto an object of B lifts; checked on
// X -> X_B, through which all of them factor.
bool lifting_holds(const Module& x, const SerrePredicate& b);

QHomGroup q_hom(const Module& x, const Module& y, const SerrePredicate& b);

// Ext^i of the quotient category, as Ext^i(X, Y/Y'_max) over the ring.
struct QExtGroup {
  Lattice witness;
  modcat::Quotient reduced;
  modcat::ExtGroup ext;

  Int order() const { return ext.order(); }
};

QExtGroup q_ext(std::size_t degree, const Module& x, const Module& y, const SerrePredicate& b);
QExtGroup q_ext(std::size_t degree, const std::shared_ptr<const modcat::Resolution>& res, const Module& y,
                const SerrePredicate& b);

// S'-primary components: each generator is multiplied by the S-part of its order.
struct LocalizedHom {
  modcat::HomGroup hom;
  IntVec invariants;
  std::vector<Morphism> generators;
  std::vector<std::size_t> source_index;  // generator k is scale[k] times hom generator source_index[k]
  IntVec scale;
  Int order() const { return linalg::group_order(invariants); }
};

struct LocalizedExt {
  modcat::ExtGroup ext;
  IntVec invariants;
  std::vector<IntVec> representatives;
  std::vector<std::size_t> source_index;
  IntVec scale;
  Int order() const { return linalg::group_order(invariants); }
};

LocalizedHom localized_hom(const Module& x, const Module& y, const std::set<long>& primes);
LocalizedExt localized_ext(std::size_t degree, const Module& x, const Module& y, const std::set<long>& primes);
LocalizedExt localized_ext(std::size_t degree, const std::shared_ptr<const modcat::Resolution>& res, const Module& y,
                           const std::set<long>& primes);

// Whether the homomorphism between finite groups with the given invariant
// factors, columns being images of the source generators, is bijective.
bool is_group_isomorphism(const IntMatrix& images, const IntVec& source_invariants, const IntVec& target_invariants);

// Images of the localized Hom generators in q_hom(X, Y, S-torsion).
IntMatrix localization_comparison(const LocalizedHom& loc, const QHomGroup& q);
// Images of the localized Ext generators in q_ext(i, X, Y, S-torsion); both
// must be computed over the same resolution of X.
IntMatrix localization_comparison(const LocalizedExt& loc, const QExtGroup& q);

struct LiftingWitness {
  modcat::Subobject witness;  // X' in B with X' -> X -> Y onto
  std::string method;         // "ker(n_X)" or "largest B-subobject"
  Int n;                      // the n of ker(n_X), 0 otherwise
};

LiftingWitness check_lifting_property(const Morphism& epi, const SerrePredicate& b);

// Complex X_0 -> X_1 -> ... -> X_m of the quotient category, maps d_i : X_i -> X_{i+1}.
struct LiftedComplex {
  std::vector<Module> objects;
  std::vector<Morphism> maps;        // exact in the ring category
  std::vector<Morphism> comparison;  // epimorphisms X_i -> Y_i with kernel in B
};

LiftedComplex lift_exact_complex(const std::vector<Module>& objects, const std::vector<QMorphism>& maps,
                                 const SerrePredicate& b);

// ker = im at every node of 0 -> X_0 -> ... -> X_m -> 0.
bool is_exact_complex(const std::vector<Module>& objects, const std::vector<Morphism>& maps);

}  // namespace hdlab::serre
