#pragma once

// Finite modules over a ring that is free of finite rank over Z or F_p.
// A module is stored at scalar level: an abelian group Z^n / diag(moduli)
// in invariant factor form together with one matrix per ring basis element.

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hdlab/exact_linalg.hpp"
#include "hdlab/finite_field.hpp"

namespace hdlab::modcat {

using linalg::Int;
using linalg::IntMatrix;
using linalg::IntVec;
using linalg::Lattice;

class FiniteGroup {
 public:
  FiniteGroup();  // trivial group

  // Validates the table: closure, identity, inverses, associativity.
  static FiniteGroup from_table(std::vector<std::vector<int>> table, std::string name = "");
  static FiniteGroup cyclic(int n);
  static FiniteGroup symmetric3();
  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);

  int order() const noexcept { return static_cast<int>(table_.size()); }
  int identity() const noexcept { return identity_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inverse(int a) const { return inverse_[a]; }
  const std::vector<std::vector<int>>& table() const noexcept { return table_; }
  const std::string& name() const noexcept { return name_; }
  // Greedy generating set, elements taken in index order.
  std::vector<int> generators() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
  std::string name_;
};

enum class RingKind { Integers, GroupRing, PathAlgebraA2 };

class BaseRing {
 public:
  static std::shared_ptr<const BaseRing> integers();
  static std::shared_ptr<const BaseRing> group_ring(const FiniteGroup& g);
  // k[1 -> 2] over the prime field F_p, basis e1, e2, a with e2 a = a = a e1.
  static std::shared_ptr<const BaseRing> path_algebra_a2(unsigned p);

  RingKind kind() const noexcept { return kind_; }
  unsigned rank() const noexcept { return rank_; }
  long characteristic() const noexcept { return characteristic_; }
  // e_a e_b = sum_t structure(a, b)[t] e_t
  const IntVec& structure(unsigned a, unsigned b) const { return structure_[a * rank_ + b]; }
  const IntVec& unit() const noexcept { return unit_; }
  // Left multiplication by e_a on the regular module.
  const IntMatrix& left_regular(unsigned a) const { return left_regular_[a]; }
  const FiniteGroup* group() const noexcept { return kind_ == RingKind::GroupRing ? &group_ : nullptr; }
  const std::vector<std::string>& basis_names() const noexcept { return names_; }
  std::string label() const;

  bool same_as(const BaseRing& other) const;

 private:
  BaseRing() = default;
  void finish();

  RingKind kind_ = RingKind::Integers;
  unsigned rank_ = 1;
  long characteristic_ = 0;
  std::vector<IntVec> structure_;
  IntVec unit_;
  std::vector<IntMatrix> left_regular_;
  FiniteGroup group_;
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const BaseRing>;

class Module {
 public:
  Module();  // zero module over Z

  // Z^n modulo the columns of relations, with e_a acting by action[a].
  // In characteristic p the relations p e_i are added automatically.
  static Module from_scalar_presentation(const RingPtr& ring, const IntMatrix& relations,
                                         const std::vector<IntMatrix>& action, bool validate = true);
  // R^generators modulo the R-span of the relators; each relator lists one
  // ring element (coefficients on the ring basis) per generator.
  static Module present(const RingPtr& ring, std::size_t generators, const std::vector<std::vector<IntVec>>& relators);
  static Module zero(const RingPtr& ring);
  static Module free(const RingPtr& ring, std::size_t rank);

  const RingPtr& ring() const noexcept { return data_->ring; }
  std::size_t scalar_rank() const noexcept { return data_->moduli.size(); }
  // Divisor chain of moduli >= 2 followed by zeros for free summands.
  const IntVec& moduli() const noexcept { return data_->moduli; }
  const IntMatrix& action(unsigned a) const { return data_->action[a]; }
  const std::vector<IntMatrix>& actions() const noexcept { return data_->action; }

  // 0 when infinite.
  const Int& order() const noexcept { return data_->order; }
  bool is_zero() const noexcept { return data_->moduli.empty(); }
  bool is_finite() const noexcept { return data_->order != 0; }
  Int exponent() const;

  IntVec reduce(IntVec v) const;
  bool is_zero_element(const IntVec& v) const;
  IntVec act(unsigned a, const IntVec& v) const;

  // Dimensions at the two vertices for A2 representations.
  std::pair<std::size_t, std::size_t> vertex_dims() const;

  std::string describe() const;
  // Stable serialization used for caching.
  const std::string& key() const noexcept { return data_->key; }

  friend bool operator==(const Module& a, const Module& b);

 private:
  struct Data {
    RingPtr ring;
    IntVec moduli;
    std::vector<IntMatrix> action;
    Int order;
    std::string key;
  };
  explicit Module(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;

  friend struct ModuleAccess;
};

class Morphism {
 public:
  Morphism() = default;
  Morphism(Module source, Module target, IntMatrix matrix, bool validate = true);

  static Morphism zero(const Module& source, const Module& target);
  static Morphism identity(const Module& x);
  static Morphism multiplication(const Module& x, const Int& n);

  const Module& source() const noexcept { return source_; }
  const Module& target() const noexcept { return target_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }

  IntVec apply(const IntVec& x) const;
  bool is_zero() const;
  // Whether the matrix is a module map (relations and ring action respected).
  static bool is_well_defined(const Module& source, const Module& target, const IntMatrix& matrix);

  Morphism scaled(const Int& c) const;
  friend Morphism compose(const Morphism& g, const Morphism& f);  // g after f
  friend Morphism operator+(const Morphism& a, const Morphism& b);
  friend Morphism operator-(const Morphism& a, const Morphism& b);
  friend bool operator==(const Morphism& a, const Morphism& b);

 private:
  Module source_, target_;
  IntMatrix matrix_;
};

Morphism compose(const Morphism& g, const Morphism& f);

struct Subobject {
  Module object;
  Morphism inclusion;
};

struct Quotient {
  Module object;
  Morphism projection;
};

struct DirectSum {
  Module object;
  Morphism inject_first, inject_second, project_first, project_second;
};

// Realizations.
Module make_finab(const IntVec& factors);
Module make_finab(const RingPtr& ring, const IntVec& factors);  // trivial action
// Action given on some group elements (at least a generating set); the rest
// is filled in by multiplication and every relation of the table is checked.
Module make_gamma_module(const FiniteGroup& group, const IntVec& factors, const std::map<int, IntMatrix>& action);
Module make_gamma_module(const RingPtr& ring, const IntVec& factors, const std::map<int, IntMatrix>& action);
Module make_quiver_rep(std::size_t v1, std::size_t v2, const linalg::FiniteFieldMatrix& edge_map);
Module make_quiver_rep(unsigned p, std::size_t v1, std::size_t v2, const std::vector<std::vector<long>>& edge_map);

// Invariant factor chains of every finite abelian group of order <= max_order,
// ordered by order and then lexicographically.
std::vector<IntVec> finite_abelian_groups(long max_order);

// Subobjects are lattices of scalar coordinates containing the relations.
Lattice relation_lattice(const Module& x);
Lattice submodule_lattice(const Module& x, const std::vector<IntVec>& generators);
Lattice intersect(const Lattice& a, const Lattice& b);
Subobject subobject(const Module& x, const Lattice& sub);
Quotient quotient(const Module& x, const Lattice& sub);
Int subobject_order(const Module& x, const Lattice& sub);

Subobject kernel(const Morphism& f);
Quotient cokernel(const Morphism& f);
Subobject image(const Morphism& f);
Lattice kernel_lattice_of(const Morphism& f);
Lattice image_lattice_of(const Morphism& f);
DirectSum direct_sum(const Module& x, const Module& y);

bool is_mono(const Morphism& f);
bool is_epi(const Morphism& f);

struct HomGroup {
  Module source, target;
  IntVec invariants;
  std::vector<Morphism> generators;
  linalg::Subquotient group;  // over flattened matrices, row-major

  Int order() const { return linalg::group_order(invariants); }
  bool is_zero() const { return invariants.empty(); }
  IntVec coordinates(const Morphism& f) const;
  Morphism element(const IntVec& coefficients) const;
};

HomGroup hom_group(const Module& x, const Module& y);

bool isomorphic(const Module& x, const Module& y);

struct Resolution {
  Module module;
  // F_i = R^{ranks[i]}.
  std::vector<std::size_t> ranks;
  // Images of the free generators of F_i: in the scalar coordinates of the
  // module for i = 0, in Z^{ranks[i-1] * rank(R)} for i >= 1.
  std::vector<std::vector<IntVec>> images;

  std::size_t length() const { return ranks.empty() ? 0 : ranks.size() - 1; }
  // Scalar matrix of F_i -> F_{i-1}, or of F_0 -> module for i = 0.
  IntMatrix differential(std::size_t i) const;
};

std::shared_ptr<const Resolution> free_resolution(const Module& x, std::size_t length);
// ker = im at every node, checked by order and containment on scalar lattices.
bool resolution_is_exact(const Resolution& res);

struct ExtGroup {
  std::size_t degree = 0;
  Module source, target;
  IntVec invariants;
  // Cocycles in Hom(F_degree, target) = target^{rank F_degree}.
  std::vector<IntVec> representatives;
  std::shared_ptr<const Resolution> resolution;
  linalg::Subquotient group;

  Int order() const { return linalg::group_order(invariants); }
  bool is_zero() const { return invariants.empty(); }
  IntVec coordinates(const IntVec& cocycle) const;
};

ExtGroup ext_group(std::size_t degree, const Module& x, const Module& y);
// Ext computed against a given resolution of x (must be long enough).
ExtGroup ext_group(std::size_t degree, const std::shared_ptr<const Resolution>& res, const Module& y);

// Coboundary matrix Hom(F_i, Y) -> Hom(F_{i+1}, Y).
IntMatrix coboundary(const Resolution& res, std::size_t i, const Module& y);
// Independent re-check: the cochain is a cocycle that is not a coboundary.
bool is_cocycle(const Resolution& res, std::size_t i, const Module& y, const IntVec& cochain);
bool is_coboundary(const Resolution& res, std::size_t i, const Module& y, const IntVec& cochain);

// Coordinates in ext_target of g_* applied to each generator of ext_source;
// column j is the image of generator j.
IntMatrix ext_pushforward(const ExtGroup& ext_source, const ExtGroup& ext_target, const Morphism& g);

// Finite-module element enumeration.
class ElementCodec {
 public:
  explicit ElementCodec(const Module& x);
  std::size_t size() const noexcept { return size_; }
  std::size_t encode(const IntVec& v) const;
  IntVec decode(std::size_t code) const;

 private:
  Module module_;
  std::vector<long> radix_;
  std::size_t size_ = 1;
};

// Exhaustive subobject search is allowed for order <= 512, or for vector
// spaces of dimension <= 6 (order <= 15625).
bool enumeration_allowed(const Module& x);
constexpr std::size_t kSubmoduleCap = 100000;
// All submodules; throws SearchExhausted past the caps.
std::vector<Lattice> enumerate_submodules(const Module& x);

}  // namespace hdlab::modcat
