#pragma once

// Cohomology of finite groups through the normalized bar complex, the
// contragredient duality on finite l-primary modules and the probes for
// cd_l(Gamma) and hd(Gamma-mod_l).

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "hdlab/module_cat.hpp"

namespace hdlab::gammacoh {

using linalg::Int;
using linalg::IntMatrix;
using linalg::IntVec;
using modcat::FiniteGroup;
using modcat::Module;
using modcat::Morphism;

// A function Gamma^i -> M. Entry t is the value at the tuple whose code in
// base |Gamma| is t, first argument most significant.
using CochainTable = std::vector<IntVec>;

struct CohomologyGroup {
  std::size_t degree = 0;
  Module coefficients;
  IntVec invariants;
  // Normalized cocycles, one per invariant factor.
  std::vector<CochainTable> representatives;

  Int order() const { return linalg::group_order(invariants); }
  bool is_zero() const { return invariants.empty(); }
};

constexpr int kMaxBarGroupOrder = 12;
constexpr std::size_t kMaxBarDegree = 5;
// Entries of the largest coboundary matrix on one primary component.
constexpr std::size_t kMaxBarCells = 4'000'000;

// Whether group_cohomology(i, M) fits the budget.
bool bar_within_budget(std::size_t degree, const Module& m);

// H^i(Gamma, M) for a finite module over Z[Gamma]. Throws BudgetExceeded.
CohomologyGroup group_cohomology(std::size_t degree, const FiniteGroup& group, const Module& m);
CohomologyGroup group_cohomology(std::size_t degree, const Module& m);

// Direct evaluation of the bar differential on a full table.
CochainTable bar_coboundary(const Module& m, std::size_t degree, const CochainTable& f);
bool is_bar_cocycle(const Module& m, std::size_t degree, const CochainTable& f);
std::size_t tuple_count(int group_order, std::size_t degree);

// Z with trivial action.
Module trivial_integers(const modcat::RingPtr& ring);
// H^i(Gamma, M) as Ext^i over Z[Gamma] of the trivial module Z.
modcat::ExtGroup cohomology_via_resolution(std::size_t degree, const Module& m);

struct CohomologyOrder {
  Int order;
  std::string route;  // "bar" or "resolution"
};
// Bar complex within budget, resolution otherwise.
CohomologyOrder cohomology_order(std::size_t degree, const Module& m);

// Maps(Gamma, A) with (g f)(x) = f(x g), A given by invariant factors.
Module coinduced(const FiniteGroup& group, const IntVec& factors);

// Hom_Z(X, Y) and Ext^1_Z(X, Y) of the underlying groups with Gamma acting
// by conjugation.
Module hom_z_module(const Module& x, const Module& y);
Module ext1_z_module(const Module& x, const Module& y);

// Hom(M, Z/l^k) with the contragredient action. Throws NotEllPrimary.
Module ell_dual(const Module& m, long ell, unsigned k);
// f : M -> N gives N* -> M*.
Morphism ell_dual_map(const Morphism& f, long ell, unsigned k);
// Evaluation M -> M**.
Morphism double_dual_map(const Module& m, long ell, unsigned k);

// The simple F_l[Gamma]-modules up to isomorphism, from the composition
// factors of the regular module. Empty when the regular module is too large
// to search.
std::vector<Module> simple_modules(const FiniteGroup& group, long ell);
Module regular_module(const FiniteGroup& group, long ell);

struct CdCertificateEntry {
  std::string module;
  std::size_t degree = 0;
  Int order;
  std::string route;
};

struct CdProbe {
  FiniteGroup group;
  long ell = 0;
  std::size_t bound = 0;
  bool vanishing = false;       // cd_l = 0 certified up to the bound
  std::size_t degree = 0;       // least nonvanishing degree when !vanishing
  bool family_complete = true;  // every simple module was tested
  std::vector<CdCertificateEntry> certificate;
};

CdProbe cd_ell_probe(const FiniteGroup& group, long ell, std::size_t bound);

struct GammaExtEntry {
  std::size_t source = 0, target = 0, degree = 0;
  Int order;
  Int hom_term, ext1_term;  // |H^n(Gamma, Hom)| and |H^{n-1}(Gamma, Ext^1)|
  std::string hom_route, ext1_route;
  bool bound_holds = true;
  IntVec witness;  // nonzero class, empty when Ext vanishes
};

struct GammaModProbe {
  FiniteGroup group;
  long ell = 0;
  std::size_t bound = 0;
  std::vector<Module> sample;
  std::vector<std::shared_ptr<const modcat::Resolution>> resolutions;  // one per sample object
  std::vector<GammaExtEntry> table;
  // Nonvanishing found at degree d, for d = 0..bound.
  std::vector<bool> nonvanishing;
  std::size_t max_degree = 0;
  bool spectral_bound_holds = true;
};

constexpr long kMaxProbeModuleOrder = 64;

// Ext^d over Z[Gamma] for all ordered sample pairs and d <= bound, each
// checked against the two-row spectral sequence bound. Throws BudgetExceeded
// for sample objects of order > 64.
GammaModProbe hd_gamma_mod_probe(const FiniteGroup& group, long ell, std::size_t bound,
                                 const std::vector<Module>& sample);

// Trivial Z/l and Z/l^2, the simple modules and the regular module when of
// order <= 64, up to isomorphism.
std::vector<Module> default_gamma_sample(const FiniteGroup& group, long ell);

}  // namespace hdlab::gammacoh
