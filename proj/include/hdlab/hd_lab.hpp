#pragma once

// Bounded estimates of homological dimension over finite samples and the
// verification suites for the dimension formulas on the shipped realizations.

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "hdlab/dieudonne.hpp"
#include "hdlab/gammacoh.hpp"
#include "hdlab/serre_quotient.hpp"

namespace hdlab::lab {

using linalg::Int;
using linalg::IntVec;
using modcat::Module;
using serre::SerrePredicate;

// How Ext of the category is computed on sample objects.
enum class ExtRoute {
  Ambient,    // resolution Ext over the base ring
  Quotient,   // Ext^i(X, Y / Y'_max) for a Serre subcategory B
  Localized,  // S'-primary part of the ambient Ext
};

struct HdCategory {
  std::string label;
  ExtRoute route = ExtRoute::Ambient;
  SerrePredicate b;       // Quotient
  std::set<long> primes;  // Localized
  // Global dimension of the category when a structural theorem gives it, -1 otherwise.
  int structural_dimension = -1;
};

// Ambient category of modules over the ring; Z and the A2 path algebra are hereditary.
HdCategory ambient_category(const modcat::RingPtr& ring);
HdCategory quotient_category(const modcat::RingPtr& ring, const SerrePredicate& b);
HdCategory localized_category(const std::set<long>& primes);

struct HdEntry {
  std::size_t source = 0, target = 0, degree = 0;
  IntVec invariants;
  // Nonzero class when the group is nonzero: a cocycle of the stored
  // resolution of the source with values in witness_target.
  IntVec witness;
  Module witness_target;
  std::shared_ptr<const modcat::Resolution> resolution;
  bool verified = false;

  bool is_zero() const { return invariants.empty(); }
};

struct HdReport {
  std::string category;
  std::vector<std::string> sample;
  std::vector<Module> objects;
  std::uint64_t seed = 0;
  std::size_t bound = 0;
  int max_degree = -1;  // -1 when every sampled Ext vanishes
  std::vector<HdEntry> table;
  bool exact = false;  // the estimate equals the structural global dimension
  bool witnesses_verified = true;
  std::string verdict;

  // Least n with every sampled Ext^i vanishing for i > n.
  int estimate() const { return max_degree < 0 ? 0 : max_degree; }
};

// Ext^d over all ordered sample pairs and d <= bound. An empty sample is the
// zero category. Throws InvalidArgument for bound 0.
HdReport hd_bounded(const HdCategory& category, const std::vector<Module>& samples, std::size_t bound,
                    std::uint64_t seed = 0);

// Recomputes every witness check from the stored cochains.
bool reverify_witnesses(const HdReport& report);

// Samples, deduplicated by canonical form and kept in a deterministic order.
std::vector<Module> finab_sample(long max_order, std::size_t count = 0, std::uint64_t seed = 0);
std::vector<Module> a2_sample(unsigned p, std::size_t extra = 5, std::uint64_t seed = 0);
std::vector<Module> dedupe(const std::vector<Module>& objects);

struct ThmHdReport {
  std::set<long> primes;
  std::uint64_t seed = 0;
  std::size_t bound = 0;
  HdReport ambient, torsion, quotient;
  int lhs = 0, rhs = 0;
  bool equal = false;
};

// hd(A) against max(hd(A_S), hd(A/A_S)), the torsion side on the S-parts of
// the samples and the quotient side through localized Ext.
ThmHdReport verify_thm_hd(const std::set<long>& primes, const std::vector<Module>& samples, std::size_t bound,
                          std::uint64_t seed = 0);

struct HdMaxReport {
  std::string subcategory;
  std::uint64_t seed = 0;
  std::size_t bound = 0;
  std::size_t lifting_checked = 0;
  HdReport ambient, sub, quotient;
  int lhs = 0, rhs = 0;
  bool holds = false, strict = false;
};

// hd(A) >= max(hd(B), hd(A/B)); the B side is sampled from the B-parts of the
// samples. Throws LiftingPropertyUnverified when a sample fails lifting.
HdMaxReport verify_hdmax_inequality(const SerrePredicate& b, const std::vector<Module>& samples, std::size_t bound,
                                    std::uint64_t seed = 0);

struct QuiverReport {
  unsigned p = 0;
  std::uint64_t seed = 0;
  bool s2_projective = false;
  bool s1_not_projective = false;
  Int ext1_s1_s2_order;
  bool b_serre = false;
  bool b_semisimple = false;
  bool quotient_semisimple = false;
  bool lifting = false;
  HdMaxReport inequality;
  bool pass = false;
};

// Throws InvalidArgument unless p is 2 or 3.
QuiverReport verify_quiver_example(unsigned p, std::uint64_t seed = 0);

struct CdPatternEntry {
  std::string group;
  int order = 0;
  long ell = 0;
  bool coprime = false;
  std::vector<bool> nonvanishing;
  std::size_t max_degree = 0;
  bool spectral_bound_holds = false;
  bool cd_vanishing = false;
  std::size_t sample_size = 0;
  bool pass = false;
};

struct CdPatternReport {
  std::size_t bound = 0;
  std::vector<CdPatternEntry> entries;
  bool pass = false;
};

// Coprime l: Ext vanishes above degree 1. l dividing the order: Ext is
// nonzero in every degree 1..bound.
CdPatternReport verify_lem_cd(const std::vector<modcat::FiniteGroup>& groups, const std::vector<long>& ells,
                              std::size_t bound);
std::vector<modcat::FiniteGroup> standard_groups();

struct Ext2Report {
  dieudonne::CokernelReport minus_id, frobenius;
  bool pass = false;
};

Ext2Report verify_ext2_k(const dieudonne::FieldPtr& field, std::size_t truncation);

struct LiftingCase {
  std::string source, target;
  Int n;
  std::string method;
  bool certified = false;
};

struct LiftingReport {
  std::set<long> primes;
  std::uint64_t seed = 0;
  std::vector<LiftingCase> cases;
  bool pass = false;
};

// Every projection of a sample onto an S-torsion quotient, at most
// per_object of them per sample chosen with the seed.
LiftingReport verify_lifting(const std::set<long>& primes, const std::vector<Module>& samples,
                             std::size_t per_object = 8, std::uint64_t seed = 0);

}  // namespace hdlab::lab
