#include "hdlab/error.hpp"
#include "hdlab/gammacoh.hpp"
#include "hdlab/serre_quotient.hpp"

namespace hdlab::gammacoh {

namespace {

void add_unique(std::vector<Module>& list, const Module& m) {
  for (const auto& x : list)
    if (modcat::isomorphic(x, m)) return;
  list.push_back(m);
}

bool ell_primary(const Module& m, long ell) {
  if (!m.is_finite()) return false;
  Int e = m.exponent();
  while (e % ell == 0) e /= ell;
  return e == 1;
}

}  // namespace

Module regular_module(const FiniteGroup& group, long ell) {
  const auto ring = modcat::BaseRing::group_ring(group);
  const auto n = static_cast<std::size_t>(group.order());
  std::vector<IntMatrix> action;
  for (unsigned a = 0; a < ring->rank(); ++a) action.push_back(ring->left_regular(a));
  return Module::from_scalar_presentation(ring, IntMatrix::diagonal(IntVec(n, Int(ell))), action);
}

std::vector<Module> simple_modules(const FiniteGroup& group, long ell) {
  const Module reg = regular_module(group, ell);
  std::vector<Module> out;
  if (!modcat::enumeration_allowed(reg)) return out;
  for (const auto& s : serre::composition_factors(reg)) add_unique(out, s);
  return out;
}

CdProbe cd_ell_probe(const FiniteGroup& group, long ell, std::size_t bound) {
  CdProbe out;
  out.group = group;
  out.ell = ell;
  out.bound = bound;
  std::vector<Module> family = simple_modules(group, ell);
  if (family.empty()) {
    // the regular module contains every simple module as a summand when l does not divide |Gamma|
    out.family_complete = false;
    family.push_back(modcat::make_finab(modcat::BaseRing::group_ring(group), IntVec{ell}));
    family.push_back(regular_module(group, ell));
  }
  for (std::size_t d = 1; d <= bound; ++d)
    for (const auto& s : family) {
      const CohomologyOrder h = cohomology_order(d, s);
      out.certificate.push_back({s.describe(), d, h.order, h.route});
      if (h.order != 1) {
        out.vanishing = false;
        out.degree = d;
        return out;
      }
    }
  out.vanishing = true;
  out.degree = 0;
  return out;
}

std::vector<Module> default_gamma_sample(const FiniteGroup& group, long ell) {
  const auto ring = modcat::BaseRing::group_ring(group);
  std::vector<Module> out;
  add_unique(out, modcat::make_finab(ring, IntVec{ell}));
  add_unique(out, modcat::make_finab(ring, IntVec{Int(ell * ell)}));
  for (const auto& s : simple_modules(group, ell))
    if (s.order() <= kMaxProbeModuleOrder) add_unique(out, s);
  const Module reg = regular_module(group, ell);
  if (reg.order() <= kMaxProbeModuleOrder) add_unique(out, reg);
  return out;
}

GammaModProbe hd_gamma_mod_probe(const FiniteGroup& group, long ell, std::size_t bound,
                                 const std::vector<Module>& sample) {
  GammaModProbe out;
  out.group = group;
  out.ell = ell;
  out.bound = bound;
  out.sample = sample;
  out.nonvanishing.assign(bound + 1, false);
  for (const auto& x : sample) {
    const FiniteGroup* g = x.ring()->group();
    if (!g || !(*g == group)) throw Error(ErrorCode::BaseMismatch, "sample object over a different group");
    if (x.order() > kMaxProbeModuleOrder)
      throw Error(ErrorCode::BudgetExceeded, "sample object of order " + x.order().get_str() + " > 64");
    if (!ell_primary(x, ell)) throw Error(ErrorCode::NotEllPrimary, "sample object " + x.describe());
    out.resolutions.push_back(modcat::free_resolution(x, bound + 1));
  }
  for (std::size_t s = 0; s < sample.size(); ++s)
    for (std::size_t t = 0; t < sample.size(); ++t) {
      const Module hom = hom_z_module(sample[s], sample[t]);
      const Module ext1 = ext1_z_module(sample[s], sample[t]);
      for (std::size_t n = 0; n <= bound; ++n) {
        const auto e = modcat::ext_group(n, out.resolutions[s], sample[t]);
        GammaExtEntry entry;
        entry.source = s;
        entry.target = t;
        entry.degree = n;
        entry.order = e.order();
        const CohomologyOrder h = cohomology_order(n, hom);
        entry.hom_term = h.order;
        entry.hom_route = h.route;
        if (n == 0) {
          entry.ext1_term = 1;
        } else {
          const CohomologyOrder h1 = cohomology_order(n - 1, ext1);
          entry.ext1_term = h1.order;
          entry.ext1_route = h1.route;
        }
        entry.bound_holds = (entry.hom_term * entry.ext1_term) % entry.order == 0;
        if (!e.is_zero()) {
          entry.witness = e.representatives.back();
          out.nonvanishing[n] = true;
          out.max_degree = std::max(out.max_degree, n);
        }
        out.spectral_bound_holds = out.spectral_bound_holds && entry.bound_holds;
        out.table.push_back(std::move(entry));
      }
    }
  return out;
}

}  // namespace hdlab::gammacoh
