#pragma once

#include "hdlab/module_cat.hpp"

namespace hdlab::modcat {

struct Canonical {
  IntVec moduli;
  std::vector<IntMatrix> action;
  IntMatrix to_new;  // k x n, old coordinates to new
  IntMatrix to_old;  // n x k, a section
};

// Invariant factor form of Z^n / colspan(relations) with the induced action.
Canonical canonicalize(const IntMatrix& relations, const std::vector<IntMatrix>& action);

struct ModuleAccess {
  static Module make(const RingPtr& ring, IntVec moduli, std::vector<IntMatrix> action);
};

void validate_action(const RingPtr& ring, const IntVec& moduli, const std::vector<IntMatrix>& action);

// Row i of m reduced modulo moduli[i].
IntMatrix reduced(IntMatrix m, const IntVec& moduli);

// The relation lattice of the module plus the extra vectors.
IntMatrix stack_columns(const std::vector<IntVec>& columns, std::size_t rows);

}  // namespace hdlab::modcat
