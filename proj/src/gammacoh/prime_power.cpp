#include "prime_power.hpp"

#include <stdexcept>

namespace hdlab::gammacoh::detail {

PrimePower::PrimePower(std::int64_t prime, int exponent) : p(prime), k(exponent), q(1) {
  for (int i = 0; i < exponent; ++i) q *= prime;
}

int PrimePower::valuation(std::int64_t a) const {
  if (a == 0) return k;
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

std::int64_t PrimePower::power(int e) const {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

std::int64_t PrimePower::inverse_unit(std::int64_t u) const {
  std::int64_t a = reduce(u), b = q, x0 = 1, x1 = 0;
  while (b != 0) {
    const std::int64_t t = a / b;
    a -= t * b;
    std::swap(a, b);
    x0 -= t * x1;
    std::swap(x0, x1);
  }
  if (a != 1) throw std::logic_error("inverse_unit: not a unit");
  return reduce(x0);
}

Elimination eliminate(PPMatrix a, const PrimePower& ring) {
  const std::size_t rows = a.rows(), cols = a.cols();
  Elimination out{std::vector<int>(cols, ring.k), PPMatrix(cols, cols), PPMatrix(cols, cols)};
  for (std::size_t i = 0; i < cols; ++i) out.q(i, i) = out.q_inverse(i, i) = 1;
  std::vector<char> row_used(rows, 0), col_used(cols, 0);
  std::vector<std::size_t> support;

  for (;;) {
    // entry of least valuation among unused rows and columns
    int best = ring.k;
    std::size_t pr = 0, pc = 0;
    for (std::size_t i = 0; i < rows && best > 0; ++i) {
      if (row_used[i]) continue;
      const std::int64_t* r = a.row(i);
      for (std::size_t j = 0; j < cols; ++j) {
        if (col_used[j] || r[j] == 0) continue;
        const int v = ring.valuation(r[j]);
        if (v < best) {
          best = v;
          pr = i;
          pc = j;
          if (v == 0) break;
        }
      }
    }
    if (best == ring.k) break;

    // scale the pivot column to make the pivot p^best
    const std::int64_t pe = ring.power(best);
    const std::int64_t u = a(pr, pc) / pe;
    const std::int64_t uinv = ring.inverse_unit(u);
    for (std::size_t i = 0; i < rows; ++i) a(i, pc) = ring.reduce(a(i, pc) * uinv);
    for (std::size_t i = 0; i < cols; ++i) {
      out.q(i, pc) = ring.reduce(out.q(i, pc) * uinv);
      out.q_inverse(pc, i) = ring.reduce(out.q_inverse(pc, i) * u);
    }

    support.clear();
    const std::int64_t* prow = a.row(pr);
    for (std::size_t j = 0; j < cols; ++j)
      if (prow[j] != 0) support.push_back(j);

    for (std::size_t i = 0; i < rows; ++i) {
      if (i == pr || row_used[i] || a(i, pc) == 0) continue;
      const std::int64_t m = a(i, pc) / pe;
      std::int64_t* r = a.row(i);
      for (std::size_t j : support) r[j] = ring.reduce(r[j] - m * prow[j]);
    }

    // clear the pivot row by column operations
    for (std::size_t j : support) {
      if (j == pc) continue;
      const std::int64_t m = a(pr, j) / pe;
      a(pr, j) = 0;
      for (std::size_t i = 0; i < cols; ++i) {
        if (out.q(i, pc) != 0) out.q(i, j) = ring.reduce(out.q(i, j) - m * out.q(i, pc));
        if (out.q_inverse(j, i) != 0) out.q_inverse(pc, i) = ring.reduce(out.q_inverse(pc, i) + m * out.q_inverse(j, i));
      }
    }
    row_used[pr] = 1;
    col_used[pc] = 1;
    out.column_valuation[pc] = best;
  }
  return out;
}

KernelBasis kernel(const PPMatrix& a, const PrimePower& ring) {
  KernelBasis out{{}, {}, {}, eliminate(a, ring)};
  const std::size_t cols = a.cols();
  for (std::size_t c = 0; c < cols; ++c) {
    const int e = out.elimination.column_valuation[c];
    if (e == 0) continue;
    const std::int64_t scale = ring.power(ring.k - e);
    std::vector<std::int64_t> g(cols);
    for (std::size_t i = 0; i < cols; ++i) g[i] = ring.reduce(out.elimination.q(i, c) * scale);
    out.generators.push_back(std::move(g));
    out.exponents.push_back(e);
    out.column.push_back(c);
  }
  return out;
}

std::vector<std::int64_t> kernel_coordinates(const KernelBasis& k, const std::vector<std::int64_t>& x,
                                             const PrimePower& ring) {
  const auto& qi = k.elimination.q_inverse;
  std::vector<std::int64_t> out(k.generators.size());
  for (std::size_t t = 0; t < k.generators.size(); ++t) {
    const std::size_t c = k.column[t];
    std::int64_t y = 0;
    const std::int64_t* r = qi.row(c);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != 0 && r[i] != 0) y = ring.reduce(y + r[i] * x[i]);
    const std::int64_t scale = ring.power(ring.k - k.exponents[t]);
    if (y % scale != 0) throw std::logic_error("kernel_coordinates: vector outside the kernel");
    out[t] = (y / scale) % ring.power(k.exponents[t]);
  }
  return out;
}

CokernelBasis cokernel(const std::vector<std::vector<std::int64_t>>& relations, std::size_t dim,
                       const PrimePower& ring) {
  // column operations on the transpose are row operations on the relations
  PPMatrix t(relations.size(), dim);
  for (std::size_t i = 0; i < relations.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) t(i, j) = ring.reduce(relations[i][j]);
  const Elimination e = eliminate(std::move(t), ring);
  CokernelBasis out;
  for (std::size_t c = 0; c < dim; ++c) {
    const int v = e.column_valuation[c];
    if (v == 0) continue;
    out.exponents.push_back(v);
    std::vector<std::int64_t> g(dim);
    for (std::size_t j = 0; j < dim; ++j) g[j] = e.q_inverse(c, j);
    out.generators.push_back(std::move(g));
  }
  return out;
}

}  // namespace hdlab::gammacoh::detail
