#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <sstream>

#include "hdlab/error.hpp"
#include "hdlab/module_cat.hpp"

namespace hdlab::modcat {

FiniteGroup::FiniteGroup() : table_{{0}}, inverse_{0}, identity_(0), name_("1") {}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table, std::string name) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw Error(ErrorCode::ValidationError, "group table is empty");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw Error(ErrorCode::ValidationError, "group table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw Error(ErrorCode::ValidationError, "group table entry out of range");
  }
  int identity = -1;
  for (int e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g) ok = table[e][g] == g && table[g][e] == g;
    if (ok) identity = e;
  }
  if (identity < 0) throw Error(ErrorCode::ValidationError, "group table has no identity");
  std::vector<int> inverse(n, -1);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (table[g][h] == identity && table[h][g] == identity) inverse[g] = h;
  for (int g = 0; g < n; ++g)
    if (inverse[g] < 0) throw Error(ErrorCode::ValidationError, "group table element " + std::to_string(g) + " has no inverse");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw Error(ErrorCode::ValidationError, "group table is not associative");
  FiniteGroup g;
  g.table_ = std::move(table);
  g.inverse_ = std::move(inverse);
  g.identity_ = identity;
  g.name_ = name.empty() ? "G" + std::to_string(n) : std::move(name);
  return g;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "cyclic group order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return from_table(std::move(t), n == 1 ? "1" : "C" + std::to_string(n));
}

FiniteGroup FiniteGroup::symmetric3() {
  // permutations of {0,1,2} in lexicographic order
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int n = static_cast<int>(perms.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return from_table(std::move(t), "S3");
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order();
  std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
  for (int x = 0; x < na * nb; ++x)
    for (int y = 0; y < na * nb; ++y) t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  return from_table(std::move(t), a.name() + "x" + b.name());
}

std::vector<int> FiniteGroup::generators() const {
  std::vector<int> gens;
  std::vector<char> in(order(), 0);
  in[identity_] = 1;
  std::vector<int> members{identity_};
  for (int g = 0; g < order(); ++g) {
    if (in[g]) continue;
    gens.push_back(g);
    // close the subgroup under multiplication by the chosen generators
    members.assign(1, identity_);
    std::fill(in.begin(), in.end(), 0);
    in[identity_] = 1;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (int s : gens) {
        int h = mul(members[i], s);
        if (!in[h]) {
          in[h] = 1;
          members.push_back(h);
        }
      }
  }
  return gens;
}

void BaseRing::finish() {
  left_regular_.clear();
  for (unsigned a = 0; a < rank_; ++a) {
    IntMatrix l(rank_, rank_);
    for (unsigned b = 0; b < rank_; ++b)
      for (unsigned t = 0; t < rank_; ++t) l(t, b) = structure(a, b)[t];
    left_regular_.push_back(std::move(l));
  }
  // associativity and unitality on the basis
  auto product = [&](const IntVec& x, const IntVec& y) {
    IntVec z(rank_);
    for (unsigned a = 0; a < rank_; ++a)
      for (unsigned b = 0; b < rank_; ++b) {
        if (sgn(x[a]) == 0 || sgn(y[b]) == 0) continue;
        const IntVec& s = structure(a, b);
        for (unsigned t = 0; t < rank_; ++t) z[t] += x[a] * y[b] * s[t];
      }
    if (characteristic_ != 0)
      for (auto& c : z) c = linalg::mod_floor(c, characteristic_);
    return z;
  };
  auto basis = [&](unsigned a) {
    IntVec e(rank_);
    e[a] = 1;
    return e;
  };
  for (unsigned a = 0; a < rank_; ++a) {
    if (product(unit_, basis(a)) != basis(a) || product(basis(a), unit_) != basis(a))
      throw Error(ErrorCode::ValidationError, "ring multiplication is not unital");
    for (unsigned b = 0; b < rank_; ++b)
      for (unsigned c = 0; c < rank_; ++c)
        if (product(product(basis(a), basis(b)), basis(c)) != product(basis(a), product(basis(b), basis(c))))
          throw Error(ErrorCode::ValidationError, "ring multiplication is not associative");
  }
}

std::shared_ptr<const BaseRing> BaseRing::integers() {
  static const std::shared_ptr<const BaseRing> z = [] {
    std::shared_ptr<BaseRing> r(new BaseRing());
    r->kind_ = RingKind::Integers;
    r->rank_ = 1;
    r->structure_ = {IntVec{1}};
    r->unit_ = IntVec{1};
    r->names_ = {"1"};
    r->finish();
    return std::shared_ptr<const BaseRing>(r);
  }();
  return z;
}

std::shared_ptr<const BaseRing> BaseRing::group_ring(const FiniteGroup& g) {
  static std::mutex mu;
  static std::map<std::vector<std::vector<int>>, std::shared_ptr<const BaseRing>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(g.table()); it != cache.end()) return it->second;
  std::shared_ptr<BaseRing> r(new BaseRing());
  const unsigned n = static_cast<unsigned>(g.order());
  r->kind_ = RingKind::GroupRing;
  r->rank_ = n;
  r->group_ = g;
  r->structure_.assign(static_cast<std::size_t>(n) * n, IntVec(n));
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b) r->structure_[a * n + b][g.mul(static_cast<int>(a), static_cast<int>(b))] = 1;
  r->unit_ = IntVec(n);
  r->unit_[g.identity()] = 1;
  for (unsigned a = 0; a < n; ++a) r->names_.push_back("g" + std::to_string(a));
  r->finish();
  std::shared_ptr<const BaseRing> out = r;
  cache[g.table()] = out;
  return out;
}

std::shared_ptr<const BaseRing> BaseRing::path_algebra_a2(unsigned p) {
  if (!linalg::is_prime(p)) throw Error(ErrorCode::InvalidArgument, "path algebra needs a prime field");
  static std::mutex mu;
  static std::map<unsigned, std::shared_ptr<const BaseRing>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(p); it != cache.end()) return it->second;
  std::shared_ptr<BaseRing> r(new BaseRing());
  r->kind_ = RingKind::PathAlgebraA2;
  r->rank_ = 3;
  r->characteristic_ = p;
  // basis: 0 = e1, 1 = e2, 2 = a
  r->structure_.assign(9, IntVec(3));
  r->structure_[0 * 3 + 0][0] = 1;
  r->structure_[1 * 3 + 1][1] = 1;
  r->structure_[1 * 3 + 2][2] = 1;
  r->structure_[2 * 3 + 0][2] = 1;
  r->unit_ = IntVec{1, 1, 0};
  r->names_ = {"e1", "e2", "a"};
  r->finish();
  std::shared_ptr<const BaseRing> out = r;
  cache[p] = out;
  return out;
}

std::string BaseRing::label() const {
  switch (kind_) {
    case RingKind::Integers: return "Z";
    case RingKind::GroupRing: return "Z[" + group_.name() + "]";
    case RingKind::PathAlgebraA2: return "F_" + std::to_string(characteristic_) + "[A2]";
  }
  return "?";
}

bool BaseRing::same_as(const BaseRing& other) const {
  if (this == &other) return true;
  return kind_ == other.kind_ && rank_ == other.rank_ && characteristic_ == other.characteristic_ &&
         structure_ == other.structure_;
}

}  // namespace hdlab::modcat
