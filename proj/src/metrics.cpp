#include "ekr2/metrics.hpp"

#include <algorithm>

#include "ekr2/checked.hpp"

namespace ekr2 {

std::int64_t CodegreeVector::sum() const {
  std::int64_t s = 0;
  for (const auto& [e, d] : entries) s = add_checked(s, d);
  return s;
}

std::int64_t CodegreeVector::sum_of_squares() const {
  std::int64_t s = 0;
  for (const auto& [e, d] : entries) s = add_checked(s, mul_checked(d, d));
  return s;
}

namespace {

// Calls visit(E) for every ell-subset E of the set m.
template <typename Visit>
void for_each_subset_of_size(Mask m, int ell, Visit&& visit) {
  if (ell == 0) {
    visit(Mask{0});
    return;
  }
  // Enumerate subsets of m by index combinations over its element bits.
  const int size = popcount(m);
  if (ell > size) return;
  Mask bits[kMaxUniverse];
  int count = 0;
  for (Mask rest = m; rest != 0; rest &= rest - 1) bits[count++] = rest & -rest;
  Mask pick = full_mask(ell);
  const Mask limit = full_mask(size);
  while (true) {
    Mask e = 0;
    for (Mask p = pick; p != 0; p &= p - 1) e |= bits[std::countr_zero(p)];
    visit(e);
    const Mask c = pick & -pick;
    const Mask r = pick + c;
    if ((r & ~limit) != 0) break;
    pick = (((r ^ pick) >> 2) / c) | r;
    if ((pick & ~limit) != 0) break;
  }
}

void require_sizes(const Family& f, int size) {
  for (Mask m : f) {
    if (popcount(m) != size) throw Error(ErrorKind::SizeMismatch, "member " + format_set(m) + " has the wrong size");
  }
}

}  // namespace

CodegreeVector codegree_vector(const Family& f, int ell) {
  const int k = require_uniform(f);
  if (ell < 0 || ell > k) throw Error(ErrorKind::BadEll, "need 0 <= ell <= k");
  CodegreeVector cv;
  cv.ell = ell;
  for (Mask m : f) {
    for_each_subset_of_size(m, ell, [&](Mask e) { ++cv.entries[e]; });
  }
  return cv;
}

std::int64_t co2(const Family& f) {
  if (f.empty()) return 0;
  const int k = require_uniform(f);
  if (k == 0) return 0;
  return codegree_vector(f, k - 1).sum_of_squares();
}

std::int64_t zeta(const Family& f, const Family& g, int u) {
  require_sizes(f, u + 1);
  require_sizes(g, u + 1);
  const auto a = f.masks();
  const auto b = g.masks();
  std::int64_t count = 0;
  if (a.data() == b.data() || f == g) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = i + 1; j < a.size(); ++j) count += popcount(a[i] & a[j]) == u ? 1 : 0;
    }
    return count;
  }
  // Pairs are unordered: a pair {F,G} with both F and G in f and in g is
  // found twice by the cross product, once per orientation.
  std::int64_t doubled = 0;
  for (Mask x : a) {
    for (Mask y : b) {
      if (x == y || popcount(x & y) != u) continue;
      const bool symmetric = g.contains(x) && f.contains(y);
      doubled += symmetric ? 1 : 2;
    }
  }
  count = doubled / 2;
  return count;
}

std::int64_t zeta_at(const Family& f, const Family& g, int u, int v) {
  if (v < 1 || v > std::max(f.n(), g.n())) throw Error(ErrorKind::BadVertex, "vertex outside [1,n]");
  require_sizes(f, u + 1);
  require_sizes(g, u + 1);
  const Mask vb = bit(v);
  const auto a = f.masks();
  const auto b = g.masks();
  if (f == g) {
    std::int64_t count = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if ((a[i] & vb) == 0) continue;
      for (std::size_t j = i + 1; j < a.size(); ++j) {
        const Mask common = a[i] & a[j];
        count += (common & vb) != 0 && popcount(common) == u ? 1 : 0;
      }
    }
    return count;
  }
  std::int64_t doubled = 0;
  for (Mask x : a) {
    if ((x & vb) == 0) continue;
    for (Mask y : b) {
      const Mask common = x & y;
      if (x == y || (common & vb) == 0 || popcount(common) != u) continue;
      doubled += g.contains(x) && f.contains(y) ? 1 : 2;
    }
  }
  return doubled / 2;
}

}  // namespace ekr2
