#pragma once

// Test helpers plus naive oracles written against plain integer vectors.
// Nothing here calls the library's metric, search or canonization code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "ekr2/setfam.hpp"

namespace support {

using ekr2::Family;
using ekr2::Mask;
using Set = std::vector<int>;

inline Mask m(std::initializer_list<int> xs) {
  Mask r = 0;
  for (int x : xs) r |= Mask{1} << (x - 1);
  return r;
}

inline Family fam(int n, int k, std::initializer_list<std::initializer_list<int>> sets) {
  std::vector<Mask> masks;
  for (auto s : sets) masks.push_back(m(s));
  return Family::uniform(n, k, masks);
}

inline Set to_set(Mask x) {
  Set s;
  for (int v = 1; v <= 64; ++v)
    if ((x >> (v - 1)) & 1U) s.push_back(v);
  return s;
}

inline std::vector<Set> sets_of(const Family& f) {
  std::vector<Set> out;
  for (Mask x : f) out.push_back(to_set(x));
  return out;
}

inline Mask to_mask(const Set& s) {
  Mask r = 0;
  for (int x : s) r |= Mask{1} << (x - 1);
  return r;
}

inline std::size_t meet(const Set& a, const Set& b) {
  Set c;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c));
  return c.size();
}

inline std::vector<Set> subsets(int n, int r) {
  std::vector<Set> out;
  if (r < 0 || r > n) return out;
  Set cur;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(cur.size()) == r) {
      out.push_back(cur);
      return;
    }
    for (int x = from; x <= n; ++x) {
      cur.push_back(x);
      rec(x + 1);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

inline bool contains_all(const Set& big, const Set& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

namespace oracle {

inline std::int64_t codegree_sq(const Family& f, int ell) {
  const auto mem = sets_of(f);
  std::int64_t total = 0;
  for (const Set& e : subsets(f.n(), ell)) {
    std::int64_t d = 0;
    for (const Set& x : mem) d += contains_all(x, e);
    total += d * d;
  }
  return total;
}

inline std::int64_t co2(const Family& f, int k) { return f.empty() ? 0 : codegree_sq(f, k - 1); }

inline std::int64_t zeta(const Family& f) {
  const auto mem = sets_of(f);
  std::int64_t c = 0;
  for (std::size_t a = 0; a < mem.size(); ++a)
    for (std::size_t b = a + 1; b < mem.size(); ++b)
      if (meet(mem[a], mem[b]) + 1 == mem[a].size()) ++c;
  return c;
}

inline bool t_intersecting(const Family& f, int t) {
  const auto mem = sets_of(f);
  for (std::size_t a = 0; a < mem.size(); ++a)
    for (std::size_t b = a + 1; b < mem.size(); ++b)
      if (meet(mem[a], mem[b]) < static_cast<std::size_t>(t)) return false;
  return true;
}

inline Family shift(const Family& f, int i, int j) {
  std::set<Set> orig;
  for (const Set& s : sets_of(f)) orig.insert(s);
  std::vector<Mask> out;
  for (const Set& a : orig) {
    const bool has_j = std::count(a.begin(), a.end(), j) > 0, has_i = std::count(a.begin(), a.end(), i) > 0;
    Set b = a;
    if (has_j && !has_i) {
      b.erase(std::find(b.begin(), b.end(), j));
      b.push_back(i);
      std::sort(b.begin(), b.end());
      if (orig.count(b)) b = a;
    }
    out.push_back(to_mask(b));
  }
  return Family::uniform(f.n(), f.k(), out);
}

/// Every maximal t-intersecting subfamily of C([n],k), by scanning all
/// 2^C(n,k) subfamilies.
inline std::vector<Family> maximal_families(int n, int k, int t) {
  const auto all = subsets(n, k);
  const std::size_t v = all.size();
  std::vector<Family> out;
  for (std::uint32_t sub = 1; sub < (1U << v); ++sub) {
    std::vector<std::size_t> idx;
    for (std::size_t a = 0; a < v; ++a)
      if ((sub >> a) & 1U) idx.push_back(a);
    bool ok = true;
    for (std::size_t x = 0; x < idx.size() && ok; ++x)
      for (std::size_t y = x + 1; y < idx.size() && ok; ++y)
        ok = meet(all[idx[x]], all[idx[y]]) >= static_cast<std::size_t>(t);
    if (!ok) continue;
    bool maximal = true;
    for (std::size_t a = 0; a < v && maximal; ++a) {
      if ((sub >> a) & 1U) continue;
      bool addable = true;
      for (std::size_t x : idx) addable = addable && meet(all[a], all[x]) >= static_cast<std::size_t>(t);
      if (addable) maximal = false;
    }
    if (!maximal) continue;
    std::vector<Mask> masks;
    for (std::size_t x : idx) masks.push_back(to_mask(all[x]));
    out.push_back(Family::uniform(n, k, masks));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Minimum over all n! relabelings, as sorted vectors of sorted sets.
inline std::vector<Set> full_canonical(const Family& f) {
  std::vector<int> perm(f.n());
  std::iota(perm.begin(), perm.end(), 1);
  const auto mem = sets_of(f);
  std::vector<Set> best;
  bool first = true;
  do {
    std::vector<Set> img;
    for (const Set& s : mem) {
      Set r;
      for (int x : s) r.push_back(perm[x - 1]);
      std::sort(r.begin(), r.end());
      img.push_back(r);
    }
    std::sort(img.begin(), img.end());
    if (first || img < best) {
      best = img;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace oracle

/// Seeded uniform k-uniform family: each k-set kept with probability p.
inline Family random_family(int n, int k, double p, std::mt19937_64& gen) {
  std::bernoulli_distribution keep(p);
  std::vector<Mask> masks;
  for (const Set& s : subsets(n, k))
    if (keep(gen)) masks.push_back(to_mask(s));
  return Family::uniform(n, k, masks);
}

/// Seeded t-intersecting family grown greedily from a shuffled k-set order.
inline Family random_t_family(int n, int k, int t, double p, std::mt19937_64& gen) {
  auto all = subsets(n, k);
  std::shuffle(all.begin(), all.end(), gen);
  std::bernoulli_distribution keep(p);
  std::vector<Set> chosen;
  for (const Set& s : all) {
    if (!keep(gen)) continue;
    if (std::all_of(chosen.begin(), chosen.end(), [&](const Set& c) { return meet(c, s) >= static_cast<std::size_t>(t); }))
      chosen.push_back(s);
  }
  std::vector<Mask> masks;
  for (const Set& s : chosen) masks.push_back(to_mask(s));
  return Family::uniform(n, k, masks);
}

inline std::vector<int> random_perm(int n, std::mt19937_64& gen) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  std::shuffle(p.begin(), p.end(), gen);
  return p;
}

}  // namespace support
