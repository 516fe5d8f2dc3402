#include "ekr2/gensets.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "ekr2/checked.hpp"
#include "ekr2/compress.hpp"
#include "ekr2/metrics.hpp"

namespace ekr2 {

namespace {

// Calls fn(subset) for every r-subset of `pool`.
void for_each_subset(Mask pool, int r, const std::function<void(Mask)>& fn) {
  const std::vector<int> el = elements_of(pool);
  const int m = static_cast<int>(el.size());
  if (r < 0 || r > m) return;
  std::vector<int> idx(r);
  for (int a = 0; a < r; ++a) idx[a] = a;
  while (true) {
    Mask sub = 0;
    for (int a : idx) sub |= bit(el[a]);
    fn(sub);
    int a = r - 1;
    while (a >= 0 && idx[a] == m - r + a) --a;
    if (a < 0) return;
    ++idx[a];
    for (int b = a + 1; b < r; ++b) idx[b] = idx[b - 1] + 1;
  }
}

bool is_antichain(const Family& g) {
  const auto m = g.masks();
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = 0; b < m.size(); ++b)
      if (a != b && (m[a] & m[b]) == m[a]) return false;
  return true;
}

Family pick(const std::vector<Family>& v, int i, int n) {
  if (i < 0 || i >= static_cast<int>(v.size())) return Family(n);
  return v[i];
}

void require_surgery_input(const Family& f, int t) {
  if (f.empty() || !is_t_intersecting(f, t) || !is_maximal_t_intersecting(f, t) ||
      !is_left_compressed(f))
    throw Error(ErrorKind::SurgeryPrecondition, "family must be maximal, left-compressed, t-intersecting");
}

// (f minus removed) plus added.
Family replace(const Family& f, const Family& removed, const Family& added) {
  std::vector<Mask> out;
  out.reserve(f.size() + added.size());
  for (Mask m : f)
    if (!removed.contains(m)) out.push_back(m);
  out.insert(out.end(), added.begin(), added.end());
  return Family::uniform(f.n(), f.k(), std::move(out));
}

}  // namespace

Family project(const Family& f, int s) {
  if (s < 0 || s > f.n()) throw Error(ErrorKind::InvalidParams, "projection bound outside [0,n]");
  std::vector<Mask> out;
  out.reserve(f.size());
  const Mask cut = full_mask(s);
  for (Mask m : f) out.push_back(m & cut);
  return Family::general(f.n(), std::move(out));
}

Family minimal_elements(const Family& g) {
  // Ascending masks: a subset always precedes its supersets.
  std::vector<Mask> keep;
  for (Mask m : g) {
    bool dominated = false;
    for (Mask e : keep)
      if ((e & m) == e) {
        dominated = true;
        break;
      }
    if (!dominated) keep.push_back(m);
  }
  return Family::general(g.n(), std::move(keep));
}

Family expand(const Family& g, const Params& params) {
  params.validate();
  const Mask all = full_mask(params.n);
  std::vector<Mask> out;
  for (Mask e : g) {
    const int sz = popcount(e);
    if (sz > params.k) throw Error(ErrorKind::OversizedGenerator, format_set(e) + " exceeds k");
    if ((e & ~all) != 0) throw Error(ErrorKind::MalformedSet, format_set(e) + " outside [n]");
    for_each_subset(all & ~e, params.k - sz, [&](Mask extra) { out.push_back(e | extra); });
  }
  return Family::uniform(params.n, params.k, std::move(out));
}

Family GenSetInfo::layer(int i) const { return pick(layers, i, g.n()); }
Family GenSetInfo::star_layer(int i) const { return pick(star_layers, i, g.n()); }
Family GenSetInfo::stripped_star_layer(int i) const { return pick(stripped_star_layers, i, g.n()); }

GenSetInfo describe_generators(const Family& g, int s) {
  GenSetInfo info;
  info.s = s;
  info.g = g;
  const int n = g.n();
  std::vector<std::vector<Mask>> by_size(s + 1), star(s + 1), stripped(s + 1);
  for (Mask e : g) {
    const int sz = popcount(e);
    if (max_element(e) > s) throw Error(ErrorKind::BadSlice, format_set(e) + " exceeds s");
    by_size[sz].push_back(e);
    if (s >= 1 && (e & bit(s)) != 0) {
      star[sz].push_back(e);
      stripped[sz].push_back(e & ~bit(s));
    }
  }
  for (int i = 0; i <= s; ++i) {
    info.layers.push_back(Family::general(n, std::move(by_size[i])));
    info.star_layers.push_back(Family::general(n, std::move(star[i])));
    info.stripped_star_layers.push_back(Family::general(n, std::move(stripped[i])));
  }
  info.antichain_suspended = !is_antichain(g);
  return info;
}

GenSetInfo generating_set(const Family& f) {
  const int k = require_uniform(f);
  if (f.empty()) throw Error(ErrorKind::EmptyFamily, "generating set of an empty family");
  const Params p{f.n(), k, 1};
  for (int s = 0; s <= f.n(); ++s) {
    Family g = minimal_elements(project(f, s));
    if (expand(g, p) == f) return describe_generators(g, s);
  }
  // s = n always reproduces f.
  throw Error(ErrorKind::DomainError, "no generating set found");
}

Family slice(Mask e, SliceMode mode, int s, const Params& params) {
  params.validate();
  const int sz = popcount(e);
  if (sz > params.k) throw Error(ErrorKind::BadSlice, format_set(e) + " exceeds k");
  int bound = s;
  if (mode == SliceMode::Bracket) {
    if (s < 0 || s > params.n || (e & ~full_mask(s)) != 0)
      throw Error(ErrorKind::BadSlice, format_set(e) + " not inside [s]");
  } else {
    if (e == 0) throw Error(ErrorKind::BadSlice, "script slice of the empty set");
    bound = max_element(e);
    if (bound > params.n) throw Error(ErrorKind::BadSlice, format_set(e) + " outside [n]");
  }
  std::vector<Mask> out;
  for_each_subset(interval_mask(bound + 1, params.n), params.k - sz,
                  [&](Mask extra) { out.push_back(e | extra); });
  return Family::uniform(params.n, params.k, std::move(out));
}

Family slice_union(const Family& es, SliceMode mode, int s, const Params& params) {
  std::vector<Mask> out;
  for (Mask e : es) {
    Family part = slice(e, mode, s, params);
    out.insert(out.end(), part.begin(), part.end());
  }
  return Family::uniform(params.n, params.k, std::move(out));
}

std::pair<Family, Family> surgery_swap(const Family& f, const GenSetInfo& info, int i, int t) {
  const int j = info.s + t - i;
  if (info.star_layer(i).empty()) throw Error(ErrorKind::EmptyStarLayer, "g*_" + std::to_string(i) + " is empty");
  if (i == j) throw Error(ErrorKind::EqualLayers, "i = s+t-i");
  require_surgery_input(f, t);
  const Params p{f.n(), f.k(), t};
  auto one = [&](int a, int b) {
    return replace(f, slice_union(info.star_layer(b), SliceMode::BracketPlus, info.s, p),
                   slice_union(info.stripped_star_layer(a), SliceMode::BracketPlus, info.s, p));
  };
  return {one(i, j), one(j, i)};
}

Family shrink_part(const GenSetInfo& info, int i, int q) {
  std::vector<Mask> out;
  for (Mask e : info.stripped_star_layer(i))
    if ((e & bit(q)) == 0) out.push_back(e);
  return Family::general(info.g.n(), std::move(out));
}

Family surgery_shrink(const Family& f, const GenSetInfo& info, int i, int q, SurgeryVariant variant,
                      int t) {
  if (info.star_layer(i).empty()) throw Error(ErrorKind::EmptyStarLayer, "g*_" + std::to_string(i) + " is empty");
  if (q < 1 || q > info.s - 1) throw Error(ErrorKind::BadVertex, "q outside [s-1]");
  const Family fq = shrink_part(info, i, q);
  if (fq.empty()) throw Error(ErrorKind::EmptyFq, "every member of g*_i' contains q");
  require_surgery_input(f, t);
  const Params p{f.n(), f.k(), t};
  const SliceMode mode = variant == SurgeryVariant::Script ? SliceMode::BracketPlus : SliceMode::Bracket;
  return replace(f, slice_union(info.star_layer(i), mode, info.s, p), slice_union(fq, mode, info.s, p));
}

Family members_of_size(const Family& f, int size) {
  std::vector<Mask> out;
  for (Mask m : f)
    if (popcount(m) == size) out.push_back(m);
  return Family::general(f.n(), std::move(out));
}

Mask raw_shift(Mask e, int i, int j) {
  if ((e & bit(j)) != 0 && (e & bit(i)) == 0) return (e & ~bit(j)) | bit(i);
  return e;
}

std::int64_t swap_zeta_lower_bound(const Family& f, const GenSetInfo& info, int i, int t) {
  const std::int64_t n = f.n(), k = f.k(), s = info.s;
  const std::int64_t j = s + t - i;
  const Family trace = project(f, info.s);
  const Family gi = info.star_layer(i), gj = info.star_layer(static_cast<int>(j));
  const std::int64_t ci = static_cast<std::int64_t>(gi.size());
  const std::int64_t cj = static_cast<std::int64_t>(gj.size());
  auto zeta_s = [&](const Family& star, std::int64_t size) -> std::int64_t {
    if (star.empty() || size < 1) return 0;
    return zeta_at(star, members_of_size(trace, static_cast<int>(size)), static_cast<int>(size - 1), info.s);
  };
  const std::int64_t zi = zeta_s(gi, i), zj = zeta_s(gj, j);
  std::int64_t r = 0;
  r = add_checked(r, mul_checked(ci, mul_checked(binom(n - s, k - i), binom(n - s - k + i, 2))));
  r = add_checked(r, mul_checked(zi, binom(n - s, k - i + 1)));
  r = add_checked(r, mul_checked(mul_checked(ci, (s - i + 1) * (k - i + 1)), binom(n - s, k - i + 1)));
  r = sub_checked(r, mul_checked(cj, mul_checked(binom(n - s, k - j - 1), binom(n - s - k + j + 1, 2))));
  r = sub_checked(r, mul_checked(zj, binom(n - s, k - j)));
  r = sub_checked(r, mul_checked(mul_checked(cj, (s - j) * (k - j + 1)), binom(n - s, k - j)));
  return r;
}

std::int64_t shrink_zeta_lower_bound(const Family& f, const GenSetInfo& info, int i, int q) {
  const std::int64_t n = f.n(), k = f.k(), s = info.s;
  const std::int64_t fq = static_cast<std::int64_t>(shrink_part(info, i, q).size());
  const std::int64_t gi = static_cast<std::int64_t>(info.star_layer(i).size());
  std::int64_t gain = add_checked(mul_checked(fq, mul_checked(binom(n - s, k - i), binom(n - s - k + i, 2))),
                                  mul_checked(mul_checked(fq, (s - i + 1) * (k - i + 1)), binom(n - s, k - i + 1)));
  std::int64_t per = mul_checked(binom(n - s, k - i - 1), binom(n - s - k + i + 1, 2));
  per = add_checked(per, mul_checked((s - i) * i, binom(n - s, k - i)));
  per = add_checked(per, mul_checked((s - i) * (k - i), binom(n - s, k - i)));
  return sub_checked(gain, mul_checked(gi - fq, per));
}

}  // namespace ekr2
