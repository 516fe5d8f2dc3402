#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ekr2/checked.hpp"
#include "ekr2/compress.hpp"
#include "ekr2/constructions.hpp"
#include "ekr2/gensets.hpp"
#include "ekr2/search.hpp"
#include "support.hpp"

using namespace ekr2;
using support::fam;
using support::m;

namespace {

template <class Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an ekr2::Error");
  return ErrorKind::Io;
}

Family gen(int n, std::initializer_list<std::initializer_list<int>> sets) {
  std::vector<Mask> masks;
  for (auto s : sets) masks.push_back(m(s));
  return Family::general(n, masks);
}

const Family star421 = fam(4, 2, {{1, 2}, {1, 3}, {1, 4}});
const Family triangle = fam(4, 2, {{1, 2}, {1, 3}, {2, 3}});

// Naive U(g) cap C([n],k).
Family oracle_expand(const Family& g, int n, int k) {
  std::vector<Mask> out;
  for (const auto& s : support::subsets(n, k)) {
    const Mask x = support::to_mask(s);
    for (Mask e : g)
      if ((x & e) == e) {
        out.push_back(x);
        break;
      }
  }
  return Family::uniform(n, k, out);
}

std::vector<Family> census(const Params& p) {
  std::vector<Family> out;
  for (const Family& f : enumerate_maximal_families(p).families)
    if (is_left_compressed(f)) out.push_back(f);
  return out;
}

}  // namespace

TEST_CASE("projection") {
  CHECK(project(star421, 1) == gen(4, {{1}}));
  const Family a631 = construct(Construction::A, {6, 3, 1});
  CHECK(project(a631, 3) == gen(6, {{1, 2}, {1, 3}, {2, 3}, {1, 2, 3}}));
  CHECK(project(star421, 0) == Family::general(4, {0}));
}

TEST_CASE("minimal elements") {
  CHECK(minimal_elements(gen(3, {{1, 2, 3}, {2, 3}, {1, 3}})) == gen(3, {{2, 3}, {1, 3}}));
  CHECK(minimal_elements(triangle) == triangle);
  CHECK(minimal_elements(Family::general(3, {0, m({1, 2})})) == Family::general(3, {0}));
}

TEST_CASE("expansion") {
  CHECK(expand(gen(4, {{1}}), {4, 2, 1}) == star421);
  const Family a = expand(Family::uniform(6, 2, all_ksets(3, 2)), {6, 3, 1});
  CHECK(a.size() == 10);
  CHECK(a == construct(Construction::A, {6, 3, 1}));
  CHECK(expand(gen(7, {{1, 2}}), {7, 3, 2}) == construct(Construction::Star, {7, 3, 2}));
  CHECK(kind_of([] { expand(gen(5, {{1, 2, 3}}), {5, 2, 1}); }) == ErrorKind::OversizedGenerator);
}

TEST_CASE("generating sets of named families") {
  const GenSetInfo s = generating_set(star421);
  CHECK(s.s == 1);
  CHECK(s.g == gen(4, {{1}}));

  for (int t = 1; t <= 3; ++t) {
    const Params p{2 * t + 4, t + 2, t};
    const GenSetInfo a = generating_set(construct(Construction::A, p));
    CHECK(a.s == t + 2);
    CHECK(a.g == Family::uniform(p.n, t + 1, all_ksets(t + 2, t + 1)));
  }

  const GenSetInfo tri = generating_set(triangle);
  CHECK(tri.s == 3);
  CHECK(tri.g == triangle);

  const GenSetInfo h = generating_set(construct(Construction::H, {6, 3, 1}));
  CHECK(h.s == 4);
  CHECK(h.star_layer(2) == gen(6, {{1, 4}}));
  CHECK(h.star_layer(3) == gen(6, {{2, 3, 4}}));
  CHECK(h.stripped_star_layer(3) == gen(6, {{2, 3}}));
  CHECK(h.layer(9).empty());
  CHECK(kind_of([] { generating_set(Family(4, 2)); }) == ErrorKind::EmptyFamily);
}

TEST_CASE("generating set properties on random families") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 3), k = 2 + static_cast<int>(rng() % 2);
    Family f = support::random_family(n, k, 0.3, rng);
    if (f.empty()) continue;
    const GenSetInfo info = generating_set(f);
    CHECK(oracle_expand(info.g, n, k) == f);
    CHECK(minimal_elements(info.g) == info.g);
    bool touches_s = false;
    for (Mask e : info.g) {
      CHECK(max_element(e) <= info.s);
      touches_s = touches_s || max_element(e) == info.s;
    }
    CHECK(touches_s);
    for (int s2 = 0; s2 < info.s; ++s2) CHECK(oracle_expand(minimal_elements(project(f, s2)), n, k) != f);
    for (Mask e : info.g) CHECK(project(f, info.s).contains(e));
  }
}

TEST_CASE("slices") {
  const Params p{6, 3, 1};
  CHECK(slice(m({1, 3}), SliceMode::Bracket, 3, p) == fam(6, 3, {{1, 3, 4}, {1, 3, 5}, {1, 3, 6}}));
  CHECK(slice(m({1}), SliceMode::BracketPlus, 0, p).size() == 10);
  CHECK(slice(m({1, 3}), SliceMode::Bracket, 3, p) == slice(m({1, 3}), SliceMode::BracketPlus, 3, p));
  CHECK(slice(m({1, 2}), SliceMode::Bracket, 3, p).size() == 3);
  CHECK(slice(m({1, 2}), SliceMode::BracketPlus, 3, p).size() == 4);
  CHECK(kind_of([&] { slice(m({1, 5}), SliceMode::Bracket, 3, p); }) == ErrorKind::BadSlice);
  CHECK(kind_of([&] { slice(0, SliceMode::BracketPlus, 3, p); }) == ErrorKind::BadSlice);
  CHECK(kind_of([&] { slice(m({1, 2, 3, 4}), SliceMode::Bracket, 4, p); }) == ErrorKind::BadSlice);
  CHECK(slice_union(gen(6, {{1, 3}, {2, 3}}), SliceMode::Bracket, 3, p).size() == 6);
}

TEST_CASE("swap surgery") {
  const Params p{6, 3, 1};
  const Family h = construct(Construction::H, p);
  const GenSetInfo info = generating_set(h);
  const auto [f1, f2] = surgery_swap(h, info, 2, 1);
  CHECK(f1 == construct(Construction::Star, p));
  CHECK(f1.size() == 10);
  CHECK(static_cast<std::int64_t>(f1.size()) ==
        static_cast<std::int64_t>(h.size()) + 1 * binom(2, 2) - 1 * binom(2, 0));
  CHECK(is_t_intersecting(f2, 1));

  CHECK(kind_of([&] { surgery_swap(h, info, 1, 1); }) == ErrorKind::EmptyStarLayer);
  const Params q{8, 4, 2};
  const Family hq = construct(Construction::H, q);
  const GenSetInfo iq = generating_set(hq);
  // j = s + t - i = i at i = (s+t)/2
  if ((iq.s + 2) % 2 == 0 && !iq.star_layer((iq.s + 2) / 2).empty())
    CHECK(kind_of([&] { surgery_swap(hq, iq, (iq.s + 2) / 2, 2); }) == ErrorKind::EqualLayers);
  const Family not_compressed = fam(4, 2, {{1, 4}, {2, 4}, {3, 4}});
  CHECK(kind_of([&] { surgery_swap(not_compressed, generating_set(not_compressed), 2, 1); }) ==
        ErrorKind::SurgeryPrecondition);
}

TEST_CASE("shrink surgery") {
  const Params p{6, 3, 1};
  const Family a = construct(Construction::A, p);
  const GenSetInfo info = generating_set(a);
  CHECK(info.star_layer(2) == gen(6, {{1, 3}, {2, 3}}));
  CHECK(shrink_part(info, 2, 1) == gen(6, {{2}}));
  const Family f3 = surgery_shrink(a, info, 2, 1, SurgeryVariant::Script, 1);
  CHECK(f3.size() == 10);
  std::vector<Mask> star2;
  for (Mask x : all_ksets(6, 3))
    if (x & m({2})) star2.push_back(x);
  CHECK(f3 == Family::uniform(6, 3, star2));
  CHECK(1 * binom(4, 2) - 2 * binom(3, 1) == 0);
  // the plain slice of {2} stops at s, so it keeps fewer sets
  CHECK(surgery_shrink(a, info, 2, 1, SurgeryVariant::Plain, 1).size() == 7);

  CHECK(kind_of([&] { surgery_shrink(a, info, 1, 1, SurgeryVariant::Script, 1); }) == ErrorKind::EmptyStarLayer);
  // q = 3 = s is outside [s-1]; q inside every stripped member gives an empty f_q
  const Family h = construct(Construction::H, p);
  const GenSetInfo hi = generating_set(h);
  CHECK(kind_of([&] { surgery_shrink(h, hi, 2, 1, SurgeryVariant::Script, 1); }) == ErrorKind::EmptyFq);
  CHECK(kind_of([&] { surgery_shrink(triangle, generating_set(triangle), 2, 1, SurgeryVariant::Script, 2); }) ==
        ErrorKind::SurgeryPrecondition);
}

TEST_CASE("structure of maximal left-compressed families") {
  for (const Params p : {Params{6, 3, 2}, Params{7, 3, 2}, Params{6, 3, 1}}) {
    for (const Family& f : census(p)) {
      const GenSetInfo info = generating_set(f);
      const int s = info.s, t = p.t;
      // members of g pairwise t-intersect
      for (Mask a : info.g)
        for (Mask b : info.g) CHECK(popcount(a & b) >= t);
      // script slices partition f
      std::vector<Mask> all;
      for (Mask e : info.g)
        for (Mask x : slice(e, SliceMode::BracketPlus, s, p)) all.push_back(x);
      CHECK(all.size() == f.size());
      CHECK(Family::uniform(p.n, p.k, all) == f);
      // star-layer duality with a witness pair
      for (int i = 0; i <= s; ++i) {
        if (info.star_layer(i).empty()) continue;
        const int j = s + t - i;
        REQUIRE(!info.star_layer(j).empty());
        bool witnessed = false;
        for (Mask a : info.star_layer(i))
          for (Mask b : info.star_layer(j))
            witnessed = witnessed || (popcount(a & b) == t && (a | b) == interval_mask(1, s));
        CHECK(witnessed);
      }
      // surgeries keep t-intersection and their size identities
      for (int i = 0; i <= s; ++i) {
        const Family gi = info.star_layer(i);
        if (gi.empty()) continue;
        const int j = s + t - i;
        const auto gsz = [](const Family& x) { return static_cast<std::int64_t>(x.size()); };
        const std::int64_t fs = gsz(f);
        if (j != i) {
          const auto [f1, f2] = surgery_swap(f, info, i, t);
          CHECK(support::oracle::t_intersecting(f1, t));
          CHECK(support::oracle::t_intersecting(f2, t));
          CHECK(gsz(f1) == fs + gsz(gi) * binom(p.n - s, p.k - i + 1) -
                               gsz(info.star_layer(j)) * binom(p.n - s, p.k + i - s - t));
        }
        // the shrink assumes a generating set of one size
        const bool one_size = std::all_of(info.g.begin(), info.g.end(), [&](Mask e) { return popcount(e) == i; });
        for (int q = 1; q < s && one_size; ++q) {
          const Family fq = shrink_part(info, i, q);
          if (fq.empty()) continue;
          const Family f3 = surgery_shrink(f, info, i, q, SurgeryVariant::Script, t);
          CHECK(support::oracle::t_intersecting(f3, t));
          CHECK(gsz(f3) - fs == gsz(fq) * binom(p.n - s + 1, p.k - i + 1) - gsz(gi) * binom(p.n - s, p.k - i));
          const std::int64_t dz = support::oracle::zeta(f3) - support::oracle::zeta(f);
          CHECK(dz >= shrink_zeta_lower_bound(f, info, i, q));
        }
      }
    }
  }
}
