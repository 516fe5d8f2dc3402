#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ekr2/search.hpp"
#include "ekr2/setfam.hpp"
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

const Family star421 = fam(4, 2, {{1, 2}, {1, 3}, {1, 4}});
const Family triangle = fam(4, 2, {{1, 2}, {1, 3}, {2, 3}});

}  // namespace

TEST_CASE("params validity") {
  CHECK_NOTHROW(Params{4, 2, 1}.validate());
  CHECK(kind_of([] { Params{4, 2, 3}.validate(); }) == ErrorKind::InvalidParams);
  CHECK(kind_of([] { Params{3, 4, 1}.validate(); }) == ErrorKind::InvalidParams);
  CHECK(kind_of([] { Params{65, 2, 1}.validate(); }) == ErrorKind::InvalidParams);
  CHECK(kind_of([] { Params{4, 2, 0}.validate(); }) == ErrorKind::InvalidParams);
  CHECK(Params{8, 3, 2}.n0() == 6);
}

TEST_CASE("vertex sets") {
  const int xs[] = {1, 3, 4};
  const VertexSet v = VertexSet::from_elements(xs, 6);
  CHECK(v.size() == 3);
  CHECK(v.max_element() == 4);
  CHECK(v.contains(3));
  CHECK_FALSE(v.contains(2));
  CHECK(v.elements() == std::vector<int>{1, 3, 4});
  CHECK(format_set(v.mask()) == "{1,3,4}");
  CHECK_THROWS_AS(VertexSet(m({7}), 6), Error);
}

TEST_CASE("parse") {
  const Family f = parse_family("n=4 k=2\n1 2\n1 3\n1 4");
  CHECK(f.size() == 3);
  CHECK(f.n() == 4);
  CHECK(f.k() == 2);
  CHECK(f == star421);

  CHECK(kind_of([] { parse_family("n=4 k=2\n1 2\n1 3\n1 2\n"); }) == ErrorKind::DuplicateSet);
  CHECK(kind_of([] { parse_family("n=4 k=3\n1 2 2\n"); }) == ErrorKind::MalformedSet);
  CHECK(kind_of([] { parse_family("n=4 k=2\n2 1\n"); }) == ErrorKind::MalformedSet);
  CHECK(kind_of([] { parse_family("n=4 k=2\n1 5\n"); }) == ErrorKind::MalformedSet);
  CHECK(kind_of([] { parse_family("n=4 k=2\n1 2 3\n"); }) == ErrorKind::MalformedSet);
  CHECK(kind_of([] { parse_family("n=4 k=2\n1 x\n"); }) == ErrorKind::MalformedSet);
  CHECK(kind_of([] { parse_family("k=2\n1 2\n"); }) == ErrorKind::MalformedHeader);
  CHECK(kind_of([] { parse_family("n=99 k=2\n"); }) == ErrorKind::MalformedHeader);
  CHECK(kind_of([] { parse_family(""); }) == ErrorKind::MalformedHeader);

  SUBCASE("comments, blank lines and members in any order") {
    const Family g = parse_family("# star\n\nn=4 k=2\n1 4\n# mid\n1 2\n\n1 3\n");
    CHECK(g == star421);
  }
  SUBCASE("uniformity inferred without k") {
    const Family g = parse_family("n=5\n1 2\n3 4\n");
    CHECK(g.is_uniform());
    CHECK(g.k() == 2);
    const Family h = parse_family("n=5\n1 2\n3 4 5\n");
    CHECK_FALSE(h.is_uniform());
  }
}

TEST_CASE("emit") {
  CHECK(emit_family(star421) == "n=4 k=2\n1 2\n1 3\n1 4\n");
  CHECK(emit_family(Family(5, 3)) == "n=5 k=3\n");
  CHECK(parse_family(emit_family(Family(5, 3))) == Family(5, 3));

  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(gen() % 6);
    const int k = 1 + static_cast<int>(gen() % n);
    const Family f = support::random_family(n, k, 0.4, gen);
    const std::string text = emit_family(f);
    const Family back = parse_family(text);
    CHECK(back == f);
    CHECK(emit_family(back) == text);
  }
}

TEST_CASE("family invariants") {
  const Family f = Family::uniform(4, 2, {m({1, 4}), m({1, 2}), m({1, 4}), m({1, 3})});
  CHECK(f.size() == 3);
  CHECK(std::is_sorted(f.begin(), f.end()));
  CHECK(f.contains(m({1, 3})));
  CHECK_FALSE(f.contains(m({2, 3})));
  CHECK(f.common_intersection() == m({1}));
  CHECK_THROWS_AS(Family::uniform(4, 2, {m({1, 2, 3})}), Error);
  CHECK(kind_of([] { Family::general(3, {m({1}), m({1, 2})}).k(); }) == ErrorKind::NonUniformFamily);
}

TEST_CASE("t-intersection") {
  CHECK(is_t_intersecting(star421, 1));
  CHECK_FALSE(is_t_intersecting(fam(4, 2, {{1, 2}, {3, 4}}), 1));
  const Family k43 = Family::uniform(6, 3, all_ksets(4, 3));
  CHECK(is_t_intersecting(k43, 2));
  CHECK(is_t_intersecting(Family(4, 2), 1));
  CHECK(kind_of([] { is_t_intersecting(Family::general(3, {m({1}), m({1, 2})}), 1); }) ==
        ErrorKind::NonUniformFamily);
}

TEST_CASE("triviality") {
  const auto s = is_trivial(star421, 1);
  CHECK(s.trivial);
  REQUIRE(s.witness);
  CHECK(*s.witness == m({1}));
  CHECK_FALSE(is_trivial(triangle, 1).trivial);
  CHECK_FALSE(is_trivial(Family::uniform(6, 3, all_ksets(4, 3)), 2).trivial);
  const auto w = is_trivial(fam(6, 3, {{1, 2, 3}, {1, 2, 3}}), 2);
  REQUIRE(w.witness);
  CHECK(*w.witness == m({1, 2}));
  CHECK(kind_of([] { is_trivial(Family(4, 2), 1); }) == ErrorKind::EmptyFamily);

  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Family f = support::random_t_family(6, 3, 1, 0.3, gen);
    if (f.empty()) continue;
    if (is_trivial(f, 1).trivial) CHECK(is_t_intersecting(f, 1));
  }
}

TEST_CASE("maximality and closure") {
  CHECK(is_maximal_t_intersecting(star421, 1));
  CHECK_FALSE(is_maximal_t_intersecting(fam(4, 2, {{1, 2}}), 1));
  CHECK(is_maximal_t_intersecting(triangle, 1));
  CHECK(kind_of([] { is_maximal_t_intersecting(fam(4, 2, {{1, 2}, {3, 4}}), 1); }) ==
        ErrorKind::NotTIntersecting);

  CHECK(maximal_closure(fam(4, 2, {{1, 2}}), 1) == star421);
  CHECK(maximal_closure(fam(4, 2, {{2, 3}}), 1) == triangle);
  CHECK(maximal_closure(Family(4, 2), 1) == star421);
  CHECK(kind_of([] { maximal_closure(fam(4, 2, {{1, 2}, {3, 4}}), 1); }) == ErrorKind::NotTIntersecting);

  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 100; ++trial) {
    const int t = 1 + static_cast<int>(trial % 2);
    const Family f = support::random_t_family(7, 3, t, 0.2, gen);
    const Family c = maximal_closure(f, t);
    CHECK(is_maximal_t_intersecting(c, t));
    CHECK(support::oracle::t_intersecting(c, t));
    for (Mask x : f) CHECK(c.contains(x));
  }
}

TEST_CASE("canonical form") {
  CHECK(canonical_form(fam(4, 2, {{1, 3}, {1, 4}, {3, 4}})) == triangle);
  CHECK(canonical_form(fam(4, 2, {{1, 4}, {2, 4}, {3, 4}})) == star421);
  CHECK(canonical_form(Family(5, 2)) == Family(5, 2));

  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Family f = maximal_closure(support::random_t_family(7, 3, 1, 0.15, gen), 1);
    const Family c = canonical_form(f);
    CHECK(canonical_form(c) == c);
    for (int r = 0; r < 100; ++r) {
      const auto perm = support::random_perm(7, gen);
      REQUIRE(canonical_form(permute(f, perm)) == c);
    }
  }
}

TEST_CASE("isomorphism agrees with full relabeling minimum") {
  // All maximal families at two census points, compared pairwise.
  for (const Params p : {Params{5, 2, 1}, Params{6, 3, 2}, Params{6, 2, 1}}) {
    const auto fams = enumerate_maximal_families(p).families;
    std::vector<std::vector<support::Set>> full;
    for (const Family& f : fams) full.push_back(support::oracle::full_canonical(f));
    for (std::size_t a = 0; a < fams.size(); ++a)
      for (std::size_t b = a; b < fams.size(); ++b) REQUIRE(isomorphic(fams[a], fams[b]) == (full[a] == full[b]));
  }
}

TEST_CASE("all k-sets") {
  const auto v = all_ksets(5, 2);
  CHECK(v.size() == 10);
  CHECK(std::is_sorted(v.begin(), v.end()));
  CHECK(all_ksets(4, 0) == std::vector<Mask>{0});
}
