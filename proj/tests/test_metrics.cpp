#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ekr2/checked.hpp"
#include "ekr2/constructions.hpp"
#include "ekr2/metrics.hpp"
#include "support.hpp"

using namespace ekr2;
using support::fam;
using support::m;

namespace {

const Family star421 = fam(4, 2, {{1, 2}, {1, 3}, {1, 4}});
const Family triangle = fam(4, 2, {{1, 2}, {1, 3}, {2, 3}});

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("binomials and rationals") {
  CHECK(binom(5, 2) == 10);
  CHECK(binom(5, -1) == 0);
  CHECK(binom(3, 5) == 0);
  CHECK(binom(-2, 1) == 0);
  CHECK(binom(0, 0) == 1);
  CHECK(binom(62, 31) == 465428353255261088LL);
  CHECK_THROWS_AS(binom(100, 50), Error);
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(1, -2) < Rational(0));
  CHECK(Rational(3, 2) + Rational(1, 2) == Rational(2));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK_THROWS_AS(mul_checked(INT64_MAX, 2), Error);
}

TEST_CASE("codegree vectors") {
  const CodegreeVector v = codegree_vector(star421, 1);
  CHECK(v.entries.size() == 4);
  CHECK(v.at(m({1})) == 3);
  CHECK(v.at(m({2})) == 1);
  CHECK(v.at(m({3})) == 1);
  CHECK(v.at(m({4})) == 1);

  const CodegreeVector w = codegree_vector(fam(3, 3, {{1, 2, 3}}), 2);
  CHECK(w.entries.size() == 3);
  for (Mask e : {m({1, 2}), m({1, 3}), m({2, 3})}) CHECK(w.at(e) == 1);

  CHECK(codegree_vector(star421, 0).at(0) == 3);
  CHECK(kind_of([] { codegree_vector(star421, 3); }) == ErrorKind::BadEll);

  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + static_cast<int>(gen() % 5), k = 1 + static_cast<int>(gen() % 4);
    if (k > n) continue;
    const Family f = support::random_family(n, k, 0.4, gen);
    for (int ell = 0; ell <= k; ++ell) {
      const CodegreeVector cv = codegree_vector(f, ell);
      CHECK(cv.sum() == binom(k, ell) * static_cast<std::int64_t>(f.size()));
      CHECK(cv.sum_of_squares() == support::oracle::codegree_sq(f, ell));
      for (const auto& [e, d] : cv.entries) {
        CHECK(popcount(e) == ell);
        CHECK(d > 0);
      }
    }
  }
}

TEST_CASE("co2") {
  CHECK(co2(star421) == 12);
  CHECK(co2(triangle) == 12);
  CHECK(co2(Family(4, 2)) == 0);
}

TEST_CASE("zeta") {
  CHECK(zeta(star421, star421, 1) == 3);
  const Family k43 = Family::uniform(8, 3, all_ksets(4, 3));
  CHECK(zeta(k43, k43, 2) == 6);
  const Family one = fam(3, 3, {{1, 2, 3}});
  CHECK(zeta(one, one, 2) == 0);
  CHECK(kind_of([&] { zeta(star421, star421, 2); }) == ErrorKind::SizeMismatch);

  SUBCASE("distinct families") {
    const Family a = fam(4, 2, {{1, 2}, {3, 4}});
    const Family b = fam(4, 2, {{1, 2}, {1, 3}});
    // 12-13, 34-13; the shared member 12 forms no pair with itself
    CHECK(zeta(a, b, 1) == 2);
  }
}

TEST_CASE("zeta at a vertex") {
  CHECK(zeta_at(star421, star421, 1, 1) == 3);
  CHECK(zeta_at(star421, star421, 1, 2) == 0);
  const Family k43 = Family::uniform(4, 3, all_ksets(4, 3));
  CHECK(zeta_at(k43, k43, 2, 4) == 3);
  CHECK(kind_of([&] { zeta_at(star421, star421, 1, 5); }) == ErrorKind::BadVertex);
  CHECK(kind_of([&] { zeta_at(star421, star421, 1, 0); }) == ErrorKind::BadVertex);
}

TEST_CASE("metric identities on random families") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 4 + static_cast<int>(gen() % 5), k = 2 + static_cast<int>(gen() % 3);
    if (k > n) continue;
    const Family f = support::random_family(n, k, 0.35, gen);
    const std::int64_t z = tight_paths(f);
    CHECK(z == support::oracle::zeta(f));
    CHECK(co2(f) == support::oracle::co2(f, k));
    // co2 = k|F| + 2 zeta
    CHECK(co2(f) == k * static_cast<std::int64_t>(f.size()) + 2 * z);
    std::int64_t sum_at = 0;
    for (int v = 1; v <= n; ++v) sum_at += zeta_at(f, f, k - 1, v);
    CHECK(sum_at == (k - 1) * z);
    const auto perm = support::random_perm(n, gen);
    CHECK(co2(permute(f, perm)) == co2(f));
  }
}

TEST_CASE("Bey's bound on random families") {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + static_cast<int>(gen() % 5), k = 2 + static_cast<int>(gen() % 3);
    if (k >= n) continue;
    const Family f = support::random_family(n, k, 0.5, gen);
    for (int ell = 0; ell <= k; ++ell) {
      const Rational lhs(codegree_vector(f, ell).sum_of_squares());
      CHECK(lhs <= bey_rhs(n, k, ell, static_cast<std::int64_t>(f.size())));
    }
  }
  // equality instance
  CHECK(bey_rhs(4, 2, 1, 3) == Rational(12));
  CHECK(codegree_vector(star421, 1).sum_of_squares() == 12);
  CHECK_THROWS_AS(bey_rhs(3, 3, 3, 1), Error);
}
