#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ekr2/metrics.hpp"
#include "ekr2/verify.hpp"
#include "support.hpp"

using namespace ekr2;
using support::fam;

namespace {

std::string detail(const Verdict& v, const std::string& key) {
  for (const auto& [k, val] : v.details)
    if (k == key) return val;
  return {};
}

CheckOptions random_opts(std::uint64_t seed, int trials) {
  CheckOptions o;
  o.mode = Mode::Random;
  o.seed = seed;
  o.trials = trials;
  return o;
}

// Everything but the timing.
bool same_record(const Verdict& a, const Verdict& b) {
  return a.claim == b.claim && a.params == b.params && a.extra == b.extra && a.status == b.status &&
         a.bound == b.bound && a.measured == b.measured && a.witnesses == b.witnesses &&
         a.witness_points == b.witness_points && a.details == b.details && a.skipped_reason == b.skipped_reason;
}

}  // namespace

TEST_CASE("claim registry") {
  const auto& ids = claim_ids();
  CHECK(ids.size() == 18);
  CHECK(ids.front() == "thm13");
  CHECK(is_claim("conj71"));
  CHECK_FALSE(is_claim("thm18"));
  CHECK_THROWS_AS(check_claim("thm18", {5, 2, 1}), Error);
  CHECK(parse_mode("compressed_only") == Mode::CompressedOnly);
  CHECK(to_string(Status::TightEquality) == "TightEquality");
  try {
    CheckOptions o;
    o.mode = Mode::Random;
    check_claim("lem21", {6, 3, 1}, o);
    FAIL("random mode without a seed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadClaimArgs);
  }
}

TEST_CASE("identity on a given family") {
  CheckOptions o;
  o.family = fam(4, 2, {{1, 2}, {1, 3}, {2, 3}});
  const Verdict v = check_claim("lem21", {4, 2, 1}, o);
  CHECK(v.status == Status::Confirmed);
  CHECK(v.measured == Rational(12));
  CHECK(v.bound == Rational(12));
  CHECK(check_claim("lem21", {8, 4, 1}, random_opts(3, 100)).status == Status::Confirmed);
}

TEST_CASE("bound claims on full censuses") {
  const Verdict a = check_claim("thm13", {5, 2, 1});
  CHECK(a.status == Status::Confirmed);
  CHECK(a.measured == Rational(20));
  CHECK(a.witnesses.size() == 1);

  const Verdict b = check_claim("thm13", {4, 2, 1});
  CHECK(b.status == Status::TightEquality);
  CHECK(b.measured == Rational(12));
  CHECK(b.witnesses.size() == 2);

  const Verdict c = check_claim("thm13", {6, 3, 2});
  CHECK(c.status == Status::TightEquality);
  CHECK(c.measured == Rational(24));
  CHECK(c.witnesses.size() == 2);

  CHECK(check_claim("thm13", {8, 3, 2}).measured == Rational(48));
  const Verdict z = check_claim("thm14", {5, 2, 1});
  CHECK(z.status == Status::Confirmed);
  CHECK(z.measured == Rational(6));

  const Verdict h = check_claim("thm15", {7, 3, 1});
  CHECK(h.status == Status::TightEquality);
  CHECK(h.measured == Rational(13));
  CHECK(h.witnesses.size() == 2);

  CHECK(check_claim("thm16", {7, 3, 2}).status == Status::Confirmed);
  CHECK(check_claim("thm17", {8, 3, 2}).status == Status::Confirmed);
  CHECK(check_claim("conj71", {7, 3, 1}).status == Status::Confirmed);

  const Verdict hyp = check_claim("thm16", {6, 2, 2});
  CHECK(hyp.status == Status::Skipped);
  CHECK(hyp.skipped_reason == "hypothesis");

  const Verdict big = check_claim("thm13", {12, 4, 2});
  CHECK(big.status == Status::Skipped);
  CHECK(big.skipped_reason == "budget");
  CHECK(exit_code_for({big}) == 3);
}

TEST_CASE("shift monotonicity") {
  CHECK(check_claim("lem22", {7, 3, 1}, random_opts(1, 50)).status == Status::Confirmed);
  CHECK(check_claim("cor23", {8, 3, 2}, random_opts(2, 50)).status == Status::Confirmed);
  CHECK(check_claim("lem22", {6, 3, 2}).status == Status::Confirmed);
}

TEST_CASE("generating-set structure and surgeries") {
  for (const Params p : {Params{6, 3, 2}, Params{7, 3, 2}}) {
    const Verdict v = check_claim("lem31", p);
    CHECK(v.status == Status::Confirmed);
    CHECK(v.witnesses.empty());
  }
  CHECK(check_claim("lem32", {7, 3, 1}).status == Status::Confirmed);
  const Verdict skip = check_claim("lem32", {6, 3, 2});
  CHECK(skip.status == Status::Skipped);
  CHECK(skip.skipped_reason == "no applicable instance");
  CHECK(exit_code_for({skip}) == 0);

  const Verdict s = check_claim("lem33", {8, 3, 2});
  CHECK(s.status == Status::Confirmed);
  CheckOptions plain;
  plain.args["plain"] = 1;
  const Verdict pl = check_claim("lem33", {8, 3, 2}, plain);
  CHECK(pl.status == Status::Deviation);
  CHECK_FALSE(pl.witnesses.empty());
  CHECK(detail(pl, "primary_variant") == "plain");
}

TEST_CASE("arithmetic claims") {
  const Verdict l41 = check_claim("lem41", {9, 4, 2});
  CHECK(l41.status == Status::Confirmed);
  const Verdict l42 = check_claim("lem42", {9, 4, 2});
  CHECK(l42.status == Status::Counterexample);
  REQUIRE_FALSE(l42.witness_points.empty());
  CHECK(l42.witness_points.front().find("i=2") != std::string::npos);
  const Verdict l43 = check_claim("lem43", {9, 4, 2});
  CHECK(l43.status == Status::Counterexample);
  const Verdict ex = check_claim("lem43", {6, 3, 2});
  CHECK(detail(ex, "excluded_point") == "i=3 f=-2");
  CHECK(check_claim("lem41", {9, 4, 1}).status == Status::Skipped);
}

TEST_CASE("star versus A") {
  for (int t = 1; t <= 3; ++t) {
    const Verdict v = check_claim("lem44", {2 * t + 2, t + 1, t});
    CHECK(v.status == Status::TightEquality);
    CHECK(v.witnesses.size() == 2);
  }
  CHECK(check_claim("lem44", {9, 3, 2}).status == Status::Confirmed);
  CHECK(check_claim("lem44", {10, 4, 2}).status == Status::Confirmed);
}

TEST_CASE("ladder") {
  CheckOptions o;
  o.args["s"] = 3;
  const Verdict v = check_claim("lem51", {8, 3, 2}, o);
  CHECK(v.status == Status::Deviation);
  CHECK(v.bound == Rational(-31));
  CHECK(v.measured == Rational(-29));
  CHECK(v.witnesses.size() == 2);
  CHECK(tight_paths(v.witnesses[0]) == 35);
  CHECK(tight_paths(v.witnesses[1]) == 6);
  CHECK(detail(v, "s=3").find("slow_measured=-29") != std::string::npos);
  CHECK(exit_code_for({v}) == 1);
  o.args["s"] = 5;
  CHECK_THROWS_AS(check_claim("lem51", {8, 3, 2}, o), Error);
}

TEST_CASE("Bey") {
  CheckOptions o;
  o.family = fam(4, 2, {{1, 2}, {1, 3}, {1, 4}});
  o.args["l"] = 1;
  const Verdict v = check_claim("bey", {4, 2, 1}, o);
  CHECK(v.status == Status::Confirmed);
  CHECK(v.bound == Rational(12));
  CHECK(v.measured == Rational(12));
  CHECK(check_claim("bey", {8, 4, 1}, random_opts(9, 100)).status == Status::Confirmed);
}

TEST_CASE("grids") {
  const Grid g = parse_grid("n=4..6;k=2;t=1");
  CHECK(g.points().size() == 3);
  CHECK(parse_grid("n=4,6;k=2..3;t=1").points().size() == 4);
  // invalid points are dropped
  CHECK(parse_grid("n=4;k=2..5;t=1..3").points().size() == 8);
  for (const char* bad : {"", "n=4..6;k=2", "n=6..4;k=2;t=1", "n=x;k=2;t=1", "n=4;k=2;t=1;q=2", "n=4;n=5;k=2;t=1"}) {
    try {
      parse_grid(bad);
      FAIL("accepted " << bad);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::BadGrid);
    }
  }

  const auto vs = run_grid({"thm13"}, g, {});
  REQUIRE(vs.size() == 3);
  CHECK(vs[0].status == Status::TightEquality);
  CHECK(vs[1].status == Status::Confirmed);
  CHECK(vs[2].status == Status::Confirmed);
  CHECK(exit_code_for(vs) == 0);
  CHECK(exit_code_for({}) == 0);

  const auto eq = run_grid({"lem44"}, parse_grid("n=4;k=2;t=1"), {});
  CHECK(eq.front().status == Status::TightEquality);

  CheckOptions one, four;
  four.workers = 4;
  const Grid wide = parse_grid("n=5..8;k=2..3;t=1..2");
  const auto a = run_grid({"thm13", "thm14", "thm16", "lem44"}, wide, one);
  const auto b = run_grid({"thm13", "thm14", "thm16", "lem44"}, wide, four);
  REQUIRE(a.size() == b.size());
  for (std::size_t x = 0; x < a.size(); ++x) CHECK(same_record(a[x], b[x]));
  // grouped by claim in the order given, points ascending within a claim
  const std::size_t per = wide.points().size();
  for (std::size_t x = 0; x < a.size(); ++x) {
    CHECK(a[x].claim == std::vector<std::string>{"thm13", "thm14", "thm16", "lem44"}[x / per]);
    CHECK(a[x].params == wide.points()[x % per]);
  }
}

TEST_CASE("reproducibility") {
  const auto o = random_opts(77, 40);
  CHECK(same_record(check_claim("cor23", {8, 3, 1}, o), check_claim("cor23", {8, 3, 1}, o)));
  CHECK(same_record(check_claim("thm13", {6, 2, 1}), check_claim("thm13", {6, 2, 1})));
}

TEST_CASE("slow paths") {
  CHECK(slow::maximal_families({4, 2, 1}).size() == 8);
  CHECK(slow::maximal_families({5, 2, 1}).size() == 15);
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Family f = support::random_family(7, 3, 0.3, gen);
    CHECK(slow::co2(f) == co2(f));
    CHECK(slow::zeta(f) == tight_paths(f));
    CHECK(slow::t_intersecting(f, 1) == is_t_intersecting(f, 1));
  }
}
