#pragma once

// The claim engine: every checked statement maps to an executable test at
// one parameter point, producing a Verdict.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ekr2/checked.hpp"
#include "ekr2/constructions.hpp"
#include "ekr2/search.hpp"
#include "ekr2/setfam.hpp"

namespace ekr2 {

enum class Status { Confirmed, TightEquality, Counterexample, Deviation, Skipped };
enum class Mode { Exhaustive, CompressedOnly, Random };

std::string_view to_string(Status s);
std::string_view to_string(Mode m);
std::optional<Mode> parse_mode(std::string_view name);

struct Verdict {
  std::string claim;
  Params params;
  /// Claim-specific arguments beyond (n,k,t), e.g. s or l.
  ArgRecord extra;
  Mode mode = Mode::Exhaustive;
  std::optional<std::uint64_t> seed;
  int trials = 0;
  Status status = Status::Skipped;
  std::optional<Rational> bound;
  std::optional<Rational> measured;
  /// Canonical forms for enumeration claims, raw families otherwise.
  std::vector<Family> witnesses;
  /// Argument tuples witnessing failures of the arithmetic claims.
  std::vector<std::string> witness_points;
  /// Ordered auxiliary measurements.
  std::vector<std::pair<std::string, std::string>> details;
  std::optional<std::string> skipped_reason;
  std::int64_t elapsed_ms = 0;

  void note(std::string key, std::string value) { details.emplace_back(std::move(key), std::move(value)); }
};

/// All claim identifiers, in canonical order.
const std::vector<std::string>& claim_ids();
bool is_claim(std::string_view id);

struct CheckOptions {
  Mode mode = Mode::Exhaustive;
  /// Required for Mode::Random.
  std::optional<std::uint64_t> seed;
  int trials = 200;
  double density = 0.5;
  int workers = 1;
  std::size_t vertex_budget = kDefaultVertexBudget;
  std::optional<std::size_t> clique_cap;
  /// Claim-specific arguments (s, l, i, q, variant, span, ...).
  ArgRecord args;
  /// Check this family instead of an enumeration or random sample.
  std::optional<Family> family;
};

/// Throws BadClaimArgs for unknown ids or inconsistent arguments.
Verdict check_claim(std::string_view id, const Params& params, const CheckOptions& opts = {});

/// Parameter ranges, e.g. "n=4..9;k=2..4;t=1..3" or "n=4,6;k=2;t=1".
struct Grid {
  std::vector<int> n, k, t;
  /// Valid (n,k,t) points in ascending order.
  std::vector<Params> points() const;
};

/// Throws BadGrid.
Grid parse_grid(std::string_view text);

/// One Verdict per (claim, point), ordered by claim then params.
std::vector<Verdict> run_grid(const std::vector<std::string>& claims, const Grid& grid, const CheckOptions& opts);

/// 0 all good, 1 Counterexample/Deviation present, 3 budget skips or truncation.
int exit_code_for(const std::vector<Verdict>& verdicts);

// Independent slow paths: definition-level recounts sharing no code with
// the fast metrics, used to adjudicate Counterexample/Deviation verdicts.
namespace slow {
std::int64_t co2(const Family& f);
std::int64_t zeta(const Family& f);
bool t_intersecting(const Family& f, int t);
/// Labeled maximal t-intersecting families by scanning all subfamilies.
/// Feasible only for C(n,k) <= 22.
std::vector<Family> maximal_families(const Params& p);
}  // namespace slow

}  // namespace ekr2
