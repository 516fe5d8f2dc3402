#pragma once

// Named extremal families and the exact closed forms that bound them.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ekr2/checked.hpp"
#include "ekr2/gensets.hpp"
#include "ekr2/setfam.hpp"

namespace ekr2 {

enum class Construction { Star, A, H, Fs, Complement };

std::optional<Construction> parse_construction(std::string_view name);
std::string_view to_string(Construction c);

/// Builds the named family literally from its definition:
///   star        [t] inside F
///   a           |F cap [t+2]| >= t+1
///   h           [t] inside F meeting [t+1,k+1], plus [k+1] \ {i}, i in [t]
///   fs          up-closure of {[t]+l : l in [t+1,s]} + {[s]\l : l in [t]}
///   complement  {[n] \ G : G in base}
Family construct(Construction kind, const Params& params, std::optional<int> s = std::nullopt,
                 const Family* base = nullptr);

/// The stated generator list of the ladder family at index s, not minimized.
Family ladder_generators(const Params& params, int s);
/// Its decomposition; antichain_suspended is set where the list is not an
/// antichain (s = t+1).
GenSetInfo ladder_info(const Params& params, int s);

/// Named integer arguments for closed forms, inequalities and claims.
using ArgRecord = std::map<std::string, std::int64_t, std::less<>>;

/// Throws MissingArg.
std::int64_t require_arg(const ArgRecord& args, std::string_view name);

enum class ClosedForm {
  Thm13Bound,
  Thm14Bound,
  HmBound,
  Eq3StarCo2,
  Eq4ACo2,
  BeyRhs,
  Lem31vDelta,
  Lem42cDelta,
  Lem51Delta,
  N0Threshold,
};

std::optional<ClosedForm> parse_closed_form(std::string_view name);
std::string_view to_string(ClosedForm id);
/// Argument names each closed form reads.
std::vector<std::string> closed_form_args(ClosedForm id);

Rational closed_form(ClosedForm id, const ArgRecord& args);

// Direct integer entry points for the common forms.
std::int64_t thm13_bound(int n, int k, int t);
Rational thm14_bound(int n, int k, int t);
std::int64_t hm_bound(int n, int k);
std::int64_t eq3_star_co2(int n, int k, int t);
std::int64_t eq4_a_co2(int n, int k, int t);
Rational bey_rhs(int n, int k, int ell, std::int64_t m);
std::int64_t lem51_delta(int n, int k, int t, int s);

enum class InequalityId { Lem41, Lem42, Lem43 };

std::optional<InequalityId> parse_inequality(std::string_view name);
std::string_view to_string(InequalityId id);
std::vector<std::string> inequality_args(InequalityId id);

struct InequalityResult {
  /// lem41: min of the two slacks n-(2k+s-2i+1), n-(2k+s-2j+1);
  /// lem42: (s-i)(n-s+1)-(s-1)(k-i+1); lem43: f(n,k,i,t).
  std::int64_t value = 0;
  bool hypotheses_hold = false;
  /// lem41/lem42: value >= 0; lem43: value > 0.
  bool conclusion_holds = false;
  std::string detail;
};

InequalityResult inequality(InequalityId id, const ArgRecord& args);

}  // namespace ekr2
