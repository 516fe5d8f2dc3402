#pragma once

// Exact codegree statistics of uniform families.

#include <cstdint>
#include <map>

#include "ekr2/setfam.hpp"

namespace ekr2 {

/// Nonzero codegrees d(E) of all ell-subsets E; absent keys are zero.
struct CodegreeVector {
  int ell = 0;
  std::map<Mask, std::int64_t> entries;

  std::int64_t at(Mask e) const {
    auto it = entries.find(e);
    return it == entries.end() ? 0 : it->second;
  }
  std::int64_t sum() const;
  std::int64_t sum_of_squares() const;
};

CodegreeVector codegree_vector(const Family& f, int ell);

/// Sum of d(E)^2 over all (k-1)-subsets E.
std::int64_t co2(const Family& f);

/// Unordered pairs {F,G}, F in f, G in g, F != G, |F| = |G| = u+1 and
/// |F cap G| = u.
std::int64_t zeta(const Family& f, const Family& g, int u);

/// The zeta pairs whose intersection contains v.
std::int64_t zeta_at(const Family& f, const Family& g, int u, int v);

/// Copies of the tight path P_2 in a k-uniform family, i.e. zeta_{k-1}(f, f).
inline std::int64_t tight_paths(const Family& f) {
  return f.empty() ? 0 : zeta(f, f, require_uniform(f) - 1);
}

}  // namespace ekr2
