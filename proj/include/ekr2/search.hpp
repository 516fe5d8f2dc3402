#pragma once

// Exhaustive enumeration of maximal t-intersecting families as maximal
// cliques of the t-intersection graph on C([n],k).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ekr2/setfam.hpp"

namespace ekr2 {

inline constexpr std::size_t kDefaultVertexBudget = 200;

/// Fixed-width bit row over the graph's vertex indices.
class BitRow {
 public:
  BitRow() = default;
  explicit BitRow(std::size_t bits) : words_((bits + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  std::size_t count() const;
  bool none() const;

  std::vector<std::uint64_t>& words() { return words_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const BitRow&, const BitRow&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

struct IntersectionGraph {
  Params params;
  /// All k-subsets of [n], ascending.
  std::vector<Mask> vertices;
  /// adjacency[u] has bit v set iff u != v and |u cap v| >= t.
  std::vector<BitRow> adjacency;

  std::size_t size() const { return vertices.size(); }
  std::size_t degree(std::size_t v) const { return adjacency[v].count(); }
  std::size_t edge_count() const;
};

/// Throws BudgetExceeded when C(n,k) exceeds the vertex budget.
IntersectionGraph intersection_graph(const Params& params, std::size_t vertex_budget = kDefaultVertexBudget);

struct EnumerateOptions {
  bool nontrivial_only = false;
  bool left_compressed_only = false;
  /// Emit one canonical representative per isomorphism class.
  bool dedup_iso = false;
  std::size_t vertex_budget = kDefaultVertexBudget;
  /// Stop after this many maximal cliques have been visited.
  std::optional<std::size_t> clique_cap;
  int workers = 1;
};

struct Enumeration {
  /// Labeled families in search order, or sorted canonical forms with dedup_iso.
  std::vector<Family> families;
  /// Maximal cliques visited before filtering.
  std::size_t cliques = 0;
  bool truncated = false;
};

/// Every maximal clique exactly once. Results never depend on the worker
/// count: top-level branches are merged in branch order.
Enumeration enumerate_maximal_families(const Params& params, const EnumerateOptions& opts = {});

enum class Objective { Co2, Zeta, Size };
enum class Constraint { All, Nontrivial };

std::optional<Objective> parse_objective(std::string_view name);
std::optional<Constraint> parse_constraint(std::string_view name);
std::string_view to_string(Objective o);
std::string_view to_string(Constraint c);

std::int64_t evaluate(Objective o, const Family& f);

struct ScanReport {
  Params params;
  Objective objective = Objective::Co2;
  Constraint constraint = Constraint::All;
  bool left_compressed_only = false;
  /// Empty when no family passed the filters.
  std::optional<std::int64_t> max_value;
  /// Canonical forms of all attaining classes, ascending.
  std::vector<Family> extremal;
  /// Labeled maximal families that passed the filters.
  std::size_t enumerated = 0;
  bool truncated = false;
  int workers = 1;
  std::int64_t elapsed_ms = 0;
};

ScanReport extremal_scan(const Params& params, Objective objective, Constraint constraint,
                         const EnumerateOptions& opts = {});

/// Identifier of the pseudo-random procedure below, recorded in reports.
inline constexpr std::string_view kRandomAlgorithm = "mt19937_64+floyd-rejection/1";

/// Uniform draw from [0, bound) by rejection from a 64-bit engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  std::uint64_t below(std::uint64_t bound);
  /// Uniform k-subset of [n] (Floyd's algorithm).
  Mask kset(int n, int k);
  /// Uniform permutation of 1..n (Fisher-Yates).
  std::vector<int> permutation(int n);

 private:
  std::mt19937_64 engine_;
};

/// Attempts round(density * C(n,k)) uniform insertions, keeping those that
/// preserve t-intersection.
Family random_t_intersecting(const Params& params, std::uint64_t seed, double density);

/// Attempts round(density * C(n,k)) uniform insertions without constraint.
Family random_family(int n, int k, std::uint64_t seed, double density);

}  // namespace ekr2
