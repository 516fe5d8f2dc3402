#pragma once

// Vertex sets over [n] as single 64-bit masks, and families of them.
//
// Element i of [n] (1-based) is bit i-1 of the mask. Families keep their
// members strictly ascending by mask value, which is colex order on sets.

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ekr2/error.hpp"

namespace ekr2 {

using Mask = std::uint64_t;

inline constexpr int kMaxUniverse = 64;

inline int popcount(Mask m) { return std::popcount(m); }

/// Mask of [1, n].
inline constexpr Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

/// Mask of the single element v (1-based).
inline constexpr Mask bit(int v) { return Mask{1} << (v - 1); }

/// Mask of the interval [lo, hi]; empty when lo > hi.
inline constexpr Mask interval_mask(int lo, int hi) {
  return lo > hi ? 0 : full_mask(hi) & ~full_mask(lo - 1);
}

/// s^+(E): the largest element, 0 for the empty set.
inline int max_element(Mask m) { return m == 0 ? 0 : 64 - std::countl_zero(m); }

/// The triple (n, k, t).
struct Params {
  int n = 0;
  int k = 0;
  int t = 0;

  /// Throws InvalidParams unless 1 <= t <= k <= n <= 64.
  void validate() const;

  /// The EKR threshold (t+1)(k-t+1).
  int n0() const { return (t + 1) * (k - t + 1); }

  friend bool operator==(const Params&, const Params&) = default;
  friend auto operator<=>(const Params&, const Params&) = default;
};

std::string to_string(const Params& p);

class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(Mask mask, int n);

  static VertexSet from_elements(std::span<const int> elements, int n);

  Mask mask() const { return mask_; }
  int universe() const { return n_; }
  int size() const { return size_; }
  bool empty() const { return mask_ == 0; }
  bool contains(int v) const { return v >= 1 && v <= n_ && (mask_ & bit(v)) != 0; }
  /// s^+(E).
  int max_element() const { return ekr2::max_element(mask_); }
  std::vector<int> elements() const;

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.mask_ == b.mask_ && a.n_ == b.n_;
  }
  friend auto operator<=>(const VertexSet& a, const VertexSet& b) { return a.mask_ <=> b.mask_; }

 private:
  Mask mask_ = 0;
  std::uint8_t n_ = 0;
  std::uint8_t size_ = 0;
};

std::vector<int> elements_of(Mask m);
Mask mask_of(std::span<const int> elements);
/// Compact rendering such as "{1,3,4}".
std::string format_set(Mask m);

class Family {
 public:
  Family() = default;

  /// Empty family over [n] whose uniformity is k (or unspecified).
  explicit Family(int n, std::optional<int> k = std::nullopt);

  /// Sorts and deduplicates `masks`; every member must have k elements.
  static Family uniform(int n, int k, std::vector<Mask> masks);
  /// Sorts and deduplicates; uniformity inferred when nonempty and all sizes agree.
  static Family general(int n, std::vector<Mask> masks);

  int n() const { return n_; }
  std::optional<int> uniformity() const { return k_; }
  bool is_uniform() const { return k_.has_value(); }
  /// Common member size; throws NonUniformFamily when there is none.
  int k() const;

  std::size_t size() const { return masks_.size(); }
  bool empty() const { return masks_.empty(); }
  std::span<const Mask> masks() const { return masks_; }
  VertexSet operator[](std::size_t i) const { return VertexSet(masks_[i], n_); }
  bool contains(Mask m) const;

  auto begin() const { return masks_.begin(); }
  auto end() const { return masks_.end(); }

  /// Bitwise intersection of all members; all of [n] for the empty family.
  Mask common_intersection() const;

  friend bool operator==(const Family& a, const Family& b) {
    return a.n_ == b.n_ && a.masks_ == b.masks_;
  }
  /// The fixed family order: lexicographic on the ascending member masks.
  friend auto operator<=>(const Family& a, const Family& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.masks_ <=> b.masks_;
  }

 private:
  int n_ = 0;
  std::optional<int> k_;
  std::vector<Mask> masks_;
};

/// Throws NonUniformFamily unless f is uniform.
int require_uniform(const Family& f);

/// Family file format: `n=<int> [k=<int>]` header, then one strictly
/// increasing element list per line. `#` lines and blank lines are skipped.
Family parse_family(std::string_view text);
std::string emit_family(const Family& f);

bool is_t_intersecting(const Family& f, int t);

struct TrivialityResult {
  bool trivial = false;
  /// Lexicographically least t-subset of the common intersection.
  std::optional<Mask> witness;
};
TrivialityResult is_trivial(const Family& f, int t);

bool is_maximal_t_intersecting(const Family& f, int t);
/// Greedy extension trying k-sets in lexicographic order of element lists.
Family maximal_closure(const Family& f, int t);

/// Relabels vertex v to perm[v-1] (perm is a permutation of 1..n).
Mask permute_mask(Mask m, std::span<const int> perm);
Family permute(const Family& f, std::span<const int> perm);

/// Minimum of the relabeling orbit over degree-refined vertex orders.
Family canonical_form(const Family& f);
bool isomorphic(const Family& a, const Family& b);

/// All k-subsets of [n] as masks, ascending.
std::vector<Mask> all_ksets(int n, int k);

}  // namespace ekr2
