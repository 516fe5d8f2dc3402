#pragma once

// Generating sets of uniform families, trace slices, and the slice-exchange
// surgeries used to improve a family's tight-path count.
//
// A generating set g of a k-uniform F satisfies U(g) cap C([n],k) = F, where
// U(g) is the up-set of g. The canonical generating set used throughout is
// the inclusion-minimal part of the trace family F|[s] for the least s that
// admits one.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ekr2/setfam.hpp"

namespace ekr2 {

/// F|[s] = {F cap [s] : F in f}.
Family project(const Family& f, int s);

/// Inclusion-minimal members; the result is an antichain.
Family minimal_elements(const Family& g);

/// U(g) cap C([n],k), with n and k taken from params.
Family expand(const Family& g, const Params& params);

struct GenSetInfo {
  int s = 0;
  Family g;  // antichain over [s], universe n
  /// layers[i] = g_i, the members of size i (0 <= i <= s).
  std::vector<Family> layers;
  /// star_layers[i] = g*_i, the size-i members containing s.
  std::vector<Family> star_layers;
  /// stripped_star_layers[i] = g*_i' = {E \ {s}}.
  std::vector<Family> stripped_star_layers;
  /// Out-of-range indices yield empty families.
  /// Set only for families built from a prescribed generator list that is
  /// not an antichain (the ladder at its first index).
  bool antichain_suspended = false;

  Family layer(int i) const;
  Family star_layer(int i) const;
  Family stripped_star_layer(int i) const;
};

/// Canonical generating set with the least possible largest element.
GenSetInfo generating_set(const Family& f);

/// Decomposition of an explicit generator list (not re-minimized) at a
/// given s. Used by constructions built from a prescribed generator list.
GenSetInfo describe_generators(const Family& g, int s);

enum class SliceMode {
  Bracket,      // D(E): k-sets B with B cap [s] = E
  BracketPlus,  // script D(E): k-sets B with B cap [s+(E)] = E
};

/// D(E) for Bracket (needs E inside [s]) or script-D(E) for BracketPlus
/// (needs E nonempty); `s` is ignored in BracketPlus mode.
Family slice(Mask e, SliceMode mode, int s, const Params& params);
/// Union of slices over a collection.
Family slice_union(const Family& es, SliceMode mode, int s, const Params& params);

enum class SurgeryVariant { Script, Plain };

/// (F1, F2): F1 replaces the script slices of g*_j by those of g*_i' with
/// j = s+t-i; F2 exchanges the roles of i and j.
std::pair<Family, Family> surgery_swap(const Family& f, const GenSetInfo& info, int i, int t);

/// F3 = (F minus slice(g*_i)) plus slice(f_q), f_q = {E in g*_i' : q not in E}.
/// Both surgeries refuse (SurgeryPrecondition) unless f is maximal
/// t-intersecting and left-compressed.
Family surgery_shrink(const Family& f, const GenSetInfo& info, int i, int q, SurgeryVariant variant,
                      int t);

/// f_q as used by surgery_shrink (stripped).
Family shrink_part(const GenSetInfo& info, int i, int q);

/// Lower bound on zeta_{k-1}(F1) - zeta_{k-1}(F) for the swap at layer i.
std::int64_t swap_zeta_lower_bound(const Family& f, const GenSetInfo& info, int i, int t);

/// Lower bound on zeta_{k-1}(F3) - zeta_{k-1}(F) for shrink at (i, q).
std::int64_t shrink_zeta_lower_bound(const Family& f, const GenSetInfo& info, int i, int q);

/// Members of f with exactly `size` elements.
Family members_of_size(const Family& f, int size);

/// Raw replacement of j by i in e (no membership test).
Mask raw_shift(Mask e, int i, int j);

}  // namespace ekr2
