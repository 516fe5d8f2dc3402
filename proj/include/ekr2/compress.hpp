#pragma once

// The (i,j)-shift and left-compression.

#include <cstdint>
#include <functional>

#include "ekr2/setfam.hpp"

namespace ekr2 {

/// Image of A under delta_ij relative to the family it belongs to.
Mask shift_member(Mask a, int i, int j, const Family& owner);

/// Delta_ij(f). Requires 1 <= i < j <= n.
Family shift(const Family& f, int i, int j);

/// Optional hook observing each change: (i, j, sum of member masks after).
using CompressionTrace = std::function<void(int, int, unsigned __int128)>;

/// Sweeps (i,j) lexicographically, restarting after every change, until
/// no shift moves anything.
Family left_compress(const Family& f, const CompressionTrace& trace = {});

bool is_left_compressed(const Family& f);

/// Sum of member masks; strictly decreases with every effective shift.
unsigned __int128 mask_potential(const Family& f);

}  // namespace ekr2
