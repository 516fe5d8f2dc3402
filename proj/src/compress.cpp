#include "ekr2/compress.hpp"

#include <string>

namespace ekr2 {

namespace {

void check_pair(const Family& f, int i, int j) {
  if (!(1 <= i && i < j && j <= f.n())) {
    throw Error(ErrorKind::BadPair, "need 1 <= i < j <= n, got (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
}

}  // namespace

Mask shift_member(Mask a, int i, int j, const Family& owner) {
  const Mask bi = bit(i);
  const Mask bj = bit(j);
  if ((a & bj) == 0 || (a & bi) != 0) return a;
  const Mask moved = (a & ~bj) | bi;
  return owner.contains(moved) ? a : moved;
}

Family shift(const Family& f, int i, int j) {
  const int k = require_uniform(f);
  check_pair(f, i, j);
  std::vector<Mask> image;
  image.reserve(f.size());
  for (Mask a : f) image.push_back(shift_member(a, i, j, f));
  return Family::uniform(f.n(), k, std::move(image));
}

unsigned __int128 mask_potential(const Family& f) {
  unsigned __int128 s = 0;
  for (Mask m : f) s += m;
  return s;
}

Family left_compress(const Family& f, const CompressionTrace& trace) {
  require_uniform(f);
  Family current = f;
  const int n = f.n();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 1; i < n && !changed; ++i) {
      for (int j = i + 1; j <= n && !changed; ++j) {
        Family next = shift(current, i, j);
        if (next != current) {
          current = std::move(next);
          changed = true;
          if (trace) trace(i, j, mask_potential(current));
        }
      }
    }
  }
  return current;
}

bool is_left_compressed(const Family& f) {
  require_uniform(f);
  for (int i = 1; i < f.n(); ++i) {
    for (int j = i + 1; j <= f.n(); ++j) {
      for (Mask a : f) {
        if (shift_member(a, i, j, f) != a) return false;
      }
    }
  }
  return true;
}

}  // namespace ekr2
