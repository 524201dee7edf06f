#pragma once

#include <string>

#include "dqlab/common.hpp"

namespace dqlab {

// Partial assignment of input positions: `mask` marks the fixed positions,
// `vals` carries their values (vals is always a subset of mask).
struct Restriction {
  Word mask = 0;
  Word vals = 0;

  bool fixes(int pos) const { return (mask >> pos) & 1u; }
  int value_at(int pos) const { return (vals >> pos) & 1u; }
  int fixed_count() const { return popcount(mask); }

  bool contains(Word x) const { return (x & mask) == vals; }

  Restriction with(int pos, int bit) const {
    Restriction r = *this;
    r.mask |= Word(1) << pos;
    if (bit) r.vals |= Word(1) << pos;
    return r;
  }

  // Restriction of the positions in block i (blocks of `m` positions),
  // renumbered to positions 0..m-1.
  Restriction block(int i, int m) const {
    Word bm = ((Word(1) << m) - 1);
    Restriction r;
    r.mask = (mask >> (i * m)) & bm;
    r.vals = (vals >> (i * m)) & bm;
    return r;
  }

  friend bool operator==(const Restriction&, const Restriction&) = default;

  std::string str(int nbits) const {
    std::string s(nbits, '.');
    for (int p = 0; p < nbits; ++p)
      if (fixes(p)) s[p] = char('0' + value_at(p));
    return s;
  }
};

}  // namespace dqlab
