#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "dqlab/common.hpp"
#include "dqlab/restriction.hpp"

namespace dqlab {

// Partial Boolean function on m-bit blocks, possibly raised to a direct
// product of n independent blocks.  The domain is an explicit sorted list of
// accepted inputs; the value of an input is an n-bit word whose bit i is the
// base function applied to block i.
class BoolFn {
 public:
  BoolFn() = default;

  // Single-block function from an explicit table (value 0/1 per input).
  static BoolFn from_table(int m, const std::vector<std::pair<Word, int>>& rows);

  // Text format: first non-comment line "m=<int>", then one row per domain
  // point: "<m-bit string> <0|1|*>" where '*' excludes the input.
  static BoolFn parse(std::istream& in, const std::string& origin = "<input>");
  static BoolFn parse_text(const std::string& text, const std::string& origin = "<input>");

  // n independent copies on disjoint blocks; value is the n-bit word of
  // per-block values.
  static BoolFn product(const BoolFn& base, int n);

  int bits() const { return m_ * n_; }
  int block_bits() const { return m_; }
  int blocks() const { return n_; }

  const std::vector<Word>& domain() const { return domain_; }
  bool in_domain(Word x) const;
  // n-bit value word; throws InputError off-domain.
  Word value(Word x) const;
  int block_value(Word x, int i) const { return bit_at(value(x), i); }

  // Base function of a product (identity for single-block functions).
  const BoolFn& base() const { return base_ ? *base_ : *this; }

  // Restriction of block i of x, renumbered to base positions.
  Word block_input(Word x, int i) const {
    return (x >> (i * m_)) & ((Word(1) << m_) - 1);
  }

  std::string describe() const;

 private:
  int m_ = 0, n_ = 1;
  std::vector<Word> domain_;  // sorted
  std::vector<Word> values_;  // aligned with domain_
  std::shared_ptr<const BoolFn> base_;  // set for products only
};

// Reads "<m-bit string>" into a Word; position 0 is the first character.
Word parse_bits(const std::string& s, int expect_bits, const std::string& origin);
std::string bits_to_string(Word x, int nbits);

}  // namespace dqlab
