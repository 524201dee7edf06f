#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dqlab/boolfn.hpp"
#include "dqlab/common.hpp"
#include "dqlab/restriction.hpp"

namespace dqlab {

// Probability distribution over bit strings of a fixed width, stored densely.
// Product distributions remember their block structure and base factor so
// per-block quantities can be taken without re-deriving marginals.
class Dist {
 public:
  Dist() = default;
  Dist(int bits, std::vector<double> w);

  // Text format: one "<bit string> <decimal>" per line, '#' comments.  The
  // weight sum must land within 1e-9 of 1; inside the band the weights are
  // renormalized, outside it the file is rejected.
  static Dist parse(std::istream& in, int expect_bits = -1,
                    const std::string& origin = "<input>");
  static Dist parse_text(const std::string& text, int expect_bits = -1,
                         const std::string& origin = "<input>");

  static Dist uniform(const BoolFn& f);
  static Dist point(int bits, Word x);
  // n independent copies of `base` on disjoint blocks.
  static Dist product(const Dist& base, int n);
  // Convex combination a*lhs + (1-a)*rhs.
  static Dist mix(double a, const Dist& lhs, const Dist& rhs);

  int bits() const { return bits_; }
  int blocks() const { return blocks_; }
  int block_bits() const { return block_bits_; }
  bool is_product() const { return blocks_ > 1; }
  const Dist& base() const;

  double weight(Word x) const { return w_[x]; }
  const std::vector<double>& weights() const { return w_; }

  double mass(const Restriction& r) const;
  // Renormalized conditional on the subcube; throws InfeasibleError on zero
  // mass.  The product structure survives conditioning on a subcube.
  Dist conditioned(const Restriction& r) const;

  // Conditional probability that f evaluates to 1 given the subcube
  // (single-block f only); throws InfeasibleError on zero mass.
  double p_one(const BoolFn& f, const Restriction& r) const;

  // Marginal of block i as a distribution on block_bits() bits.
  Dist marginal(int i) const;

  // Every point with positive weight lies in f's domain.
  void check_support(const BoolFn& f) const;

 private:
  int bits_ = 0;
  int block_bits_ = 0;
  int blocks_ = 1;
  std::vector<double> w_;
  std::shared_ptr<const Dist> base_;  // set for products only
};

}  // namespace dqlab
