#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dqlab/dist.hpp"
#include "dqlab/score.hpp"
#include "dqlab/tree.hpp"

namespace dqlab {

// Tie handling among optimal actions of the discounted-score recursion.
// prefer_stop picks stopping, then the lowest query index; the score modes
// pick, among value-optimal subtrees, the one of largest or smallest
// expected score (still deterministic afterwards).
enum class TieBreak { prefer_stop, max_score, min_score };

struct DsResult {
  double value = 0;   // optimal E[score * exp(-alpha*cost)]
  double score = 0;   // expected score of the witness
  DecisionTree witness;
};

// Optimal discounted score over deterministic trees by memoized recursion on
// restriction states: stop and take the leaf score, or pay the discount
// factor and query the best position.
DsResult discounted_score(const BoolFn& f, const Dist& mu, double alpha,
                          ScoreKind kind, TieBreak tb = TieBreak::prefer_stop,
                          std::size_t budget_states = 5'000'000);

// Exact-rational discounted score with the success score.  `mu_num` are
// nonnegative weight numerators aligned with f.domain() (the denominator is
// their sum) and the per-query discount factor is disc_num/disc_den, playing
// the role of exp(-alpha).  The identity DS(f^n) = DS(f)^n holds for every
// rational discount factor, so snapping exp(-alpha) to a nearby rational
// keeps the residual meaningful.
struct ExactValue {
  std::string repr;   // exact rational as "num/den"
  double approx = 0;
};
ExactValue discounted_score_exact(const BoolFn& f,
                                  const std::vector<long long>& mu_num,
                                  long long disc_num, long long disc_den,
                                  std::size_t budget_states = 5'000'000);

// Exact check of the power identity for the success score; returns true when
// the residual is exactly zero in rational arithmetic.
bool tensorization_exact_holds(const BoolFn& base,
                               const std::vector<long long>& mu_num, int n,
                               long long disc_num, long long disc_den,
                               std::size_t budget_states = 5'000'000);

}  // namespace dqlab
