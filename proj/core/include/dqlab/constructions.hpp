#pragma once

#include <map>
#include <string>

#include "dqlab/solvers.hpp"
#include "dqlab/stats.hpp"

namespace dqlab {

// Outcome of one constructive transformation.  `measured` always comes from
// re-running stats on the composed algorithm, never from the intermediate
// algebra; `target` is the promised success (or loss) level and `budget` the
// promised cost bound.
struct ConstructionReport {
  RandomizedAlg alg;
  StatReport measured;
  double target = 0;
  double budget = 0;
  bool pass = false;
  std::map<std::string, double> details;
};

// Labeled mixture whose expected success against mu is exactly gamma: the
// cheapest frontier mixture at gamma, coin-mixed down when the frontier
// vertex overshoots.  Single-block functions only.
RandomizedAlg component_at_score(const BoolFn& f, const Dist& mu, double gamma,
                                 std::size_t budget_states = 5'000'000);

// Three-call majority boosting: run a success-gamma algorithm against mu,
// a second against the reweighted distribution nu, and on disagreement a
// third against the disagreement distribution pi.  Success lands exactly on
// 3 gamma^2 - 2 gamma^3; expected cost stays within 4x the largest component
// cost.
ConstructionReport schapire_boost(const BoolFn& f, const Dist& mu, double gamma,
                                  std::size_t budget_states = 5'000'000);

// One boosting round stated as a gain: for gamma in [(1+delta)/2, 1-delta]
// the boosted success is checked against gamma + delta/3.
ConstructionReport boost_to_delta(const BoolFn& f, const Dist& mu, double gamma,
                                  double delta,
                                  std::size_t budget_states = 5'000'000);

// Run A, then at each of its leaves a fresh continuation solved to Hellinger
// loss beta under the leaf-reweighted distribution nu_l; the composed loss is
// at most loss(A) * beta and the cost grows by at most twice the worst
// continuation cost.
ConstructionReport hellinger_compose(const BoolFn& f, const Dist& mu,
                                     const RandomizedAlg& a, double beta,
                                     std::size_t budget_states = 5'000'000);

// Abort A once its cost exceeds (6/delta) * avg cost and guess optimally at
// the cut; Markov keeps the success drop within delta/6.
ConstructionReport truncate_and_guess(const RandomizedAlg& a, const BoolFn& f,
                                      const Dist& mu, double delta);

// Direct-product upper bound: solve the blocks one after another, each with a
// boosted-and-truncated component against the running conditional marginal.
// The joint success factors exactly through the per-block conditional
// successes; the cost stays within 4n times the largest component budget.
// Also reports the cutoff variant truncated at 9n * budget.
ConstructionReport sequential_product(const BoolFn& f, const Dist& mu_joint,
                                      double gamma, double delta,
                                      std::size_t budget_states = 5'000'000);

// Per-coordinate embedding simulators of a product-instance tree B: real
// queries are answered by the input, foreign queries by the tilted
// distribution nu conditioned on the transcript.  Their uniform mixture A
// satisfies ds(A) >= ds(B)^(1/n).
ConstructionReport embed_simulate(const DecisionTree& b, const BoolFn& f,
                                  const Dist& mu, double alpha, ScoreKind kind,
                                  std::size_t budget_states = 5'000'000);

}  // namespace dqlab
