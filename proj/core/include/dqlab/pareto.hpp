#pragma once

#include <vector>

#include "dqlab/dist.hpp"
#include "dqlab/score.hpp"
#include "dqlab/tree.hpp"

namespace dqlab {

// Which cost-like coordinate the front tracks alongside the expected score:
// the plain expected depth, or the score-weighted depth E[score * cost]
// (stored unnormalized; divide by the score to get the ratio measure).
enum class CostObjective { expected_cost, score_weighted_cost };

struct FrontPoint {
  double score = 0;
  double cost = 0;
  DecisionTree tree;  // deterministic witness attaining the vertex
};

// Efficient frontier over randomized algorithms: vertices are deterministic
// trees, everything between adjacent vertices is a two-tree mixture.  Points
// are sorted by increasing score and cost with strictly increasing slopes.
struct ParetoFront {
  CostObjective objective = CostObjective::expected_cost;
  std::vector<FrontPoint> pts;
};

ParetoFront pareto_score_cost(const BoolFn& f, const Dist& mu, ScoreKind kind,
                              std::size_t budget_states = 5'000'000);
ParetoFront pareto_score_scost(const BoolFn& f, const Dist& mu, ScoreKind kind,
                               std::size_t budget_states = 5'000'000);

struct FrontQuery {
  double value = 0;
  RandomizedAlg witness;
};

// Cheapest expected cost subject to score >= gamma (expected_cost fronts).
FrontQuery min_cost_at_score(const ParetoFront& front, double gamma);
// Smallest E[score*cost]/E[score] subject to score >= gamma
// (score_weighted_cost fronts).
FrontQuery min_ratio_at_score(const ParetoFront& front, double gamma);

}  // namespace dqlab
