#pragma once

#include <optional>
#include <vector>

#include "dqlab/bellman.hpp"
#include "dqlab/pareto.hpp"

namespace dqlab {

struct SolveConfig {
  std::size_t budget_states = 5'000'000;
  // Outer search over distributions.
  int restarts = 64;
  int steps = 500;
  std::uint64_t seed = 1;
  int grid_resolution = 64;
  int grid_max_support = 5;
  // Column generation.
  int lp_max_columns = 100'000;
};

// Signed gap DS(f^n, mu^n) - DS(f, mu)^n in floating point.
double tensorization_residual(const BoolFn& base, const Dist& base_mu, int n,
                              double alpha, ScoreKind kind,
                              std::size_t budget_states = 5'000'000);

// Distributional complexity at target score gamma: cheapest expected cost,
// and its score-weighted variant (E[score*cost]/E[score]).
FrontQuery avg_complexity(const BoolFn& f, const Dist& mu, double gamma,
                          ScoreKind kind, std::size_t budget_states = 5'000'000);
FrontQuery scost_complexity(const BoolFn& f, const Dist& mu, double gamma,
                            ScoreKind kind, std::size_t budget_states = 5'000'000);

enum class OuterObjective { avg_cost, score_weighted };

struct OuterResult {
  double value = 0;
  Dist mu;
  RandomizedAlg witness;
  // True when found by exhaustive grid search (small supports); the ascent
  // heuristic only certifies a lower bound on the maximum.
  bool certified = false;
};

// Hardest distribution for the chosen objective: exhaustive simplex grid for
// small domains, multi-start projected subgradient ascent otherwise.
OuterResult max_over_mu(const BoolFn& f, double gamma, OuterObjective obj,
                        ScoreKind kind, const SolveConfig& cfg = {});

struct WorstCaseResult {
  int depth = 0;          // smallest depth budget with game value >= gamma
  double game_value = 0;  // best worst-case success at that depth
  RandomizedAlg witness;  // labeled mixture attaining it
};

// Worst-case complexity via binary search on the depth budget; each depth is
// solved as a matrix game by column generation (pricing over depth-bounded
// labeled trees).
WorstCaseResult worst_case_R(const BoolFn& f, double gamma,
                             const SolveConfig& cfg = {});

// Worst-case-average complexity: cheapest worst-input expected depth subject
// to per-input success >= gamma, solved over all labeled trees (small
// arities only).
struct WorstCaseAvgResult {
  double value = 0;
  RandomizedAlg witness;
};
WorstCaseAvgResult worst_case_avg_R(const BoolFn& f, double gamma,
                                    const SolveConfig& cfg = {});

// All labeled decision trees on f's input bits up to the given depth; guarded
// by a count budget.
std::vector<DecisionTree> enumerate_labeled_trees(const BoolFn& f, int max_depth,
                                                  std::size_t budget = 100'000);

struct AlphaStar {
  double alpha = 0;
  double ds = 0;            // discounted-score optimum at alpha
  double score = 0;         // mixture score (equals gamma when non-degenerate)
  RandomizedAlg mixture;
  double score_low = 0, score_high = 0;  // straddling witness scores
  // gamma is attainable by stopping immediately; no positive discount rate is
  // needed and the mixture is the stop tree.
  bool degenerate = false;
};

// Discount rate at which the discounted-score optimum is achieved by trees
// whose scores straddle gamma; returns the convex combination with score
// exactly gamma.
AlphaStar find_alpha_star(const BoolFn& f, const Dist& mu, double gamma,
                          ScoreKind kind, std::size_t budget_states = 5'000'000);

struct EquivalenceReport {
  double svalue = 0;  // score-weighted complexity at gamma
  std::vector<double> alphas;
  std::vector<double> lower;  // (1/alpha) ln(gamma / DS_alpha) per grid point
  AlphaStar astar;
  double upper = 0;  // 8 ln2 (1/alpha*) ln(gamma / DS_{alpha*})
  bool lower_ok = true, upper_ok = true;
};

EquivalenceReport equivalence_bounds(const BoolFn& f, const Dist& mu,
                                     double gamma, ScoreKind kind,
                                     const std::vector<double>& alpha_grid,
                                     std::size_t budget_states = 5'000'000);

}  // namespace dqlab
