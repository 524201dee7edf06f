#pragma once

#include <vector>

#include "dqlab/score.hpp"
#include "dqlab/tree.hpp"

namespace dqlab {

// Measured behaviour of a randomized algorithm against (f, mu).  Everything
// here is an exact expectation over the mixture and the leaf distribution,
// not a bound carried over from some construction.
struct StatReport {
  double score = 0;            // expected leaf score
  int cost_worst = 0;          // worst depth over trees and domain inputs
  double cost_avg_worst = 0;   // worst over inputs of the expected depth
  double cost_avg = 0;         // expected depth under (mu, mixture)
  double scost = 0;            // score-weighted cost E[score*cost]/E[score]
  double discounted = 0;       // E[score * exp(-alpha*cost)]
  double hel_loss = 0;         // E[sum_l 2 sqrt(mass0*mass1)]; NaN for products
  double labeled_success = 0;  // Pr[leaf label equals f(x)]; NaN if unlabeled
  bool all_labeled = false;
};

StatReport stats(const RandomizedAlg& alg, const BoolFn& f, const Dist& mu,
                 ScoreKind kind, double alpha = 0);

double tree_score(const RandomizedAlg& alg, const BoolFn& f, const Dist& mu,
                  ScoreKind kind);

// Expected unconditional Hellinger overlap sum_leaves 2*sqrt(mass0*mass1),
// equal to twice the expected complement of the hellinger score.
double hellinger_loss(const RandomizedAlg& alg, const BoolFn& f, const Dist& mu);

// Leaf distribution reweighted by score: pi(tree, leaf) proportional to
// weight * mu(leaf) * score(leaf).
struct ReweightedLeaf {
  int tree = 0;
  int leaf = 0;
  double prob = 0;
  int cost = 0;
  double score = 0;
};
std::vector<ReweightedLeaf> reweighted_dist(const RandomizedAlg& alg,
                                            const BoolFn& f, const Dist& mu,
                                            ScoreKind kind);

// Input distribution tilted by score and cost discount along B's leaves:
// nu(y) proportional to mu(y) * score(leaf(y)) * exp(-alpha*cost(leaf(y))).
Dist tilted_dist(const DecisionTree& b, const BoolFn& f, const Dist& mu,
                 double alpha, ScoreKind kind);

}  // namespace dqlab
