#include "dqlab/stats.hpp"

#include <cmath>
#include <limits>

namespace dqlab {

StatReport stats(const RandomizedAlg& alg, const BoolFn& f, const Dist& mu,
                 ScoreKind kind, double alpha) {
  if (alg.size() == 0) throw InputError("empty algorithm");
  if (alg.bits() != f.bits()) throw InputError("algorithm and function widths differ");
  mu.check_support(f);
  StatReport r;
  r.all_labeled = true;
  double scost_num = 0;
  const bool single = f.blocks() == 1;
  for (auto& c : alg.components()) {
    c.tree.for_each_leaf([&](int li) {
      const TreeNode& n = c.tree.node(li);
      if (single) {
        double m0 = 0, m1 = 0;
        for (Word x : f.domain()) {
          if (!n.path.contains(x)) continue;
          (f.value(x) ? m1 : m0) += mu.weight(x);
        }
        r.hel_loss += c.weight * 2 * std::sqrt(m0 * m1);
      }
      double p = mu.mass(n.path);
      if (p <= 0) return;  // zero-mass leaves score 1 with weight 0
      double s = leaf_score(f, mu, n.path, kind);
      int cost = n.path.fixed_count();
      r.score += c.weight * p * s;
      r.cost_avg += c.weight * p * cost;
      scost_num += c.weight * p * s * cost;
      r.discounted += c.weight * p * s * std::exp(-alpha * cost);
      if (n.label < 0) r.all_labeled = false;
    });
  }
  if (!single) r.hel_loss = std::numeric_limits<double>::quiet_NaN();
  r.scost = r.score > 0 ? scost_num / r.score : 0;
  // Per-input view: worst-case depths and the labeled success probability.
  double labeled = 0;
  for (Word x : f.domain()) {
    double exp_cost = 0;
    for (auto& c : alg.components()) {
      int li = c.tree.evaluate(x);
      const TreeNode& n = c.tree.node(li);
      int cost = n.path.fixed_count();
      exp_cost += c.weight * cost;
      r.cost_worst = std::max(r.cost_worst, cost);
      if (n.label == (int)f.value(x)) labeled += c.weight * mu.weight(x);
    }
    r.cost_avg_worst = std::max(r.cost_avg_worst, exp_cost);
  }
  r.labeled_success =
      r.all_labeled ? labeled : std::numeric_limits<double>::quiet_NaN();
  return r;
}

double tree_score(const RandomizedAlg& alg, const BoolFn& f, const Dist& mu,
                  ScoreKind kind) {
  return stats(alg, f, mu, kind).score;
}

double hellinger_loss(const RandomizedAlg& alg, const BoolFn& f, const Dist& mu) {
  if (f.blocks() != 1)
    throw InputError("hellinger loss is defined for single-block functions");
  mu.check_support(f);
  double loss = 0;
  for (auto& c : alg.components()) {
    c.tree.for_each_leaf([&](int li) {
      const TreeNode& n = c.tree.node(li);
      double m0 = 0, m1 = 0;
      for (Word x : f.domain()) {
        if (!n.path.contains(x)) continue;
        (f.value(x) ? m1 : m0) += mu.weight(x);
      }
      loss += c.weight * 2 * std::sqrt(m0 * m1);
    });
  }
  return loss;
}

std::vector<ReweightedLeaf> reweighted_dist(const RandomizedAlg& alg,
                                            const BoolFn& f, const Dist& mu,
                                            ScoreKind kind) {
  double sbar = tree_score(alg, f, mu, kind);
  if (sbar <= 0) throw InfeasibleError("algorithm has zero score");
  std::vector<ReweightedLeaf> out;
  for (int ti = 0; ti < (int)alg.size(); ++ti) {
    const auto& c = alg.components()[ti];
    c.tree.for_each_leaf([&](int li) {
      const TreeNode& n = c.tree.node(li);
      double p = mu.mass(n.path);
      if (p <= 0) return;
      double s = leaf_score(f, mu, n.path, kind);
      out.push_back({ti, li, c.weight * p * s / sbar, n.path.fixed_count(), s});
    });
  }
  return out;
}

Dist tilted_dist(const DecisionTree& b, const BoolFn& f, const Dist& mu,
                 double alpha, ScoreKind kind) {
  if (b.bits() != f.bits()) throw InputError("tree and function widths differ");
  mu.check_support(f);
  std::vector<double> w(std::size_t(1) << f.bits(), 0.0);
  double z = 0;
  for (Word x : f.domain()) {
    double m = mu.weight(x);
    if (m <= 0) continue;
    const TreeNode& n = b.node(b.evaluate(x));
    double s = leaf_score(f, mu, n.path, kind);
    w[x] = m * s * std::exp(-alpha * n.path.fixed_count());
    z += w[x];
  }
  if (z <= 0) throw InfeasibleError("tilted distribution has zero mass");
  for (auto& v : w) v /= z;
  return Dist(f.bits(), std::move(w));
}

}  // namespace dqlab
