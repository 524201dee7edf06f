#include "dqlab/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "dqlab/lp.hpp"
#include "dqlab/stats.hpp"

namespace dqlab {

double tensorization_residual(const BoolFn& base, const Dist& base_mu, int n,
                              double alpha, ScoreKind kind,
                              std::size_t budget_states) {
  if (base.blocks() != 1) throw InputError("base function must be single-block");
  DsResult single = discounted_score(base, base_mu, alpha, kind,
                                     TieBreak::prefer_stop, budget_states);
  BoolFn fn = BoolFn::product(base, n);
  Dist mun = Dist::product(base_mu, n);
  DsResult joint = discounted_score(fn, mun, alpha, kind,
                                    TieBreak::prefer_stop, budget_states);
  return joint.value - std::pow(single.value, n);
}

FrontQuery avg_complexity(const BoolFn& f, const Dist& mu, double gamma,
                          ScoreKind kind, std::size_t budget_states) {
  return min_cost_at_score(pareto_score_cost(f, mu, kind, budget_states), gamma);
}

FrontQuery scost_complexity(const BoolFn& f, const Dist& mu, double gamma,
                            ScoreKind kind, std::size_t budget_states) {
  return min_ratio_at_score(pareto_score_scost(f, mu, kind, budget_states),
                            gamma);
}

namespace {

Dist dist_from_weights(const BoolFn& f, const std::vector<double>& w) {
  double total = 0;
  for (double v : w) total += v;
  std::vector<double> dense(std::size_t(1) << f.bits(), 0.0);
  for (std::size_t i = 0; i < f.domain().size(); ++i)
    dense[f.domain()[i]] = w[i] / total;
  return Dist(f.bits(), std::move(dense));
}

// Euclidean projection onto the probability simplex (sorting algorithm).
void project_simplex(std::vector<double>& v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0, theta = 0;
  int rho = 0;
  for (int i = 0; i < (int)u.size(); ++i) {
    css += u[i];
    double t = (css - 1) / (i + 1);
    if (u[i] - t > 0) {
      rho = i;
      theta = t;
    }
  }
  (void)rho;
  for (auto& x : v) x = std::max(0.0, x - theta);
}

}  // namespace

OuterResult max_over_mu(const BoolFn& f, double gamma, OuterObjective obj,
                        ScoreKind kind, const SolveConfig& cfg) {
  const std::size_t n = f.domain().size();
  auto inner = [&](const std::vector<double>& w) -> FrontQuery {
    Dist mu = dist_from_weights(f, w);
    return obj == OuterObjective::avg_cost
               ? avg_complexity(f, mu, gamma, kind, cfg.budget_states)
               : scost_complexity(f, mu, gamma, kind, cfg.budget_states);
  };

  OuterResult best;
  best.value = -1;
  auto consider = [&](const std::vector<double>& w) {
    FrontQuery q = inner(w);
    if (q.value > best.value) {
      best.value = q.value;
      best.mu = dist_from_weights(f, w);
      best.witness = q.witness;
    }
  };

  if ((int)n <= cfg.grid_max_support) {
    // Exhaustive simplex grid at resolution 1/grid_resolution.
    std::vector<double> w(n, 0.0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i + 1 == n) {
        w[i] = left;
        if (std::any_of(w.begin(), w.end(), [](double v) { return v > 0; }))
          consider(w);
        return;
      }
      for (int k = 0; k <= left; ++k) {
        w[i] = k;
        rec(i + 1, left - k);
      }
    };
    rec(0, cfg.grid_resolution);
    best.certified = true;
    return best;
  }

  // Multi-start projected subgradient ascent with a forward-difference
  // gradient estimate.
  Rng rng(cfg.seed);
  const double h = 1e-4;
  for (int r = 0; r < cfg.restarts; ++r) {
    std::vector<double> w = random_simplex_point(rng, n);
    consider(w);
    for (int t = 1; t <= cfg.steps; ++t) {
      double v0 = inner(w).value;
      std::vector<double> g(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> wb = w;
        wb[i] += h;
        g[i] = (inner(wb).value - v0) / h;
      }
      double step = 0.5 / std::sqrt((double)t);
      for (std::size_t i = 0; i < n; ++i) w[i] += step * g[i];
      project_simplex(w);
      // Keep every coordinate marginally positive so conditional biases stay
      // defined along the ascent path.
      for (auto& x : w) x = std::max(x, 1e-12);
      consider(w);
    }
  }
  best.certified = false;
  return best;
}

namespace {

// Best response to input weights: the depth-bounded labeled tree maximizing
// the weighted count of correct inputs.
class PricingDp {
 public:
  PricingDp(const BoolFn& f, const std::vector<double>& w, int depth)
      : f_(f), w_(w), depth_(depth) {}

  double value(const Restriction& rho) {
    auto key = (std::uint64_t(rho.mask) << kMaxBits) | rho.vals;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    double best = leaf_value(rho).second;
    if (rho.fixed_count() < depth_) {
      for (int p = 0; p < f_.bits(); ++p) {
        if (rho.fixes(p)) continue;
        double v = value(rho.with(p, 0)) + value(rho.with(p, 1));
        best = std::max(best, v);
      }
    }
    memo_.emplace(key, best);
    return best;
  }

  DecisionTree build(const Restriction& rho) {
    double best = value(rho);
    auto [label, lv] = leaf_value(rho);
    if (lv >= best - 1e-12) return DecisionTree::leaf(f_.bits(), label);
    for (int p = 0; p < f_.bits(); ++p) {
      if (rho.fixes(p)) continue;
      double v = value(rho.with(p, 0)) + value(rho.with(p, 1));
      if (v >= best - 1e-12)
        return DecisionTree::query(p, build(rho.with(p, 0)),
                                   build(rho.with(p, 1)));
    }
    return DecisionTree::leaf(f_.bits(), label);
  }

 private:
  std::pair<int, double> leaf_value(const Restriction& rho) const {
    std::map<Word, double> by_value;
    for (std::size_t i = 0; i < f_.domain().size(); ++i) {
      Word x = f_.domain()[i];
      if (!rho.contains(x)) continue;
      by_value[f_.value(x)] += w_[i];
    }
    int label = 0;
    double best = 0;
    for (auto& [v, weight] : by_value)
      if (weight > best) {
        best = weight;
        label = (int)v;
      }
    return {label, best};
  }

  const BoolFn& f_;
  const std::vector<double>& w_;
  int depth_;
  std::unordered_map<std::uint64_t, double> memo_;
};

std::vector<char> success_row(const DecisionTree& t, const BoolFn& f) {
  std::vector<char> row(f.domain().size(), 0);
  for (std::size_t i = 0; i < f.domain().size(); ++i) {
    const TreeNode& n = t.node(t.evaluate(f.domain()[i]));
    row[i] = n.label == (int)f.value(f.domain()[i]) ? 1 : 0;
  }
  return row;
}

struct GameSolution {
  double value = 0;
  RandomizedAlg mixture;
};

// Worst-case success game at a fixed depth budget: mixtures of labeled trees
// against adversarial inputs, solved by row generation on the packing LP
//   max sum(w)  s.t.  for each tree, sum_x succ(x) w(x) <= 1.
// The LP variables double as the pricing weights; the tree duals give the
// mixture.  The game value is 1 / sum(w).
GameSolution depth_game(const BoolFn& f, int depth, const SolveConfig& cfg) {
  std::vector<DecisionTree> trees;
  std::vector<std::vector<char>> succ;
  std::unordered_set<std::string> seen;
  auto add = [&](DecisionTree t) {
    t.set_label_bits(f.blocks());
    std::string key = t.to_sexpr();
    if (!seen.insert(key).second) return false;
    succ.push_back(success_row(t, f));
    trees.push_back(std::move(t));
    return true;
  };
  for (Word lab = 0; lab < (Word(1) << f.blocks()); ++lab)
    add(DecisionTree::leaf(f.bits(), (int)lab));

  const std::size_t nx = f.domain().size();
  for (;;) {
    LpProblem lp;
    lp.c.assign(nx, 1.0);
    for (auto& row : succ) {
      lp.a.emplace_back(row.begin(), row.end());
      lp.sense.push_back(Sense::le);
      lp.b.push_back(1.0);
    }
    LpResult sol = solve_lp(lp);
    if (sol.status != LpResult::Status::optimal)
      throw InfeasibleError("worst-case game LP failed");
    PricingDp pricing(f, sol.x, depth);
    double best = pricing.value(Restriction{});
    if (best <= 1 + 1e-9 || (int)trees.size() >= cfg.lp_max_columns) {
      if ((int)trees.size() >= cfg.lp_max_columns && best > 1 + 1e-9)
        throw BudgetError("column budget exhausted in worst-case solve");
      GameSolution gs;
      gs.value = 1.0 / sol.obj;
      std::vector<WeightedTree> mix;
      for (std::size_t t = 0; t < trees.size(); ++t)
        if (sol.dual[t] > 1e-12) mix.push_back({sol.dual[t], trees[t]});
      gs.mixture = RandomizedAlg(std::move(mix));
      return gs;
    }
    if (!add(pricing.build(Restriction{}))) {
      // Numerical stall: the best response is already present.
      GameSolution gs;
      gs.value = 1.0 / sol.obj;
      std::vector<WeightedTree> mix;
      for (std::size_t t = 0; t < trees.size(); ++t)
        if (sol.dual[t] > 1e-12) mix.push_back({sol.dual[t], trees[t]});
      gs.mixture = RandomizedAlg(std::move(mix));
      return gs;
    }
  }
}

}  // namespace

WorstCaseResult worst_case_R(const BoolFn& f, double gamma,
                             const SolveConfig& cfg) {
  if (gamma > 1 + 1e-12)
    throw InfeasibleError("success target above 1 is unattainable");
  for (int d = 0; d <= f.bits(); ++d) {
    GameSolution gs = depth_game(f, d, cfg);
    if (gs.value >= gamma - 1e-9) {
      WorstCaseResult r;
      r.depth = d;
      r.game_value = gs.value;
      r.witness = gs.mixture;
      return r;
    }
  }
  throw InfeasibleError("no depth attains the success target");
}

std::vector<DecisionTree> enumerate_labeled_trees(const BoolFn& f, int max_depth,
                                                  std::size_t budget) {
  std::unordered_map<Word, std::vector<DecisionTree>> memo;
  std::size_t built = 0;
  std::function<const std::vector<DecisionTree>&(Word, int)> rec =
      [&](Word avail, int depth_left) -> const std::vector<DecisionTree>& {
    auto it = memo.find(avail);
    if (it != memo.end()) return it->second;
    std::vector<DecisionTree> out;
    for (Word lab = 0; lab < (Word(1) << f.blocks()); ++lab)
      out.push_back(DecisionTree::leaf(f.bits(), (int)lab));
    if (depth_left > 0) {
      for (int p = 0; p < f.bits(); ++p) {
        if (!((avail >> p) & 1)) continue;
        const auto& subs = rec(avail & ~(Word(1) << p), depth_left - 1);
        for (const auto& t0 : subs)
          for (const auto& t1 : subs) {
            out.push_back(DecisionTree::query(p, t0, t1));
            if (++built > budget)
              throw BudgetError("tree enumeration budget exhausted");
          }
      }
    }
    return memo.emplace(avail, std::move(out)).first->second;
  };
  Word all = (Word(1) << f.bits()) - 1;
  return rec(all, std::min(max_depth, f.bits()));
}

WorstCaseAvgResult worst_case_avg_R(const BoolFn& f, double gamma,
                                    const SolveConfig& cfg) {
  std::vector<DecisionTree> trees = enumerate_labeled_trees(f, f.bits());
  const std::size_t nt = trees.size(), nx = f.domain().size();
  // Variables: one weight per tree plus the worst-case cost cap; minimize the
  // cap subject to per-input cost and success constraints.
  LpProblem lp;
  lp.c.assign(nt + 1, 0.0);
  lp.c[nt] = -1.0;
  for (std::size_t i = 0; i < nx; ++i) {
    Word x = f.domain()[i];
    std::vector<double> cost_row(nt + 1, 0.0), succ_row(nt + 1, 0.0);
    for (std::size_t t = 0; t < nt; ++t) {
      const TreeNode& n = trees[t].node(trees[t].evaluate(x));
      cost_row[t] = n.path.fixed_count();
      succ_row[t] = n.label == (int)f.value(x) ? 1.0 : 0.0;
    }
    cost_row[nt] = -1.0;
    lp.a.push_back(std::move(cost_row));
    lp.sense.push_back(Sense::le);
    lp.b.push_back(0.0);
    lp.a.push_back(std::move(succ_row));
    lp.sense.push_back(Sense::ge);
    lp.b.push_back(gamma);
  }
  std::vector<double> ones(nt + 1, 1.0);
  ones[nt] = 0.0;
  lp.a.push_back(std::move(ones));
  lp.sense.push_back(Sense::eq);
  lp.b.push_back(1.0);
  LpResult sol = solve_lp(lp);
  if (sol.status != LpResult::Status::optimal)
    throw InfeasibleError("worst-case-average LP infeasible");
  WorstCaseAvgResult r;
  r.value = sol.x[nt];
  std::vector<WeightedTree> mix;
  for (std::size_t t = 0; t < nt; ++t)
    if (sol.x[t] > 1e-12) mix.push_back({sol.x[t], trees[t]});
  r.witness = RandomizedAlg(std::move(mix));
  (void)cfg;
  return r;
}

AlphaStar find_alpha_star(const BoolFn& f, const Dist& mu, double gamma,
                          ScoreKind kind, std::size_t budget_states) {
  if (gamma < 0.5 || gamma > 1 + 1e-12)
    throw InputError("target score must lie in [1/2, 1]");
  auto smax = [&](double a) {
    return discounted_score(f, mu, a, kind, TieBreak::max_score, budget_states);
  };
  auto smin = [&](double a) {
    return discounted_score(f, mu, a, kind, TieBreak::min_score, budget_states);
  };
  DsResult at0 = smax(0.0);
  if (gamma > at0.score + 1e-9)
    throw InfeasibleError("target score above the best achievable score");
  double stop = leaf_score(f, mu, Restriction{}, kind);
  AlphaStar res;
  if (gamma <= stop + 1e-12) {
    res.degenerate = true;
    res.alpha = std::numeric_limits<double>::infinity();
    res.ds = stop;
    res.score = res.score_low = res.score_high = stop;
    res.mixture = RandomizedAlg(DecisionTree::leaf(f.bits()));
    return res;
  }
  double lo = 0, hi = 1;
  while (smax(hi).score >= gamma) {
    hi *= 2;
    if (hi > 1e4)
      throw InfeasibleError("no finite discount rate brings the score down");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
    double mid = 0.5 * (lo + hi);
    if (smax(mid).score >= gamma)
      lo = mid;
    else
      hi = mid;
  }
  res.alpha = 0.5 * (lo + hi);
  DsResult high = smax(lo);       // score >= gamma
  DsResult low = smin(lo);        // smallest score among optima at lo
  if (low.score > gamma) low = smax(hi);  // cross the gap from below
  res.score_low = low.score;
  res.score_high = high.score;
  double d1 = gamma - low.score, d2 = high.score - gamma;
  if (d1 < 0) d1 = 0;
  if (d2 < 0) d2 = 0;
  if (d1 + d2 < 1e-15) {
    res.mixture = RandomizedAlg(high.witness);
  } else {
    res.mixture = RandomizedAlg(
        {{d2 / (d1 + d2), low.witness}, {d1 / (d1 + d2), high.witness}});
  }
  DsResult at_star = smax(res.alpha);
  res.ds = at_star.value;
  res.score = tree_score(res.mixture, f, mu, kind);
  return res;
}

EquivalenceReport equivalence_bounds(const BoolFn& f, const Dist& mu,
                                     double gamma, ScoreKind kind,
                                     const std::vector<double>& alpha_grid,
                                     std::size_t budget_states) {
  EquivalenceReport rep;
  rep.svalue = scost_complexity(f, mu, gamma, kind, budget_states).value;
  for (double a : alpha_grid) {
    if (a <= 0) throw InputError("lower-bound grid needs positive rates");
    double ds = discounted_score(f, mu, a, kind, TieBreak::prefer_stop,
                                 budget_states)
                    .value;
    double bound = std::log(gamma / ds) / a;
    rep.alphas.push_back(a);
    rep.lower.push_back(bound);
    if (rep.svalue < bound - 1e-8) rep.lower_ok = false;
  }
  rep.astar = find_alpha_star(f, mu, gamma, kind, budget_states);
  if (rep.astar.degenerate) {
    rep.upper = 0;
  } else {
    rep.upper =
        8 * std::log(2.0) / rep.astar.alpha * std::log(gamma / rep.astar.ds);
  }
  if (rep.svalue > rep.upper + 1e-8) rep.upper_ok = false;
  return rep;
}

}  // namespace dqlab
