#include "dqlab/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace dqlab {

namespace {

constexpr double kTol = 1e-12;

std::uint64_t state_key(const Restriction& r) {
  return (std::uint64_t(r.mask) << kMaxBits) | r.vals;
}

// Drop dominated points, then keep the lower convex envelope (score
// ascending, cost ascending, slopes strictly increasing).
void prune(std::vector<FrontPoint>& pts) {
  std::sort(pts.begin(), pts.end(), [](const FrontPoint& a, const FrontPoint& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.cost < b.cost;
  });
  std::vector<FrontPoint> frontier;
  double best_cost = std::numeric_limits<double>::infinity();
  for (auto& p : pts) {
    if (p.cost < best_cost - kTol) {
      frontier.push_back(std::move(p));
      best_cost = frontier.back().cost;
    }
  }
  std::reverse(frontier.begin(), frontier.end());  // score ascending now
  std::vector<FrontPoint> hull;
  for (auto& p : frontier) {
    while (hull.size() >= 2) {
      const FrontPoint& a = hull[hull.size() - 2];
      const FrontPoint& b = hull[hull.size() - 1];
      // Keep b only if it lies strictly below chord a->p.
      double cross = (b.score - a.score) * (p.cost - a.cost) -
                     (p.score - a.score) * (b.cost - a.cost);
      if (cross > kTol) break;
      hull.pop_back();
    }
    // Collinear or duplicate scores: the dominance sweep already ensured
    // strictly increasing cost, so only the hull test above can drop points.
    hull.push_back(std::move(p));
  }
  pts = std::move(hull);
}

class ParetoSolver {
 public:
  ParetoSolver(const BoolFn& f, const Dist& mu, ScoreKind kind,
               CostObjective obj, std::size_t budget)
      : f_(f), mu_(mu), kind_(kind), obj_(obj), budget_(budget) {}

  const std::vector<FrontPoint>& solve(const Restriction& rho) {
    auto key = state_key(rho);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    if (memo_.size() >= budget_)
      throw BudgetError("state budget exhausted in frontier solve");
    std::vector<FrontPoint> cand;
    cand.push_back(
        {leaf_score(f_, mu_, rho, kind_), 0.0, DecisionTree::leaf(f_.bits())});
    for (int p = 0; p < f_.bits(); ++p) {
      if (rho.fixes(p)) continue;
      double mass[2], total = 0;
      for (int b = 0; b < 2; ++b) {
        mass[b] = mu_.mass(rho.with(p, b));
        total += mass[b];
      }
      double pb[2] = {mass[0] / total, mass[1] / total};
      if (pb[0] <= 0 || pb[1] <= 0) {
        // Querying a constant position only wastes a query; the surviving
        // branch already appears via deeper candidates, so skip it.
        continue;
      }
      const auto& f0 = solve(rho.with(p, 0));
      const auto& f1 = solve(rho.with(p, 1));
      for (const auto& a : f0) {
        for (const auto& b : f1) {
          FrontPoint q;
          q.score = pb[0] * a.score + pb[1] * b.score;
          double child_cost = pb[0] * a.cost + pb[1] * b.cost;
          q.cost = obj_ == CostObjective::expected_cost ? 1 + child_cost
                                                        : q.score + child_cost;
          q.tree = DecisionTree::query(p, a.tree, b.tree);
          cand.push_back(std::move(q));
        }
      }
    }
    prune(cand);
    return memo_.emplace(key, std::move(cand)).first->second;
  }

 private:
  const BoolFn& f_;
  const Dist& mu_;
  ScoreKind kind_;
  CostObjective obj_;
  std::size_t budget_;
  std::unordered_map<std::uint64_t, std::vector<FrontPoint>> memo_;
};

ParetoFront solve_front(const BoolFn& f, const Dist& mu, ScoreKind kind,
                        CostObjective obj, std::size_t budget) {
  if (f.bits() != mu.bits())
    throw InputError("function and distribution widths differ");
  mu.check_support(f);
  ParetoSolver solver(f, mu, kind, obj, budget);
  ParetoFront front;
  front.objective = obj;
  front.pts = solver.solve(Restriction{});
  return front;
}

}  // namespace

ParetoFront pareto_score_cost(const BoolFn& f, const Dist& mu, ScoreKind kind,
                              std::size_t budget_states) {
  return solve_front(f, mu, kind, CostObjective::expected_cost, budget_states);
}

ParetoFront pareto_score_scost(const BoolFn& f, const Dist& mu, ScoreKind kind,
                               std::size_t budget_states) {
  return solve_front(f, mu, kind, CostObjective::score_weighted_cost,
                     budget_states);
}

FrontQuery min_cost_at_score(const ParetoFront& front, double gamma) {
  if (front.objective != CostObjective::expected_cost)
    throw InputError("front tracks the wrong cost objective");
  const auto& pts = front.pts;
  if (pts.empty()) throw InfeasibleError("empty frontier");
  if (gamma > pts.back().score + kTol)
    throw InfeasibleError("target score " + std::to_string(gamma) +
                          " is unattainable");
  FrontQuery q;
  if (gamma <= pts.front().score + kTol) {
    q.value = pts.front().cost;
    q.witness = RandomizedAlg(pts.front().tree);
    return q;
  }
  std::size_t i = 1;
  while (pts[i].score + kTol < gamma) ++i;
  if (gamma >= pts[i].score - kTol) {
    q.value = pts[i].cost;
    q.witness = RandomizedAlg(pts[i].tree);
    return q;
  }
  double lam = (gamma - pts[i - 1].score) / (pts[i].score - pts[i - 1].score);
  q.value = lam * pts[i].cost + (1 - lam) * pts[i - 1].cost;
  q.witness = RandomizedAlg(
      {{1 - lam, pts[i - 1].tree}, {lam, pts[i].tree}});
  return q;
}

FrontQuery min_ratio_at_score(const ParetoFront& front, double gamma) {
  if (front.objective != CostObjective::score_weighted_cost)
    throw InputError("front tracks the wrong cost objective");
  const auto& pts = front.pts;
  if (pts.empty()) throw InfeasibleError("empty frontier");
  if (gamma > pts.back().score + kTol)
    throw InfeasibleError("target score " + std::to_string(gamma) +
                          " is unattainable");
  FrontQuery best;
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) {
    if (p.score + kTol < gamma) continue;
    double r = p.score > 0 ? p.cost / p.score : 0;
    if (r < best.value) {
      best.value = r;
      best.witness = RandomizedAlg(p.tree);
    }
  }
  // The feasibility boundary score == gamma can beat every vertex; it lies on
  // the segment crossing gamma.
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i - 1].score >= gamma || pts[i].score < gamma) continue;
    double lam = (gamma - pts[i - 1].score) / (pts[i].score - pts[i - 1].score);
    double cost = lam * pts[i].cost + (1 - lam) * pts[i - 1].cost;
    double r = gamma > 0 ? cost / gamma : 0;
    if (r < best.value) {
      best.value = r;
      best.witness =
          RandomizedAlg({{1 - lam, pts[i - 1].tree}, {lam, pts[i].tree}});
    }
  }
  return best;
}

}  // namespace dqlab
