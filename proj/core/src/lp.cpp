#include "dqlab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dqlab {

namespace {
constexpr double kTol = 1e-9;
}

LpResult solve_lp(const LpProblem& p, std::size_t max_iters) {
  const std::size_t m = p.a.size();
  const std::size_t n = p.c.size();
  if (p.b.size() != m || p.sense.size() != m)
    throw InputError("LP shape mismatch");
  for (auto& row : p.a)
    if (row.size() != n) throw InputError("LP shape mismatch");

  // Row-normalize so every right-hand side is nonnegative.
  std::vector<std::vector<double>> a = p.a;
  std::vector<double> b = p.b;
  std::vector<Sense> sense = p.sense;
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < 0) {
      for (auto& v : a[i]) v = -v;
      b[i] = -b[i];
      if (sense[i] == Sense::le) sense[i] = Sense::ge;
      else if (sense[i] == Sense::ge) sense[i] = Sense::le;
    }
  }

  // Column layout: structural | slack/surplus | artificial.
  std::size_t n_slack = 0, n_art = 0;
  std::vector<int> slack_col(m, -1), art_col(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    if (sense[i] != Sense::eq) slack_col[i] = (int)(n + n_slack++);
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (sense[i] != Sense::le) art_col[i] = (int)(n + n_slack + n_art++);
  }
  const std::size_t cols = n + n_slack + n_art;

  std::vector<std::vector<double>> t(m, std::vector<double>(cols + 1, 0.0));
  std::vector<int> basis(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    if (slack_col[i] >= 0) t[i][slack_col[i]] = sense[i] == Sense::le ? 1 : -1;
    if (art_col[i] >= 0) t[i][art_col[i]] = 1;
    t[i][cols] = b[i];
    basis[i] = art_col[i] >= 0 ? art_col[i] : slack_col[i];
  }

  std::vector<bool> banned(cols, false);
  std::vector<double> red(cols + 1, 0.0);

  auto rebuild_reduced = [&](const std::vector<double>& obj) {
    for (std::size_t j = 0; j <= cols; ++j) {
      double r = j < obj.size() ? obj[j] : 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        double cb = basis[i] < (int)obj.size() ? obj[basis[i]] : 0.0;
        if (cb != 0) r -= cb * t[i][j];
      }
      red[j] = r;
    }
  };

  std::size_t iters = 0;
  auto pivot = [&](std::size_t pr, std::size_t pc) {
    double piv = t[pr][pc];
    for (auto& v : t[pr]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == pr || t[i][pc] == 0) continue;
      double f = t[i][pc];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[pr][j];
    }
    double f = red[pc];
    if (f != 0)
      for (std::size_t j = 0; j <= cols; ++j) red[j] -= f * t[pr][j];
    basis[pr] = (int)pc;
  };

  // Bland's rule: smallest improving column, smallest basis index on ratio
  // ties.  Returns false on optimality, throws on unboundedness.
  auto iterate = [&]() -> bool {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (banned[j]) continue;
      if (red[j] > kTol) { enter = j; break; }
    }
    if (enter == cols) return false;
    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= kTol) continue;
      double ratio = t[i][cols] / t[i][enter];
      if (ratio < best - kTol ||
          (ratio < best + kTol && (leave == m || basis[i] < basis[leave]))) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == m) throw std::domain_error("unbounded");
    pivot(leave, enter);
    if (++iters > max_iters) throw BudgetError("simplex iteration budget exhausted");
    return true;
  };

  LpResult res;
  // Phase 1: drive the artificials to zero.
  if (n_art > 0) {
    std::vector<double> obj(cols, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      if (art_col[i] >= 0) obj[art_col[i]] = -1.0;
    rebuild_reduced(obj);
    try {
      while (iterate()) {}
    } catch (const std::domain_error&) {
      // Phase-1 objective is bounded by zero; cannot happen.
      res.status = LpResult::Status::infeasible;
      return res;
    }
    double infeas = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (art_col[i] >= 0 && basis[i] == art_col[i]) infeas += t[i][cols];
    if (infeas > 1e-7) {
      res.status = LpResult::Status::infeasible;
      return res;
    }
    // Pivot remaining zero-level artificials out where possible and ban the
    // artificial columns from phase 2.
    for (std::size_t i = 0; i < m; ++i) {
      if (art_col[i] < 0 || basis[i] != art_col[i]) continue;
      for (std::size_t j = 0; j < n + n_slack; ++j) {
        if (std::abs(t[i][j]) > kTol) {
          pivot(i, j);
          break;
        }
      }
    }
    for (std::size_t i = 0; i < m; ++i)
      if (art_col[i] >= 0) banned[art_col[i]] = true;
  }

  // Phase 2.
  {
    std::vector<double> obj(cols, 0.0);
    for (std::size_t j = 0; j < n; ++j) obj[j] = p.c[j];
    rebuild_reduced(obj);
    try {
      while (iterate()) {}
    } catch (const std::domain_error&) {
      res.status = LpResult::Status::unbounded;
      return res;
    }
  }

  res.status = LpResult::Status::optimal;
  res.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= 0 && basis[i] < (int)n) res.x[basis[i]] = t[i][cols];
  res.obj = 0;
  for (std::size_t j = 0; j < n; ++j) res.obj += p.c[j] * res.x[j];
  // Duals from the reduced costs of the identity-like columns.
  res.dual.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (sense[i] == Sense::le)
      res.dual[i] = -red[slack_col[i]];
    else if (sense[i] == Sense::ge)
      res.dual[i] = red[slack_col[i]];
    else
      res.dual[i] = -red[art_col[i]];
  }
  // Undo the sign flips applied during row normalization.
  for (std::size_t i = 0; i < m; ++i)
    if (p.b[i] < 0) res.dual[i] = -res.dual[i];
  return res;
}

}  // namespace dqlab
