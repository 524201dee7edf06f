#include "dqlab/score.hpp"

#include <cmath>

namespace dqlab {

ScoreKind score_kind_from_string(const std::string& name) {
  if (name == "success") return ScoreKind::success;
  if (name == "hellinger") return ScoreKind::hellinger;
  if (name == "entropy") return ScoreKind::entropy;
  throw InputError("unknown score kind '" + name + "'");
}

std::string to_string(ScoreKind k) {
  switch (k) {
    case ScoreKind::success: return "success";
    case ScoreKind::hellinger: return "hellinger";
    case ScoreKind::entropy: return "entropy";
  }
  return "?";
}

double binary_entropy(double p) {
  if (p <= 0 || p >= 1) return 0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

double eval_score(ScoreKind k, double p) {
  if (p < 0 || p > 1) {
    if (p > -1e-15 && p < 0) p = 0;
    else if (p > 1 && p < 1 + 1e-15) p = 1;
    else throw InputError("bias " + std::to_string(p) + " outside [0,1]");
  }
  if (p < 1e-15) p = 0;
  if (p > 1 - 1e-15) p = 1;
  switch (k) {
    case ScoreKind::success:
      return std::max(p, 1 - p);
    case ScoreKind::hellinger:
      return 1 - std::sqrt(p * (1 - p));
    case ScoreKind::entropy:
      return std::exp2(-binary_entropy(p));
  }
  return 0;
}

AxiomReport check_axioms(const std::function<double(double)>& phi,
                         int grid_points) {
  AxiomReport r;
  r.bounded = r.symmetric = r.monotone = r.continuous = true;
  const double tol = 1e-12;
  double prev = phi(0.5);
  r.normalized = std::abs(phi(0.0) - 1) <= tol && std::abs(phi(1.0) - 1) <= tol &&
                 std::abs(phi(0.5) - 0.5) <= tol;
  for (int i = 0; i <= grid_points; ++i) {
    double p = double(i) / grid_points;
    double v = phi(p);
    if (std::isnan(v)) {
      r.continuous = false;
      continue;
    }
    if (v < 0.5 - tol || v > 1 + tol) r.bounded = false;
    if (std::abs(v - phi(1 - p)) > tol) r.symmetric = false;
    if (p > 0.5) {
      double q = double(i - 1) / grid_points;
      if (q >= 0.5 - tol && v < phi(q) - tol) r.monotone = false;
    }
    if (i > 0) {
      double slope = std::abs(v - prev) * grid_points;
      r.lipschitz = std::max(r.lipschitz, slope);
    }
    prev = v;
  }
  if (!std::isfinite(r.lipschitz)) r.continuous = false;
  return r;
}

AxiomReport check_axioms(ScoreKind k, int grid_points) {
  return check_axioms([k](double p) { return eval_score(k, p); }, grid_points);
}

double leaf_score(const BoolFn& f, const Dist& mu, const Restriction& leaf,
                  ScoreKind k) {
  if (f.bits() != mu.bits())
    throw InputError("function and distribution widths differ");
  if (f.blocks() == 1) return eval_score(k, mu.p_one(f, leaf));
  // Per-block conditional biases taken from the joint conditional; the score
  // of a multi-block leaf is defined as the product of per-block scores, so
  // no independence assumption is needed here.
  int n = f.blocks();
  std::vector<double> one(n, 0.0);
  double z = 0;
  for (Word x : f.domain()) {
    if (!leaf.contains(x)) continue;
    double w = mu.weight(x);
    if (w <= 0) continue;
    z += w;
    Word v = f.value(x);
    for (int i = 0; i < n; ++i)
      if (bit_at(v, i)) one[i] += w;
  }
  if (z <= 0)
    throw InfeasibleError("scoring a zero-mass leaf " + leaf.str(f.bits()));
  double s = 1;
  for (int i = 0; i < n; ++i) s *= eval_score(k, one[i] / z);
  return s;
}

}  // namespace dqlab
