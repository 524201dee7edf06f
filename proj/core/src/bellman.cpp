#include "dqlab/bellman.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace dqlab {

namespace {

using Rational = boost::multiprecision::cpp_rational;

std::uint64_t state_key(const Restriction& r) {
  return (std::uint64_t(r.mask) << kMaxBits) | r.vals;
}

// Conditional structure of one restriction state: block biases at a stop and
// branch probabilities per queryable position.
template <class V>
struct StateView {
  V total{};
  std::vector<V> block_one;                 // mass with block value 1
  std::vector<std::array<V, 2>> branch;     // per position, per bit
};

template <class V, class WeightAt>
StateView<V> scan_state(const BoolFn& f, const Restriction& rho,
                        const WeightAt& weight_at) {
  StateView<V> sv;
  sv.block_one.assign(f.blocks(), V{});
  sv.branch.assign(f.bits(), {V{}, V{}});
  const auto& dom = f.domain();
  for (std::size_t i = 0; i < dom.size(); ++i) {
    Word x = dom[i];
    if (!rho.contains(x)) continue;
    V w = weight_at(i);
    if (w == V{}) continue;
    sv.total += w;
    Word v = f.value(x);
    for (int b = 0; b < f.blocks(); ++b)
      if (bit_at(v, b)) sv.block_one[b] += w;
    for (int p = 0; p < f.bits(); ++p)
      if (!rho.fixes(p)) sv.branch[p][bit_at(x, p)] += w;
  }
  return sv;
}

struct Rec {
  double value = 0;
  double score = 0;
  int action = -1;  // -1 stop, else query position
};

class DsSolver {
 public:
  DsSolver(const BoolFn& f, const Dist& mu, double alpha, ScoreKind kind,
           TieBreak tb, std::size_t budget)
      : f_(f), mu_(mu), disc_(std::exp(-alpha)), kind_(kind), tb_(tb),
        budget_(budget) {}

  const Rec& solve(const Restriction& rho) {
    auto key = state_key(rho);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    if (memo_.size() >= budget_)
      throw BudgetError("state budget exhausted in discounted-score solve");
    auto sv = scan_state<double>(f_, rho, [&](std::size_t i) {
      return mu_.weight(f_.domain()[i]);
    });
    Rec rec;
    rec.score = rec.value = stop_score(sv);
    const double tol = 1e-12 * std::max(1.0, std::abs(rec.value));
    for (int p = 0; p < f_.bits(); ++p) {
      if (rho.fixes(p)) continue;
      double v = 0, s = 0;
      for (int b = 0; b < 2; ++b) {
        double pb = sv.branch[p][b] / sv.total;
        if (pb <= 0) continue;
        const Rec& child = solve(rho.with(p, b));
        v += pb * child.value;
        s += pb * child.score;
      }
      v *= disc_;
      bool better = v > rec.value + tol;
      bool tie = !better && v > rec.value - tol;
      if (tie) {
        if (tb_ == TieBreak::max_score && s > rec.score + 1e-15) better = true;
        if (tb_ == TieBreak::min_score && s < rec.score - 1e-15) better = true;
      }
      if (better) {
        rec.value = v;
        rec.score = s;
        rec.action = p;
      }
    }
    return memo_.emplace(key, rec).first->second;
  }

  DecisionTree witness(const Restriction& rho) {
    const Rec& rec = solve(rho);
    if (rec.action < 0) return DecisionTree::leaf(f_.bits());
    int p = rec.action;
    DecisionTree sub[2];
    for (int b = 0; b < 2; ++b) {
      Restriction child = rho.with(p, b);
      // A zero-mass branch never executes; close it with a leaf.
      sub[b] = mu_.mass(child) > 0 ? witness(child)
                                   : DecisionTree::leaf(f_.bits());
    }
    return DecisionTree::query(p, sub[0], sub[1]);
  }

 private:
  double stop_score(const StateView<double>& sv) const {
    double s = 1;
    for (int b = 0; b < f_.blocks(); ++b)
      s *= eval_score(kind_, sv.block_one[b] / sv.total);
    return s;
  }

  const BoolFn& f_;
  const Dist& mu_;
  double disc_;
  ScoreKind kind_;
  TieBreak tb_;
  std::size_t budget_;
  std::unordered_map<std::uint64_t, Rec> memo_;
};

}  // namespace

DsResult discounted_score(const BoolFn& f, const Dist& mu, double alpha,
                          ScoreKind kind, TieBreak tb,
                          std::size_t budget_states) {
  if (f.bits() != mu.bits()) throw InputError("function and distribution widths differ");
  if (alpha < 0) throw InputError("discount rate must be nonnegative");
  mu.check_support(f);
  DsSolver solver(f, mu, alpha, kind, tb, budget_states);
  Restriction root;
  const Rec& rec = solver.solve(root);
  DsResult res;
  res.value = rec.value;
  res.score = rec.score;
  res.witness = solver.witness(root);
  return res;
}

namespace {

class ExactSolver {
 public:
  ExactSolver(const BoolFn& f, std::vector<Rational> w, Rational disc,
              std::size_t budget)
      : f_(f), w_(std::move(w)), disc_(std::move(disc)), budget_(budget) {}

  const Rational& solve(const Restriction& rho) {
    auto key = state_key(rho);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    if (memo_.size() >= budget_)
      throw BudgetError("state budget exhausted in exact solve");
    auto sv = scan_state<Rational>(f_, rho,
                                   [&](std::size_t i) { return w_[i]; });
    Rational best = 1;
    {
      // Success score of a stop: product over blocks of max(p, 1-p).
      Rational s = 1;
      for (int b = 0; b < f_.blocks(); ++b) {
        Rational p = sv.block_one[b] / sv.total;
        s *= p > Rational(1, 2) ? p : Rational(1) - p;
      }
      best = s;
    }
    for (int p = 0; p < f_.bits(); ++p) {
      if (rho.fixes(p)) continue;
      Rational v = 0;
      for (int b = 0; b < 2; ++b) {
        if (sv.branch[p][b] == 0) continue;
        v += (sv.branch[p][b] / sv.total) * solve(rho.with(p, b));
      }
      v *= disc_;
      if (v > best) best = v;
    }
    return memo_.emplace(key, best).first->second;
  }

 private:
  const BoolFn& f_;
  std::vector<Rational> w_;
  Rational disc_;
  std::size_t budget_;
  std::unordered_map<std::uint64_t, Rational> memo_;
};

Rational exact_value(const BoolFn& f, const std::vector<Rational>& w,
                     const Rational& disc, std::size_t budget) {
  ExactSolver solver(f, w, disc, budget);
  return solver.solve(Restriction{});
}

std::vector<Rational> product_weights(const BoolFn& base,
                                      const std::vector<long long>& mu_num,
                                      const BoolFn& fn) {
  Rational denom = 0;
  for (long long v : mu_num) denom += v;
  std::vector<Rational> joint;
  joint.reserve(fn.domain().size());
  for (Word x : fn.domain()) {
    Rational p = 1;
    for (int i = 0; i < fn.blocks(); ++i) {
      Word bx = fn.block_input(x, i);
      auto it = std::lower_bound(base.domain().begin(), base.domain().end(), bx);
      p *= Rational(mu_num[it - base.domain().begin()]) / denom;
    }
    joint.push_back(p);
  }
  return joint;
}

}  // namespace

ExactValue discounted_score_exact(const BoolFn& f,
                                  const std::vector<long long>& mu_num,
                                  long long disc_num, long long disc_den,
                                  std::size_t budget_states) {
  if (mu_num.size() != f.domain().size())
    throw InputError("weight numerators must align with the domain");
  if (disc_num < 0 || disc_den <= 0 || disc_num > disc_den)
    throw InputError("discount factor must lie in [0,1]");
  std::vector<Rational> w;
  Rational total = 0;
  for (long long v : mu_num) {
    if (v < 0) throw InputError("weight numerators must be nonnegative");
    total += v;
  }
  if (total == 0) throw InputError("weights sum to zero");
  for (long long v : mu_num) w.push_back(Rational(v) / total);
  Rational val = exact_value(f, w, Rational(disc_num, disc_den), budget_states);
  ExactValue out;
  std::ostringstream os;
  os << val;
  out.repr = os.str();
  out.approx = val.convert_to<double>();
  return out;
}

bool tensorization_exact_holds(const BoolFn& base,
                               const std::vector<long long>& mu_num, int n,
                               long long disc_num, long long disc_den,
                               std::size_t budget_states) {
  if (base.blocks() != 1) throw InputError("base function must be single-block");
  if (mu_num.size() != base.domain().size())
    throw InputError("weight numerators must align with the domain");
  Rational disc(disc_num, disc_den);
  std::vector<Rational> w;
  Rational total = 0;
  for (long long v : mu_num) total += v;
  for (long long v : mu_num) w.push_back(Rational(v) / total);
  Rational single = exact_value(base, w, disc, budget_states);
  BoolFn fn = BoolFn::product(base, n);
  Rational joint =
      exact_value(fn, product_weights(base, mu_num, fn), disc, budget_states);
  Rational power = 1;
  for (int i = 0; i < n; ++i) power *= single;
  return joint == power;
}

}  // namespace dqlab
