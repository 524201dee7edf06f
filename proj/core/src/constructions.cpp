#include "dqlab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>

namespace dqlab {

namespace {

constexpr double kTol = 1e-9;
constexpr std::size_t kMixCap = 20000;

// Copy of `t` from `node` down with every query already fixed by rho
// collapsed into the surviving branch.
DecisionTree restrict_tree(const DecisionTree& t, int node,
                           const Restriction& rho) {
  const TreeNode& n = t.node(node);
  if (n.query < 0) {
    DecisionTree l = DecisionTree::leaf(t.bits(), n.label);
    l.set_label_bits(t.label_bits());
    return l;
  }
  if (rho.fixes(n.query))
    return restrict_tree(t, rho.value_at(n.query) ? n.child1 : n.child0, rho);
  return DecisionTree::query(
      n.query, restrict_tree(t, n.child0, rho.with(n.query, 0)),
      restrict_tree(t, n.child1, rho.with(n.query, 1)));
}

void merge_weighted(std::vector<WeightedTree>& v) {
  std::unordered_map<std::string, std::size_t> seen;
  std::vector<WeightedTree> out;
  for (auto& c : v) {
    auto [it, fresh] = seen.try_emplace(c.tree.to_sexpr(), out.size());
    if (fresh)
      out.push_back(std::move(c));
    else
      out[it->second].weight += c.weight;
  }
  v = std::move(out);
}

// Per-input probability that the mixture's leaf label matches f.
std::vector<double> correct_prob(const RandomizedAlg& a, const BoolFn& f) {
  std::vector<double> p(std::size_t(1) << f.bits(), 0.0);
  for (auto& c : a.components())
    for (Word x : f.domain()) {
      const TreeNode& n = c.tree.node(c.tree.evaluate(x));
      if (n.label == (int)f.value(x)) p[x] += c.weight;
    }
  return p;
}

double labeled_success_of(const RandomizedAlg& a, const BoolFn& f,
                          const Dist& mu) {
  return stats(a, f, mu, ScoreKind::success).labeled_success;
}

}  // namespace

RandomizedAlg component_at_score(const BoolFn& f, const Dist& mu, double gamma,
                                 std::size_t budget_states) {
  if (f.blocks() != 1)
    throw InputError("components are built for single-block functions");
  ParetoFront front = pareto_score_cost(f, mu, ScoreKind::success, budget_states);
  FrontQuery q = min_cost_at_score(front, gamma);
  RandomizedAlg a = q.witness;
  a.relabel_optimal(f, mu);
  a.label_unlabeled(0);
  double s = labeled_success_of(a, f, mu);
  if (s > gamma + 1e-12 && gamma >= 0.5) {
    // The frontier vertex overshoots; dilute with a fair coin guess, which
    // succeeds with probability exactly 1/2 on every input.
    double lam = (gamma - 0.5) / (s - 0.5);
    std::vector<WeightedTree> mix;
    for (auto& c : a.components()) mix.push_back({lam * c.weight, c.tree});
    mix.push_back({(1 - lam) / 2, DecisionTree::leaf(f.bits(), 0)});
    mix.push_back({(1 - lam) / 2, DecisionTree::leaf(f.bits(), 1)});
    a = RandomizedAlg(std::move(mix));
  }
  return a;
}

namespace {

int skip_fixed(const DecisionTree& t, int node, const Restriction& rho) {
  while (t.node(node).query >= 0 && rho.fixes(t.node(node).query)) {
    const TreeNode& n = t.node(node);
    node = rho.value_at(n.query) ? n.child1 : n.child0;
  }
  return node;
}

// Three-stage composition: run d1, then d2 on the same input (repeated
// queries answered from the path), output the agreed value or else run d3.
DecisionTree boost_tree(const DecisionTree& d1, const DecisionTree& d2,
                        const DecisionTree& d3) {
  int bits = d1.bits();
  std::function<DecisionTree(int, Restriction)> stage3 =
      [&](int node, Restriction rho) -> DecisionTree {
    node = skip_fixed(d3, node, rho);
    const TreeNode& n = d3.node(node);
    if (n.query < 0) return DecisionTree::leaf(bits, n.label);
    return DecisionTree::query(n.query,
                               stage3(n.child0, rho.with(n.query, 0)),
                               stage3(n.child1, rho.with(n.query, 1)));
  };
  std::function<DecisionTree(int, Restriction, int)> stage2 =
      [&](int node, Restriction rho, int y1) -> DecisionTree {
    node = skip_fixed(d2, node, rho);
    const TreeNode& n = d2.node(node);
    if (n.query < 0) {
      if (n.label == y1) return DecisionTree::leaf(bits, y1);
      return stage3(d3.root(), rho);
    }
    return DecisionTree::query(n.query,
                               stage2(n.child0, rho.with(n.query, 0), y1),
                               stage2(n.child1, rho.with(n.query, 1), y1));
  };
  std::function<DecisionTree(int, Restriction)> stage1 =
      [&](int node, Restriction rho) -> DecisionTree {
    const TreeNode& n = d1.node(node);
    if (n.query < 0) return stage2(d2.root(), rho, n.label);
    return DecisionTree::query(n.query,
                               stage1(n.child0, rho.with(n.query, 0)),
                               stage1(n.child1, rho.with(n.query, 1)));
  };
  return stage1(d1.root(), Restriction{});
}

}  // namespace

ConstructionReport schapire_boost(const BoolFn& f, const Dist& mu, double gamma,
                                  std::size_t budget_states) {
  if (f.blocks() != 1)
    throw InputError("boosting works on single-block functions");
  if (gamma < 0.5 || gamma > 1)
    throw InputError("boosting needs gamma in [1/2, 1]");
  ConstructionReport rep;
  rep.target = 3 * gamma * gamma - 2 * gamma * gamma * gamma;

  RandomizedAlg a1 = component_at_score(f, mu, gamma, budget_states);
  StatReport st1 = stats(a1, f, mu, ScoreKind::success);

  if (gamma > 1 - 1e-12) {
    // The reweighting denominator 2 gamma (1-gamma) vanishes; one perfect
    // run already sits at the fixed point of the amplification map.
    rep.alg = a1;
    rep.measured = st1;
    rep.budget = 4 * st1.cost_avg;
    rep.details["component_budget"] = st1.cost_avg;
    rep.pass = std::abs(st1.labeled_success - rep.target) <= kTol;
    return rep;
  }

  std::vector<double> alpha1 = correct_prob(a1, f);
  const std::size_t size = std::size_t(1) << f.bits();

  std::vector<double> nu(size, 0.0);
  double nu_sum = 0;
  double denom = 2 * gamma * (1 - gamma);
  for (Word x = 0; x < size; ++x) {
    nu[x] = mu.weight(x) *
            ((1 - gamma) * alpha1[x] + gamma * (1 - alpha1[x])) / denom;
    nu_sum += nu[x];
  }
  rep.details["nu_sum"] = nu_sum;
  Dist nud(f.bits(), nu);

  RandomizedAlg a2 = component_at_score(f, nud, gamma, budget_states);
  StatReport st2 = stats(a2, f, nud, ScoreKind::success);
  std::vector<double> alpha2 = correct_prob(a2, f);

  std::vector<double> pi(size, 0.0);
  double pi_mass = 0;
  for (Word x = 0; x < size; ++x) {
    pi[x] = mu.weight(x) *
            (alpha1[x] * (1 - alpha2[x]) + (1 - alpha1[x]) * alpha2[x]);
    pi_mass += pi[x];
  }
  rep.details["pi_mass"] = pi_mass;

  RandomizedAlg a3;
  StatReport st3;
  if (pi_mass > 1e-12) {
    for (auto& v : pi) v /= pi_mass;
    Dist pid(f.bits(), pi);
    a3 = component_at_score(f, pid, gamma, budget_states);
    st3 = stats(a3, f, pid, ScoreKind::success);
  } else {
    // The first two runs agree almost surely; the tiebreaker never fires.
    a3 = RandomizedAlg(DecisionTree::leaf(f.bits(), 0));
  }

  std::vector<WeightedTree> mix;
  for (auto& c1 : a1.components())
    for (auto& c2 : a2.components())
      for (auto& c3 : a3.components())
        mix.push_back({c1.weight * c2.weight * c3.weight,
                       boost_tree(c1.tree, c2.tree, c3.tree)});
  RandomizedAlg b(std::move(mix));
  b.merge_duplicates();

  rep.alg = b;
  rep.measured = stats(b, f, mu, ScoreKind::success);
  double comp_budget = std::max({st1.cost_avg, st2.cost_avg, st3.cost_avg});
  rep.budget = 4 * comp_budget;
  rep.details["component_budget"] = comp_budget;
  rep.details["s1"] = st1.labeled_success;
  rep.details["s2"] = st2.labeled_success;
  rep.details["s3"] = st3.labeled_success;
  rep.pass = std::abs(rep.measured.labeled_success - rep.target) <= kTol &&
             rep.measured.cost_avg <= rep.budget + kTol &&
             std::abs(nu_sum - 1) <= kTol;
  return rep;
}

ConstructionReport boost_to_delta(const BoolFn& f, const Dist& mu, double gamma,
                                  double delta, std::size_t budget_states) {
  if (delta <= 0) throw InputError("delta must be positive");
  if (gamma < (1 + delta) / 2 - 1e-12 || gamma > 1 - delta + 1e-12)
    throw InputError("gamma outside the boosting band [(1+delta)/2, 1-delta]");
  ConstructionReport rep = schapire_boost(f, mu, gamma, budget_states);
  // The boosted success is 3g^2 - 2g^3, so the one-round gain factors as
  // g(2g-1)(1-g).  On the band, (2g-1)(1-g) >= delta/3 at both endpoints and
  // the factor is concave, so with g >= 1/2 the guaranteed gain is delta/6.
  rep.target = gamma + delta / 6;
  rep.details["display_gain"] = (2 * gamma - 1) * (1 - gamma);
  rep.details["gain"] = gamma * (2 * gamma - 1) * (1 - gamma);
  rep.pass = rep.measured.labeled_success >= rep.target - kTol &&
             rep.details["display_gain"] >= delta / 3 - kTol &&
             rep.measured.cost_avg <= rep.budget + kTol;
  return rep;
}

namespace {

// Replace each leaf of `t` by its continuation mixture; independent per-leaf
// choices expand into a product mixture of composed trees.
std::vector<WeightedTree> graft_leaves(
    const DecisionTree& t, int node,
    const std::unordered_map<int, std::vector<WeightedTree>>& conts) {
  const TreeNode& n = t.node(node);
  if (n.query < 0) {
    std::vector<WeightedTree> out;
    for (auto& c : conts.at(node))
      out.push_back({c.weight, restrict_tree(c.tree, c.tree.root(), n.path)});
    return out;
  }
  auto l = graft_leaves(t, n.child0, conts);
  auto r = graft_leaves(t, n.child1, conts);
  if (l.size() * r.size() > kMixCap)
    throw BudgetError("composed mixture exceeds the expansion cap");
  std::vector<WeightedTree> out;
  for (auto& a : l)
    for (auto& b : r)
      out.push_back(
          {a.weight * b.weight, DecisionTree::query(n.query, a.tree, b.tree)});
  merge_weighted(out);
  return out;
}

}  // namespace

ConstructionReport hellinger_compose(const BoolFn& f, const Dist& mu,
                                     const RandomizedAlg& a, double beta,
                                     std::size_t budget_states) {
  if (f.blocks() != 1)
    throw InputError("hellinger composition works on single-block functions");
  if (beta < 0 || beta > 1) throw InputError("beta must lie in [0, 1]");
  StatReport before = stats(a, f, mu, ScoreKind::hellinger);
  double target_score = 1 - beta / 2;

  double max_cont_cost = 0, max_cont_loss = 0;
  std::vector<WeightedTree> out;
  for (auto& comp : a.components()) {
    std::unordered_map<int, std::vector<WeightedTree>> conts;
    comp.tree.for_each_leaf([&](int li) {
      const Restriction& rho = comp.tree.node(li).path;
      double m0 = 0, m1 = 0;
      for (Word x : f.domain()) {
        if (!rho.contains(x)) continue;
        (f.value(x) ? m1 : m0) += mu.weight(x);
      }
      if (m0 + m1 <= 0) {
        // Unreachable leaf; keep it as-is.
        DecisionTree l = DecisionTree::leaf(f.bits(), comp.tree.node(li).label);
        conts[li] = {{1.0, std::move(l)}};
        return;
      }
      // nu_l gives each value class half the mass; a one-sided leaf keeps
      // its (loss-free) side renormalized.
      std::vector<double> w(std::size_t(1) << f.bits(), 0.0);
      for (Word x : f.domain()) {
        if (!rho.contains(x)) continue;
        if (m0 > 0 && m1 > 0)
          w[x] = mu.weight(x) / (2 * (f.value(x) ? m1 : m0));
        else
          w[x] = mu.weight(x) / (m0 + m1);
      }
      Dist nul(f.bits(), std::move(w));
      ParetoFront front =
          pareto_score_cost(f, nul, ScoreKind::hellinger, budget_states);
      FrontQuery q = min_cost_at_score(front, target_score);
      max_cont_cost = std::max(
          max_cont_cost, stats(q.witness, f, nul, ScoreKind::hellinger).cost_avg);
      max_cont_loss =
          std::max(max_cont_loss, hellinger_loss(q.witness, f, nul));
      conts[li] = q.witness.components();
    });
    auto expanded = graft_leaves(comp.tree, comp.tree.root(), conts);
    for (auto& e : expanded) out.push_back({comp.weight * e.weight, e.tree});
  }
  RandomizedAlg c(std::move(out));
  c.merge_duplicates();

  ConstructionReport rep;
  rep.alg = c;
  rep.measured = stats(c, f, mu, ScoreKind::hellinger);
  rep.target = before.hel_loss * beta;
  rep.budget = before.cost_avg + 2 * max_cont_cost;
  rep.details["loss_before"] = before.hel_loss;
  rep.details["max_cont_loss"] = max_cont_loss;
  rep.details["max_cont_cost"] = max_cont_cost;
  rep.pass = rep.measured.hel_loss <= rep.target + kTol &&
             rep.measured.hel_loss <= before.hel_loss * max_cont_loss + kTol &&
             rep.measured.cost_avg <= rep.budget + kTol;
  return rep;
}

ConstructionReport truncate_and_guess(const RandomizedAlg& a, const BoolFn& f,
                                      const Dist& mu, double delta) {
  if (delta <= 0) throw InputError("delta must be positive");
  RandomizedAlg labeled = a;
  if (!stats(labeled, f, mu, ScoreKind::success).all_labeled) {
    labeled.relabel_optimal(f, mu);
    labeled.label_unlabeled(0);
  }
  StatReport before = stats(labeled, f, mu, ScoreKind::success);
  int d = (int)std::floor((6.0 / delta) * before.cost_avg);
  RandomizedAlg t = labeled.truncated(d);
  t.relabel_optimal(f, mu);
  t.label_unlabeled(0);

  ConstructionReport rep;
  rep.alg = t;
  rep.measured = stats(t, f, mu, ScoreKind::success);
  rep.target = before.labeled_success - delta / 6;
  rep.budget = d;
  rep.details["cutoff"] = d;
  rep.details["success_before"] = before.labeled_success;
  rep.details["cost_before"] = before.cost_avg;
  rep.pass = rep.measured.cost_worst <= d &&
             rep.measured.labeled_success >= rep.target - 1e-12;
  return rep;
}

namespace {

Dist block_marginal(const Dist& d, int i, int m) {
  Word bm = (Word(1) << m) - 1;
  std::vector<double> w(std::size_t(1) << m, 0.0);
  for (Word x = 0; x < (Word)d.weights().size(); ++x)
    w[(x >> (i * m)) & bm] += d.weight(x);
  return Dist(m, std::move(w));
}

}  // namespace

ConstructionReport sequential_product(const BoolFn& f, const Dist& mu_joint,
                                      double gamma, double delta,
                                      std::size_t budget_states) {
  if (f.blocks() != 1)
    throw InputError("the base function must be single-block");
  int m = f.bits();
  if (mu_joint.bits() % m != 0)
    throw InputError("joint distribution width is not a multiple of the arity");
  int n = mu_joint.bits() / m;
  if (m * n > 8) throw InputError("joint instance too large");
  BoolFn fn = BoolFn::product(f, n);
  mu_joint.check_support(fn);

  // One boosted-and-truncated component per conditioning context, cached by
  // the set of already-answered bits.
  struct Context {
    RandomizedAlg comp;
    double budget = 0;   // max component cost inside the boosting round
    double success = 0;  // component success against its marginal
  };
  std::unordered_map<std::uint64_t, Context> cache;
  double max_budget = 0;
  auto context_for = [&](const Restriction& rho, int block) -> const Context& {
    std::uint64_t key = (std::uint64_t(rho.mask) << kMaxBits) | rho.vals;
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Dist margin = block_marginal(mu_joint.conditioned(rho), block, m);
    ConstructionReport boosted = schapire_boost(f, margin, gamma, budget_states);
    ConstructionReport cut = truncate_and_guess(boosted.alg, f, margin, delta);
    Context ctx;
    ctx.comp = cut.alg;
    ctx.budget = boosted.details.at("component_budget");
    ctx.success = cut.measured.labeled_success;
    max_budget = std::max(max_budget, ctx.budget);
    return cache.emplace(key, std::move(ctx)).first->second;
  };

  std::function<std::vector<WeightedTree>(int, Restriction, Word)> expand_block;
  std::function<std::vector<WeightedTree>(const DecisionTree&, int, Restriction,
                                          int, Word)>
      walk;
  walk = [&](const DecisionTree& t, int node, Restriction rho, int block,
             Word label) -> std::vector<WeightedTree> {
    const TreeNode& nd = t.node(node);
    if (nd.query < 0)
      return expand_block(block + 1, rho,
                          label | (Word(std::max(nd.label, 0)) << block));
    int q = block * m + nd.query;
    auto l = walk(t, nd.child0, rho.with(q, 0), block, label);
    auto r = walk(t, nd.child1, rho.with(q, 1), block, label);
    if (l.size() * r.size() > kMixCap)
      throw BudgetError("sequential expansion exceeds the mixture cap");
    std::vector<WeightedTree> out;
    for (auto& a : l)
      for (auto& b : r)
        out.push_back(
            {a.weight * b.weight, DecisionTree::query(q, a.tree, b.tree)});
    merge_weighted(out);
    return out;
  };
  expand_block = [&](int block, Restriction rho,
                     Word label) -> std::vector<WeightedTree> {
    if (block == n || mu_joint.mass(rho) <= 0) {
      DecisionTree l = DecisionTree::leaf(m * n, (int)label);
      l.set_label_bits(n);
      return {{1.0, std::move(l)}};
    }
    const Context& ctx = context_for(rho, block);
    std::vector<WeightedTree> out;
    for (auto& c : ctx.comp.components()) {
      auto sub = walk(c.tree, c.tree.root(), rho, block, label);
      for (auto& s : sub) out.push_back({c.weight * s.weight, s.tree});
    }
    merge_weighted(out);
    if (out.size() > kMixCap)
      throw BudgetError("sequential expansion exceeds the mixture cap");
    return out;
  };

  RandomizedAlg b0(expand_block(0, Restriction{}, 0));
  b0.merge_duplicates();

  ConstructionReport rep;
  rep.alg = b0;
  rep.measured = stats(b0, fn, mu_joint, ScoreKind::success);

  // Per-block conditional successes by the chain rule over prefixes.
  std::vector<double> prefix(n + 1, 0.0);
  prefix[0] = 1;
  for (int i = 1; i <= n; ++i) {
    Word want = (Word(1) << i) - 1;
    double p = 0;
    for (auto& c : b0.components())
      for (Word x : fn.domain()) {
        const TreeNode& nd = c.tree.node(c.tree.evaluate(x));
        if ((((Word)nd.label ^ fn.value(x)) & want) == 0)
          p += c.weight * mu_joint.weight(x);
      }
    prefix[i] = p;
  }
  double product = 1;
  for (int i = 0; i < n; ++i) {
    double s = prefix[i] > 0 ? prefix[i + 1] / prefix[i] : 1;
    rep.details["block_success_" + std::to_string(i)] = s;
    product *= s;
  }
  rep.details["success_product"] = product;

  rep.target = std::pow(gamma + delta / 6, n);
  rep.budget = 4 * n * max_budget;
  rep.details["component_budget"] = max_budget;
  rep.pass = std::abs(rep.measured.labeled_success - product) <= kTol &&
             rep.measured.cost_avg <= rep.budget + kTol;
  if (mu_joint.is_product())
    rep.pass = rep.pass && rep.measured.labeled_success >= rep.target - kTol;

  // Cutoff variant: abort once the total cost passes 9n * budget.  The tail
  // control behind it is asymptotic, so its success is reported, not gated.
  int dcut = (int)std::floor(9.0 * n * max_budget);
  RandomizedAlg b = b0.truncated(dcut);
  b.relabel_optimal(fn, mu_joint);
  b.label_unlabeled(0);
  StatReport cut = stats(b, fn, mu_joint, ScoreKind::success);
  rep.details["cutoff"] = dcut;
  rep.details["cutoff_success"] = cut.labeled_success;
  rep.details["cutoff_cost_worst"] = cut.cost_worst;
  return rep;
}

ConstructionReport embed_simulate(const DecisionTree& b, const BoolFn& f,
                                  const Dist& mu, double alpha, ScoreKind kind,
                                  std::size_t budget_states) {
  (void)budget_states;
  if (f.blocks() != 1)
    throw InputError("the base function must be single-block");
  int m = f.bits();
  if (b.bits() % m != 0 || b.bits() > 8)
    throw InputError("tree width must be a small multiple of the arity");
  int n = b.bits() / m;
  BoolFn fn = BoolFn::product(f, n);
  Dist mun = Dist::product(mu, n);
  Dist nu = tilted_dist(b, fn, mun, alpha, kind);

  // Leaf-reaching probabilities pi_i of each simulator, walked down the tree:
  // real queries follow the base measure of the simulator's own block,
  // foreign queries follow nu conditioned on the whole transcript.
  double identity_err = 0;
  std::function<void(int, std::vector<double>)> dfs = [&](int node,
                                                          std::vector<double> p) {
    const TreeNode& nd = b.node(node);
    if (nd.query < 0) {
      double prod = 1;
      for (double v : p) prod *= v;
      double rhs = std::pow(nu.mass(nd.path), n - 1) * mun.mass(nd.path);
      identity_err = std::max(identity_err, std::abs(prod - rhs));
      return;
    }
    int q = nd.query, blk = q / m, qb = q % m;
    const Restriction& rho = nd.path;
    for (int bit = 0; bit < 2; ++bit) {
      std::vector<double> p2 = p;
      for (int i = 0; i < n; ++i) {
        double cond;
        if (i == blk) {
          Restriction bi = rho.block(i, m);
          double zden = mu.mass(bi);
          cond = zden > 0 ? mu.mass(bi.with(qb, bit)) / zden : 0;
        } else {
          double zden = nu.mass(rho);
          cond = zden > 0 ? nu.mass(rho.with(q, bit)) / zden : 0;
        }
        p2[i] *= cond;
      }
      dfs(bit ? nd.child1 : nd.child0, std::move(p2));
    }
  };
  dfs(b.root(), std::vector<double>(n, 1.0));

  // Materialize each simulator as a mixture over its foreign-answer
  // randomness; the foreign branch probabilities depend only on the path, so
  // the product weights form a faithful mixed strategy.
  auto build = [&](int i) {
    std::function<std::vector<WeightedTree>(int, Restriction)> rec =
        [&](int node, Restriction rho) -> std::vector<WeightedTree> {
      const TreeNode& nd = b.node(node);
      if (nd.query < 0) return {{1.0, DecisionTree::leaf(m)}};
      int q = nd.query, blk = q / m, qb = q % m;
      if (blk == i) {
        auto l = rec(nd.child0, rho.with(q, 0));
        auto r = rec(nd.child1, rho.with(q, 1));
        if (l.size() * r.size() > kMixCap)
          throw BudgetError("simulator expansion exceeds the mixture cap");
        std::vector<WeightedTree> out;
        for (auto& a : l)
          for (auto& c : r)
            out.push_back(
                {a.weight * c.weight, DecisionTree::query(qb, a.tree, c.tree)});
        merge_weighted(out);
        return out;
      }
      double zden = nu.mass(rho);
      if (zden <= 0) return {{1.0, DecisionTree::leaf(m)}};
      std::vector<WeightedTree> out;
      for (int bit = 0; bit < 2; ++bit) {
        double pb = nu.mass(rho.with(q, bit)) / zden;
        if (pb <= 0) continue;
        auto sub = rec(bit ? nd.child1 : nd.child0, rho.with(q, bit));
        for (auto& s : sub) out.push_back({pb * s.weight, s.tree});
      }
      merge_weighted(out);
      return out;
    };
    return rec(b.root(), Restriction{});
  };

  std::vector<WeightedTree> mix;
  for (int i = 0; i < n; ++i) {
    auto sims = build(i);
    for (auto& s : sims) mix.push_back({s.weight / n, s.tree});
  }
  RandomizedAlg a(std::move(mix));
  a.merge_duplicates();

  ConstructionReport rep;
  rep.alg = a;
  rep.measured = stats(a, f, mu, kind, alpha);
  double ds_b = stats(RandomizedAlg(b), fn, mun, kind, alpha).discounted;
  rep.target = std::pow(ds_b, 1.0 / n);
  rep.details["ds_b"] = ds_b;
  rep.details["identity_err"] = identity_err;
  rep.pass = identity_err <= 1e-10 &&
             rep.measured.discounted >= rep.target - kTol;
  return rep;
}

}  // namespace dqlab
