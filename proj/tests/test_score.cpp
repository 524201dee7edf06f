#include <cmath>

#include "doctest.h"
#include "dqlab/builtin.hpp"
#include "dqlab/score.hpp"
#include "dqlab/stats.hpp"

using namespace dqlab;

TEST_CASE("score function point values") {
  CHECK(eval_score(ScoreKind::success, 0.3) == doctest::Approx(0.7));
  CHECK(eval_score(ScoreKind::hellinger, 0.5) == doctest::Approx(0.5));
  CHECK(eval_score(ScoreKind::entropy, 0.0) == doctest::Approx(1.0));
  CHECK(eval_score(ScoreKind::entropy, 1.0) == doctest::Approx(1.0));
  CHECK(eval_score(ScoreKind::entropy, 0.5) == doctest::Approx(0.5));
  CHECK_THROWS_AS(eval_score(ScoreKind::success, 1.5), InputError);
  CHECK_THROWS_AS(eval_score(ScoreKind::success, -0.1), InputError);
}

TEST_CASE("all three score kinds satisfy the axioms") {
  for (ScoreKind k :
       {ScoreKind::success, ScoreKind::hellinger, ScoreKind::entropy}) {
    AxiomReport r = check_axioms(k);
    CHECK(r.bounded);
    CHECK(r.normalized);
    CHECK(r.symmetric);
    CHECK(r.monotone);
    CHECK(r.continuous);
  }
}

TEST_CASE("the additive entropy variant fails normalization") {
  // phi(p) = 1 - 2^(-h(p))/2 gives 3/4 at p = 1/2 instead of 1/2, so it is
  // not a score function; the multiplicative form 2^(-h(p)) is the one used.
  auto phi = [](double p) { return 1 - 0.5 * std::pow(2.0, -binary_entropy(p)); };
  CHECK(phi(0.5) == doctest::Approx(0.75));
  AxiomReport r = check_axioms(phi);
  CHECK(!r.normalized);
}

TEST_CASE("leaf scores") {
  BoolFn id1 = resolve_function("id1");
  Dist u1 = Dist::uniform(id1);
  CHECK(leaf_score(id1, u1, Restriction{}, ScoreKind::success) ==
        doctest::Approx(0.5));

  BoolFn and2 = resolve_function("and2");
  Dist u2 = Dist::uniform(and2);
  CHECK(leaf_score(and2, u2, Restriction{}.with(0, 0), ScoreKind::success) ==
        doctest::Approx(1.0));

  BoolFn id2 = BoolFn::product(id1, 2);
  Dist uu = Dist::product(u1, 2);
  CHECK(leaf_score(id2, uu, Restriction{}, ScoreKind::success) ==
        doctest::Approx(0.25));
}

TEST_CASE("tree scores") {
  BoolFn f = resolve_function("id1");
  Dist u = Dist::uniform(f);
  RandomizedAlg stop{DecisionTree::leaf(1)};
  RandomizedAlg query{
      DecisionTree::query(0, DecisionTree::leaf(1), DecisionTree::leaf(1))};
  CHECK(tree_score(stop, f, u, ScoreKind::success) == doctest::Approx(0.5));
  for (ScoreKind k :
       {ScoreKind::success, ScoreKind::hellinger, ScoreKind::entropy})
    CHECK(tree_score(query, f, u, k) == doctest::Approx(1.0));
  RandomizedAlg half(std::vector<WeightedTree>{
      {0.5, stop.components()[0].tree}, {0.5, query.components()[0].tree}});
  CHECK(tree_score(half, f, u, ScoreKind::success) == doctest::Approx(0.75));
}

TEST_CASE("hellinger loss") {
  BoolFn f = resolve_function("id1");
  Dist u = Dist::uniform(f);
  RandomizedAlg stop{DecisionTree::leaf(1)};
  RandomizedAlg query{
      DecisionTree::query(0, DecisionTree::leaf(1), DecisionTree::leaf(1))};
  CHECK(hellinger_loss(stop, f, u) == doctest::Approx(1.0));
  CHECK(hellinger_loss(query, f, u) == doctest::Approx(0.0));
  // Hellinger score (1+delta)/2 is the same as loss 1-delta.
  double delta = 0.4;
  RandomizedAlg mix(std::vector<WeightedTree>{
      {delta, query.components()[0].tree}, {1 - delta, stop.components()[0].tree}});
  CHECK(tree_score(mix, f, u, ScoreKind::hellinger) ==
        doctest::Approx((1 + delta) / 2));
  CHECK(hellinger_loss(mix, f, u) == doctest::Approx(1 - delta));
}

namespace {

// Success probability of a majority-vote labeled tree, by brute force.
double brute_success(const DecisionTree& t, const BoolFn& f, const Dist& mu) {
  DecisionTree labeled = t;
  labeled.relabel_optimal(f, mu);
  double s = 0;
  for (Word x : f.domain())
    if (labeled.node(labeled.evaluate(x)).label == (int)f.value(x))
      s += mu.weight(x);
  return s;
}

}  // namespace

TEST_CASE("success score equals the brute-force majority-vote probability") {
  BoolFn base = resolve_function("xor2");
  Dist mu(2, {0.1, 0.2, 0.3, 0.4});
  BoolFn f = BoolFn::product(base, 2);
  Dist mun = Dist::product(mu, 2);
  std::vector<DecisionTree> trees;
  trees.push_back(DecisionTree::leaf(4));
  trees.push_back(DecisionTree::query(0, DecisionTree::leaf(4),
                                      DecisionTree::leaf(4)));
  trees.push_back(DecisionTree::query(
      1,
      DecisionTree::query(2, DecisionTree::leaf(4), DecisionTree::leaf(4)),
      DecisionTree::query(3, DecisionTree::leaf(4), DecisionTree::leaf(4))));
  for (auto& t : trees) {
    RandomizedAlg a{t};
    CHECK(tree_score(a, f, mun, ScoreKind::success) ==
          doctest::Approx(brute_success(t, f, mun)).epsilon(1e-12));
  }
}

TEST_CASE("entropy product score is two to the minus entropy sum") {
  BoolFn base = resolve_function("and2");
  Dist mu(2, {0.15, 0.35, 0.3, 0.2});
  BoolFn f = BoolFn::product(base, 2);
  Dist mun = Dist::product(mu, 2);
  Restriction leaf = Restriction{}.with(1, 1);  // cuts into block 0 only
  double h0 = binary_entropy(mu.conditioned(Restriction{}.with(1, 1))
                                 .p_one(base, Restriction{}));
  double h1 = binary_entropy(mu.p_one(base, Restriction{}));
  CHECK(leaf_score(f, mun, leaf, ScoreKind::entropy) ==
        doctest::Approx(std::pow(2.0, -(h0 + h1))).epsilon(1e-12));
}

TEST_CASE("tree scores stay inside the per-arity bounds") {
  BoolFn f = BoolFn::product(resolve_function("id1"), 2);
  Dist u = Dist::product(Dist(1, {0.3, 0.7}), 2);
  RandomizedAlg stop{DecisionTree::leaf(2)};
  for (ScoreKind k :
       {ScoreKind::success, ScoreKind::hellinger, ScoreKind::entropy}) {
    double s = tree_score(stop, f, u, k);
    CHECK(s >= 0.25);
    CHECK(s <= 1.0);
  }
}
