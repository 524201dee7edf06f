#include <cmath>

#include "doctest.h"
#include "dqlab/builtin.hpp"
#include "dqlab/stats.hpp"

using namespace dqlab;

namespace {

DecisionTree full_tree(int nbits, const Restriction& rho = {}, int pos = 0) {
  if (pos == nbits) return DecisionTree::leaf(nbits);
  return DecisionTree::query(pos, full_tree(nbits, rho.with(pos, 0), pos + 1),
                             full_tree(nbits, rho.with(pos, 1), pos + 1));
}

RandomizedAlg lazy(const BoolFn& f, const Dist& mu, double p) {
  DecisionTree all = full_tree(f.bits());
  all.relabel_optimal(f, mu);
  return RandomizedAlg(std::vector<WeightedTree>{
      {p, all},
      {(1 - p) / 2, DecisionTree::leaf(f.bits(), 0)},
      {(1 - p) / 2, DecisionTree::leaf(f.bits(), 1)}});
}

}  // namespace

TEST_CASE("lazy parity statistics") {
  BoolFn f = resolve_function("xor2");
  Dist u = Dist::uniform(f);
  double delta = 0.3;
  StatReport st = stats(lazy(f, u, delta), f, u, ScoreKind::success);
  CHECK(st.cost_avg == doctest::Approx(0.6));
  CHECK(st.cost_avg_worst == doctest::Approx(0.6));
  CHECK(st.score == doctest::Approx(0.65));
  CHECK(st.labeled_success == doctest::Approx(0.65));
  CHECK(st.cost_worst == 2);
}

TEST_CASE("score-weighted cost examples") {
  BoolFn f = resolve_function("id1");
  Dist u = Dist::uniform(f);
  RandomizedAlg stop{DecisionTree::leaf(1)};
  CHECK(stats(stop, f, u, ScoreKind::success).scost == doctest::Approx(0.0));

  RandomizedAlg half(std::vector<WeightedTree>{
      {0.5, DecisionTree::leaf(1)},
      {0.5, DecisionTree::query(0, DecisionTree::leaf(1),
                                DecisionTree::leaf(1))}});
  StatReport st = stats(half, f, u, ScoreKind::success);
  CHECK(st.score == doctest::Approx(0.75));
  CHECK(st.scost == doctest::Approx(2.0 / 3));
}

TEST_CASE("reweighted leaf distribution") {
  BoolFn f = resolve_function("id1");
  Dist u = Dist::uniform(f);
  RandomizedAlg half(std::vector<WeightedTree>{
      {0.5, DecisionTree::leaf(1)},
      {0.5, DecisionTree::query(0, DecisionTree::leaf(1),
                                DecisionTree::leaf(1))}});
  auto pi = reweighted_dist(half, f, u, ScoreKind::success);
  REQUIRE(pi.size() == 3);
  double total = 0;
  for (auto& l : pi) {
    CHECK(l.prob == doctest::Approx(1.0 / 3));
    total += l.prob;
  }
  CHECK(total == doctest::Approx(1.0));

  RandomizedAlg stop{DecisionTree::leaf(1)};
  auto point = reweighted_dist(stop, f, u, ScoreKind::success);
  REQUIRE(point.size() == 1);
  CHECK(point[0].prob == doctest::Approx(1.0));
}

TEST_CASE("discounted-score and scost identities through pi") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    BoolFn f = resolve_function(trial % 2 ? "and2" : "xor2");
    auto w = random_simplex_point(rng, 4);
    Dist mu(2, {w[0], w[1], w[2], w[3]});
    double p = 0.2 + 0.6 * (trial / 20.0);
    RandomizedAlg a(std::vector<WeightedTree>{
        {p, full_tree(2)},
        {1 - p, DecisionTree::query(1, DecisionTree::leaf(2),
                                    DecisionTree::leaf(2))}});
    for (ScoreKind k :
         {ScoreKind::success, ScoreKind::hellinger, ScoreKind::entropy}) {
      double alpha = 0.25 + 0.1 * trial;
      StatReport st = stats(a, f, mu, k, alpha);
      auto pi = reweighted_dist(a, f, mu, k);
      double e_disc = 0, e_cost = 0;
      for (auto& l : pi) {
        e_disc += l.prob * std::exp(-alpha * l.cost);
        e_cost += l.prob * l.cost;
      }
      CHECK(st.score * e_disc == doctest::Approx(st.discounted).epsilon(1e-10));
      CHECK(e_cost == doctest::Approx(st.scost).epsilon(1e-10));
    }
  }
}

TEST_CASE("lazy product algorithm has scost mn/2 at vanishing query rate") {
  // With stop probability 1-p the full-readout mixture on f^n has
  // scost = p*mn / (p + (1-p) 2^-n); p = 1/(2^n + 1) makes this exactly mn/2
  // while the plain expected cost p*mn goes to zero.
  BoolFn base = resolve_function("xor2");
  Dist mu = Dist::uniform(base);
  for (int n = 3; n <= 6; ++n) {
    BoolFn f = BoolFn::product(base, n);
    Dist mun = Dist::product(mu, n);
    double p = 1.0 / ((1 << n) + 1);
    RandomizedAlg a(std::vector<WeightedTree>{
        {p, full_tree(f.bits())}, {1 - p, DecisionTree::leaf(f.bits())}});
    StatReport st = stats(a, f, mun, ScoreKind::success);
    double mn = f.bits();
    CHECK(st.scost == doctest::Approx(mn / 2).epsilon(1e-10));
    CHECK(st.cost_avg == doctest::Approx(p * mn));
    CHECK(st.cost_avg < 1.0);
  }
}

TEST_CASE("tilted distribution degenerate cases") {
  BoolFn base = resolve_function("id1");
  BoolFn f = BoolFn::product(base, 2);
  Dist mun = Dist::product(Dist::uniform(base), 2);
  DecisionTree stop = DecisionTree::leaf(2);
  Dist nu = tilted_dist(stop, f, mun, 0.7, ScoreKind::success);
  for (Word x = 0; x < 4; ++x)
    CHECK(nu.weight(x) == doctest::Approx(mun.weight(x)));

  DecisionTree all = full_tree(2);
  Dist nu2 = tilted_dist(all, f, mun, std::log(2.0), ScoreKind::success);
  for (Word x = 0; x < 4; ++x)
    CHECK(nu2.weight(x) == doctest::Approx(0.25));
}

TEST_CASE("empty mixtures are rejected") {
  BoolFn f = resolve_function("id1");
  Dist u = Dist::uniform(f);
  RandomizedAlg empty;
  CHECK_THROWS(stats(empty, f, u, ScoreKind::success));
}
