#include <cmath>

#include "doctest.h"
#include "dqlab/builtin.hpp"
#include "dqlab/pareto.hpp"
#include "dqlab/solvers.hpp"
#include "dqlab/stats.hpp"

using namespace dqlab;

TEST_CASE("one-bit identity expected-cost hull") {
  BoolFn f = resolve_function("id1");
  Dist u = Dist::uniform(f);
  ParetoFront front = pareto_score_cost(f, u, ScoreKind::success);
  REQUIRE(front.pts.size() == 2);
  CHECK(front.pts[0].score == doctest::Approx(0.5));
  CHECK(front.pts[0].cost == doctest::Approx(0.0));
  CHECK(front.pts[1].score == doctest::Approx(1.0));
  CHECK(front.pts[1].cost == doctest::Approx(1.0));
  CHECK(min_cost_at_score(front, 0.75).value == doctest::Approx(0.5));
  CHECK(min_cost_at_score(front, 0.5).value == doctest::Approx(0.0));
  CHECK_THROWS_AS(min_cost_at_score(front, 1.01), InfeasibleError);
}

TEST_CASE("exact AND under uniform averages 1.5 queries") {
  // Query one bit; half the time it is 0 and the answer is settled.
  BoolFn f = resolve_function("and2");
  Dist u = Dist::uniform(f);
  ParetoFront front = pareto_score_cost(f, u, ScoreKind::success);
  CHECK(min_cost_at_score(front, 1.0).value == doctest::Approx(1.5));
}

TEST_CASE("score-weighted hull on the one-bit identity") {
  BoolFn f = resolve_function("id1");
  Dist u = Dist::uniform(f);
  ParetoFront front = pareto_score_scost(f, u, ScoreKind::success);
  CHECK(min_ratio_at_score(front, 0.75).value == doctest::Approx(2.0 / 3));
  CHECK(min_ratio_at_score(front, 0.5).value == doctest::Approx(0.0));
}

TEST_CASE("hull vertices re-evaluate to their coordinates") {
  Rng rng(3);
  for (auto& name : {"and2", "xor2", "or2"}) {
    BoolFn f = resolve_function(name);
    auto w = random_simplex_point(rng, 4);
    Dist mu(2, {w[0], w[1], w[2], w[3]});
    for (ScoreKind k :
         {ScoreKind::success, ScoreKind::hellinger, ScoreKind::entropy}) {
      ParetoFront fc = pareto_score_cost(f, mu, k);
      for (auto& p : fc.pts) {
        StatReport st = stats(RandomizedAlg{p.tree}, f, mu, k);
        CHECK(st.score == doctest::Approx(p.score).epsilon(1e-9));
        CHECK(st.cost_avg == doctest::Approx(p.cost).epsilon(1e-9));
      }
      ParetoFront fs = pareto_score_scost(f, mu, k);
      for (auto& p : fs.pts) {
        StatReport st = stats(RandomizedAlg{p.tree}, f, mu, k);
        CHECK(st.score == doctest::Approx(p.score).epsilon(1e-9));
        CHECK(st.scost * st.score == doctest::Approx(p.cost).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("hulls dominate the exhaustive deterministic point cloud") {
  BoolFn f = resolve_function("or2");
  Dist mu(2, {0.4, 0.3, 0.2, 0.1});
  ParetoFront front = pareto_score_cost(f, mu, ScoreKind::success);
  auto trees = enumerate_labeled_trees(f, 2);
  CHECK(trees.size() > 10);
  for (auto& t : trees) {
    StatReport st = stats(RandomizedAlg{t}, f, mu, ScoreKind::success);
    // No deterministic tree can beat the hull's cheapest cost at its score.
    double hull_cost = min_cost_at_score(front, st.score).value;
    CHECK(st.cost_avg >= hull_cost - 1e-9);
  }
  // Every vertex is attained by some enumerated tree (scores and costs).
  for (auto& p : front.pts) {
    bool hit = false;
    for (auto& t : trees) {
      StatReport st = stats(RandomizedAlg{t}, f, mu, ScoreKind::success);
      if (std::abs(st.score - p.score) <= 1e-9 &&
          std::abs(st.cost_avg - p.cost) <= 1e-9)
        hit = true;
    }
    CHECK(hit);
  }
}

TEST_CASE("front slopes strictly increase") {
  BoolFn f = resolve_function("maj3");
  Dist mu = resolve_dist("biased", f);
  ParetoFront front = pareto_score_cost(f, mu, ScoreKind::hellinger);
  for (std::size_t i = 2; i < front.pts.size(); ++i) {
    double s1 = (front.pts[i - 1].cost - front.pts[i - 2].cost) /
                (front.pts[i - 1].score - front.pts[i - 2].score);
    double s2 = (front.pts[i].cost - front.pts[i - 1].cost) /
                (front.pts[i].score - front.pts[i - 1].score);
    CHECK(s2 > s1 - 1e-12);
  }
}
