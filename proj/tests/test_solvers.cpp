#include <cmath>

#include "doctest.h"
#include "dqlab/builtin.hpp"
#include "dqlab/solvers.hpp"
#include "dqlab/stats.hpp"

using namespace dqlab;

TEST_CASE("worst-case complexity examples") {
  CHECK(worst_case_R(resolve_function("id1"), 0.75).depth == 1);
  CHECK(worst_case_R(resolve_function("id1"), 0.5).depth == 0);
  CHECK(worst_case_R(resolve_function("and2"), 1.0).depth == 2);
  CHECK(worst_case_R(resolve_function("xor2"), 0.51).depth == 2);
  CHECK_THROWS_AS(worst_case_R(resolve_function("id1"), 1.5),
                  InfeasibleError);
}

TEST_CASE("worst-case witnesses meet the target on every input") {
  BoolFn f = resolve_function("maj3");
  double gamma = 0.8;
  WorstCaseResult r = worst_case_R(f, gamma);
  for (Word x : f.domain()) {
    double s = 0;
    for (auto& c : r.witness.components()) {
      if (c.tree.node(c.tree.evaluate(x)).label == (int)f.value(x))
        s += c.weight;
    }
    CHECK(s >= gamma - 1e-9);
  }
  for (auto& c : r.witness.components()) CHECK(c.tree.depth() <= r.depth);
}

TEST_CASE("worst-case average stays below worst case") {
  for (auto& name : {"id1", "and2", "xor2", "or2"}) {
    BoolFn f = resolve_function(name);
    for (double g : {0.55, 0.7, 0.9}) {
      WorstCaseAvgResult avg = worst_case_avg_R(f, g);
      CHECK(avg.value <= worst_case_R(f, g).depth + 1e-9);
    }
  }
}

TEST_CASE("truncating an average-case algorithm gives a worst-case one") {
  // Markov: per-input expected cost <= v, so cutting at (4/delta)*v loses at
  // most delta/4 success per input; the result is a worst-case algorithm
  // with cost exactly its truncation budget.
  for (auto& name : {"id1", "xor2"}) {
    BoolFn f = resolve_function(name);
    double delta = 0.5, gamma = (1 + delta) / 2;
    WorstCaseAvgResult avg = worst_case_avg_R(f, gamma);
    int d = (int)std::ceil((4 / delta) * std::max(avg.value, 1e-9));
    RandomizedAlg cut = avg.witness.truncated(d);
    cut.label_unlabeled(0);
    int worst = 0;
    for (auto& c : cut.components()) worst = std::max(worst, c.tree.depth());
    CHECK(worst <= d);
    for (Word x : f.domain()) {
      double s = 0;
      for (auto& c : cut.components())
        if (c.tree.node(c.tree.evaluate(x)).label == (int)f.value(x))
          s += c.weight;
      CHECK(s >= (1 + delta / 2) / 2 - 1e-9);
    }
  }
}

TEST_CASE("max over distributions, certified grid cases") {
  BoolFn f = resolve_function("id1");
  OuterResult r = max_over_mu(f, 0.75, OuterObjective::avg_cost,
                              ScoreKind::success);
  CHECK(r.certified);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-6));
  OuterResult z = max_over_mu(f, 0.5, OuterObjective::avg_cost,
                              ScoreKind::success);
  CHECK(z.value == doctest::Approx(0.0));
}

TEST_CASE("point-mass distributions make every target free") {
  BoolFn f = resolve_function("and2");
  Dist pt = resolve_dist("point", f);
  CHECK(avg_complexity(f, pt, 0.999, ScoreKind::success).value ==
        doctest::Approx(0.0));
}

TEST_CASE("alpha-star on the one-bit identity") {
  BoolFn f = resolve_function("id1");
  Dist u = Dist::uniform(f);
  AlphaStar a = find_alpha_star(f, u, 0.75, ScoreKind::success);
  CHECK(!a.degenerate);
  CHECK(a.alpha == doctest::Approx(std::log(2.0)).epsilon(1e-6));
  CHECK(a.ds == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(a.score == doctest::Approx(0.75).epsilon(1e-9));
  REQUIRE(a.mixture.size() == 2);
  CHECK(a.mixture.components()[0].weight == doctest::Approx(0.5).epsilon(1e-6));

  AlphaStar deg = find_alpha_star(f, u, 0.5, ScoreKind::success);
  CHECK(deg.degenerate);
  CHECK(deg.score >= 0.5);

  // gamma = 1 forces the pure query tree; the straddle point is still ln 2,
  // where the stop tree and the query tree tie, and the lower-bound quantity
  // (1/alpha) ln(gamma / DS_alpha) evaluates to the score-weighted cost 1.
  AlphaStar top = find_alpha_star(f, u, 1.0, ScoreKind::success);
  CHECK(top.score == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::log(1.0 / top.ds) / top.alpha == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("equivalence bounds on the one-bit identity") {
  BoolFn f = resolve_function("id1");
  Dist u = Dist::uniform(f);
  std::vector<double> grid;
  for (int i = 0; i < 32; ++i) grid.push_back(0.05 * std::pow(1.2, i));
  EquivalenceReport rep =
      equivalence_bounds(f, u, 0.75, ScoreKind::success, grid);
  CHECK(rep.svalue == doctest::Approx(2.0 / 3));
  CHECK(rep.lower_ok);
  CHECK(rep.upper_ok);
  CHECK(rep.astar.alpha == doctest::Approx(std::log(2.0)).epsilon(1e-6));

  EquivalenceReport triv =
      equivalence_bounds(f, u, 0.5, ScoreKind::success, grid);
  CHECK(triv.svalue == doctest::Approx(0.0));
  CHECK(triv.lower_ok);
  CHECK(triv.upper_ok);
}

TEST_CASE("measure witnesses reproduce the reported values") {
  BoolFn f = resolve_function("or2");
  Dist mu(2, {0.3, 0.3, 0.2, 0.2});
  double gamma = 0.8;
  FrontQuery avg = avg_complexity(f, mu, gamma, ScoreKind::success);
  StatReport st = stats(avg.witness, f, mu, ScoreKind::success);
  CHECK(st.score >= gamma - 1e-9);
  CHECK(st.cost_avg == doctest::Approx(avg.value).epsilon(1e-9));
  FrontQuery sw = scost_complexity(f, mu, gamma, ScoreKind::success);
  StatReport st2 = stats(sw.witness, f, mu, ScoreKind::success);
  CHECK(st2.score >= gamma - 1e-9);
  CHECK(st2.scost == doctest::Approx(sw.value).epsilon(1e-9));
}
