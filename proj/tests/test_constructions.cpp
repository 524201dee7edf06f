#include <cmath>

#include "doctest.h"
#include "dqlab/builtin.hpp"
#include "dqlab/constructions.hpp"
#include "dqlab/stats.hpp"

using namespace dqlab;

TEST_CASE("components land exactly on the requested score") {
  BoolFn f = resolve_function("and2");
  Dist mu = resolve_dist("biased", f);
  for (double g : {0.55, 0.7, 0.85, 1.0}) {
    RandomizedAlg a = component_at_score(f, mu, g);
    CHECK(stats(a, f, mu, ScoreKind::success).labeled_success ==
          doctest::Approx(g).epsilon(1e-10));
  }
}

TEST_CASE("schapire boosting hits 3g^2 - 2g^3 exactly") {
  BoolFn f = resolve_function("xor2");
  Dist u = Dist::uniform(f);
  ConstructionReport rep = schapire_boost(f, u, 0.75);
  CHECK(rep.pass);
  CHECK(rep.measured.labeled_success == doctest::Approx(27.0 / 32));
  CHECK(rep.measured.cost_avg <= rep.budget + 1e-9);

  // Fixed points of the boosting map.
  CHECK(schapire_boost(f, u, 0.5).measured.labeled_success ==
        doctest::Approx(0.5));
  CHECK(schapire_boost(resolve_function("and2"),
                       Dist::uniform(resolve_function("and2")), 1.0)
            .measured.labeled_success == doctest::Approx(1.0));
}

TEST_CASE("one boosting round gains delta/6 on the band") {
  BoolFn f = resolve_function("or2");
  Dist u = Dist::uniform(f);
  double delta = 0.2;
  for (double g : {0.6, 0.7, 0.8}) {
    ConstructionReport rep = boost_to_delta(f, u, g, delta);
    CHECK(rep.pass);
    CHECK(rep.measured.labeled_success >= g + delta / 6 - 1e-9);
    CHECK(rep.details.at("display_gain") >= delta / 3 - 1e-9);
  }
  CHECK_THROWS_AS(boost_to_delta(f, u, 0.55, delta), InputError);
  CHECK_THROWS_AS(boost_to_delta(f, u, 0.85, delta), InputError);
}

TEST_CASE("hellinger composition multiplies losses") {
  BoolFn f = resolve_function("id1");
  Dist u = Dist::uniform(f);
  RandomizedAlg stop{DecisionTree::leaf(1)};
  ConstructionReport rep = hellinger_compose(f, u, stop, 1e-12);
  CHECK(rep.pass);
  CHECK(rep.measured.hel_loss <= 1e-9);

  // beta = 1 permits trivial continuations: the loss cannot grow.
  ConstructionReport same = hellinger_compose(f, u, stop, 1.0);
  CHECK(same.pass);
  CHECK(same.measured.hel_loss <= hellinger_loss(stop, f, u) + 1e-9);
}

TEST_CASE("truncation leaves shallow algorithms unchanged") {
  BoolFn f = resolve_function("xor2");
  Dist u = Dist::uniform(f);
  double delta = 0.3;
  RandomizedAlg lazy(std::vector<WeightedTree>{
      {delta, DecisionTree::query(
                  0,
                  DecisionTree::query(1, DecisionTree::leaf(2),
                                      DecisionTree::leaf(2)),
                  DecisionTree::query(1, DecisionTree::leaf(2),
                                      DecisionTree::leaf(2)))},
      {(1 - delta) / 2, DecisionTree::leaf(2, 0)},
      {(1 - delta) / 2, DecisionTree::leaf(2, 1)}});
  lazy.relabel_optimal(f, u);
  StatReport before = stats(lazy, f, u, ScoreKind::success);
  // Cutoff (6/0.3)*0.6 = 12 exceeds depth 2, so nothing changes.
  ConstructionReport rep = truncate_and_guess(lazy, f, u, delta);
  CHECK(rep.pass);
  CHECK(rep.measured.labeled_success ==
        doctest::Approx(before.labeled_success));
  CHECK(rep.measured.cost_worst == before.cost_worst);
}

TEST_CASE("truncation drops success by at most delta/6") {
  BoolFn f = resolve_function("maj3");
  Dist mu = resolve_dist("biased", f);
  RandomizedAlg deep = avg_complexity(f, mu, 0.95, ScoreKind::success).witness;
  deep.relabel_optimal(f, mu);
  deep.label_unlabeled(0);
  StatReport before = stats(deep, f, mu, ScoreKind::success);
  for (double delta : {0.1, 0.3, 0.9}) {
    ConstructionReport rep = truncate_and_guess(deep, f, mu, delta);
    CHECK(rep.pass);
    CHECK(rep.measured.labeled_success >=
          before.labeled_success - delta / 6 - 1e-9);
    CHECK(rep.measured.cost_worst <=
          (6 / delta) * before.cost_avg + 1 + 1e-9);
  }
}

TEST_CASE("sequential product success factorizes") {
  BoolFn base = resolve_function("id1");
  Dist mun = Dist::product(Dist::uniform(base), 2);
  ConstructionReport rep = sequential_product(base, mun, 0.7, 0.2);
  CHECK(rep.pass);
  double prod = rep.details.at("block_success_0") *
                rep.details.at("block_success_1");
  CHECK(rep.details.at("success_product") == doctest::Approx(prod));
  CHECK(rep.measured.labeled_success ==
        doctest::Approx(prod).epsilon(1e-9));
  CHECK(rep.measured.labeled_success >= std::pow(0.7 + 0.2 / 6, 2) - 1e-9);

  // n = 1 reduces to the bounded-costs construction.
  ConstructionReport one = sequential_product(base, Dist::uniform(base),
                                              0.7, 0.2);
  CHECK(one.pass);
}

TEST_CASE("sequential product handles correlated joints") {
  BoolFn base = resolve_function("id1");
  Dist corr(2, {0.5, 0.0, 0.0, 0.5});  // both blocks always equal
  ConstructionReport rep = sequential_product(base, corr, 0.7, 0.2);
  CHECK(rep.pass);
  double prod = rep.details.at("block_success_0") *
                rep.details.at("block_success_1");
  CHECK(rep.measured.labeled_success == doctest::Approx(prod).epsilon(1e-9));
}

TEST_CASE("embedding simulators certify the tensorization direction") {
  BoolFn base = resolve_function("id1");
  BoolFn f = BoolFn::product(base, 2);
  Dist u = Dist::uniform(base);
  Dist uu = Dist::product(u, 2);
  double alpha = 0.4;

  ConstructionReport triv = embed_simulate(DecisionTree::leaf(2), base, u,
                                           alpha, ScoreKind::success);
  CHECK(triv.pass);
  CHECK(triv.measured.discounted ==
        doctest::Approx(std::pow(triv.details.at("ds_b"), 0.5)));

  // Optimal per-block tree run independently: equality by symmetry.
  DecisionTree opt =
      discounted_score(f, uu, alpha, ScoreKind::success).witness;
  ConstructionReport eq = embed_simulate(opt, base, u, alpha,
                                         ScoreKind::success);
  CHECK(eq.pass);

  // Asymmetric tree querying only block 0: the mixture can only do better.
  DecisionTree skew = DecisionTree::query(0, DecisionTree::leaf(2),
                                          DecisionTree::leaf(2));
  ConstructionReport sk = embed_simulate(skew, base, u, alpha,
                                         ScoreKind::success);
  CHECK(sk.pass);
  CHECK(sk.measured.discounted >= sk.target - 1e-9);
}
