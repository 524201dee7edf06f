#include "doctest.h"
#include "dqlab/builtin.hpp"
#include "dqlab/tree.hpp"

using namespace dqlab;

namespace {

DecisionTree full2() {
  return DecisionTree::query(
      0, DecisionTree::query(1, DecisionTree::leaf(2), DecisionTree::leaf(2)),
      DecisionTree::query(1, DecisionTree::leaf(2), DecisionTree::leaf(2)));
}

}  // namespace

TEST_CASE("evaluation reaches the path-consistent leaf") {
  DecisionTree q = DecisionTree::query(0, DecisionTree::leaf(1),
                                       DecisionTree::leaf(1));
  int l1 = q.evaluate(1);
  CHECK(q.is_leaf(l1));
  CHECK(q.node(l1).path.fixes(0));
  CHECK(q.node(l1).path.contains(1));
  CHECK(!q.node(l1).path.contains(0));

  DecisionTree stop = DecisionTree::leaf(1);
  CHECK(stop.evaluate(0) == stop.root());
  CHECK(stop.evaluate(1) == stop.root());
}

TEST_CASE("no position is queried twice and paths match edges") {
  DecisionTree t = full2();
  for (int leaf : t.leaves()) {
    const Restriction& p = t.node(leaf).path;
    CHECK(p.fixed_count() == 2);
  }
  CHECK(t.depth() == 2);
}

TEST_CASE("truncation replaces depth-d nodes by unlabeled leaves") {
  DecisionTree t = full2();
  CHECK(t.truncated(0) == DecisionTree::leaf(2));
  CHECK(t.truncated(2) == t);
  DecisionTree t1 = t.truncated(1);
  CHECK(t1.depth() == 1);
  CHECK(t1.node(t1.root()).query == 0);
  // Cost law: every input's cost becomes min(cost, d).
  for (Word x = 0; x < 4; ++x) {
    for (int d = 0; d <= 3; ++d) {
      int before = t.node(t.evaluate(x)).path.fixed_count();
      int after = t.truncated(d).node(t.truncated(d).evaluate(x))
                      .path.fixed_count();
      CHECK(after == std::min(before, d));
    }
  }
}

TEST_CASE("s-expression round trip") {
  DecisionTree t = full2();
  t.set_label_bits(1);
  DecisionTree back = DecisionTree::parse_sexpr(t.to_sexpr(), 2);
  CHECK(back == t);

  DecisionTree lab = DecisionTree::leaf(2, 1);
  CHECK(lab.to_sexpr() == "(leaf 1)");
  CHECK(DecisionTree::parse_sexpr("(leaf -)", 2) == DecisionTree::leaf(2));
  CHECK_THROWS_AS(DecisionTree::parse_sexpr("(q 0 (leaf 0))", 1), InputError);
  CHECK_THROWS_AS(DecisionTree::parse_sexpr("(q 5 (leaf 0) (leaf 1))", 2),
                  InputError);
}

TEST_CASE("product labels serialize as bit strings") {
  DecisionTree l = DecisionTree::leaf(2, 0b10);
  l.set_label_bits(2);
  // label word 0b10 has bit 0 = 0 and bit 1 = 1.
  CHECK(l.to_sexpr() == "(leaf 01)");
  DecisionTree back = DecisionTree::parse_sexpr("(leaf 01)", 2);
  CHECK(back.node(back.root()).label == 0b10);
}

TEST_CASE("mixture normalization and round trip") {
  RandomizedAlg a(std::vector<WeightedTree>{{2.0, DecisionTree::leaf(1, 0)},
                                            {2.0, DecisionTree::leaf(1, 1)}});
  CHECK(a.components()[0].weight == doctest::Approx(0.5));
  RandomizedAlg back = RandomizedAlg::parse(a.serialize(), 1);
  CHECK(back.size() == 2);
  CHECK(back.components()[1].weight == doctest::Approx(0.5));
  CHECK(back.components()[0].tree == a.components()[0].tree);

  // Tiny components are dropped.
  RandomizedAlg b(std::vector<WeightedTree>{{1.0, DecisionTree::leaf(1, 0)},
                                            {1e-17, DecisionTree::leaf(1, 1)}});
  CHECK(b.size() == 1);
}

TEST_CASE("optimal relabeling follows the majority value") {
  BoolFn f = resolve_function("maj3");
  Dist u = Dist::uniform(f);
  DecisionTree t = DecisionTree::query(0, DecisionTree::leaf(3),
                                       DecisionTree::leaf(3));
  t.relabel_optimal(f, u);
  CHECK(t.node(t.evaluate(0b000)).label == 0);
  CHECK(t.node(t.evaluate(0b111)).label == 1);
}
