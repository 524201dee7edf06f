#include <cmath>

#include "doctest.h"
#include "dqlab/builtin.hpp"
#include "dqlab/dist.hpp"

using namespace dqlab;

TEST_CASE("product distribution weights multiply") {
  Dist base(1, {0.25, 0.75});
  Dist d2 = Dist::product(base, 2);
  // (0,1) puts block 0 at 0 and block 1 at 1.
  CHECK(d2.weight(parse_bits("01", 2, "t")) == doctest::Approx(0.1875));
  CHECK(d2.weight(parse_bits("11", 2, "t")) == doctest::Approx(0.5625));

  Dist u = Dist::product(Dist(1, {0.5, 0.5}), 2);
  for (Word x = 0; x < 4; ++x) CHECK(u.weight(x) == doctest::Approx(0.25));

  Dist p3 = Dist::product(Dist::point(2, 0b11), 3);
  CHECK(p3.weight(0b111111) == doctest::Approx(1.0));
  CHECK(p3.mass(Restriction{}) == doctest::Approx(1.0));
}

TEST_CASE("single-coordinate marginals of a product equal the base") {
  Dist base(2, {0.1, 0.2, 0.3, 0.4});
  Dist d = Dist::product(base, 3);
  for (int i = 0; i < 3; ++i) {
    Dist m = d.marginal(i);
    for (Word x = 0; x < 4; ++x)
      CHECK(m.weight(x) == doctest::Approx(base.weight(x)).epsilon(1e-12));
  }
}

TEST_CASE("conditioning") {
  Dist u(2, {0.25, 0.25, 0.25, 0.25});
  Restriction r = Restriction{}.with(0, 1);
  Dist c = u.conditioned(r);
  CHECK(c.weight(parse_bits("10", 2, "t")) == doctest::Approx(0.5));
  CHECK(c.weight(parse_bits("11", 2, "t")) == doctest::Approx(0.5));
  CHECK(c.weight(parse_bits("00", 2, "t")) == doctest::Approx(0.0));

  Dist same = u.conditioned(Restriction{});
  for (Word x = 0; x < 4; ++x)
    CHECK(same.weight(x) == doctest::Approx(u.weight(x)));

  Dist pt = Dist::point(2, 0b00);
  CHECK_THROWS_AS(pt.conditioned(r), InfeasibleError);
}

TEST_CASE("conditioning composes") {
  Dist d(3, {0.05, 0.1, 0.15, 0.2, 0.05, 0.15, 0.1, 0.2});
  Restriction r1 = Restriction{}.with(0, 1);
  Restriction r2 = Restriction{}.with(2, 0);
  Restriction both = r1.with(2, 0);
  Dist lhs = d.conditioned(r1).conditioned(r2);
  Dist rhs = d.conditioned(both);
  for (Word x = 0; x < 8; ++x)
    CHECK(lhs.weight(x) == doctest::Approx(rhs.weight(x)).epsilon(1e-12));
}

TEST_CASE("distribution files renormalize inside the band only") {
  Dist ok = Dist::parse_text("0 0.5\n1 0.5000000001\n", 1);
  CHECK(ok.weight(0) + ok.weight(1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(Dist::parse_text("0 0.5\n1 0.6\n", 1), InputError);
  CHECK_THROWS_AS(Dist::parse_text("0 0.5\n1 -0.5\n", 1), InputError);
}

TEST_CASE("builtin distributions") {
  BoolFn f = resolve_function("and2");
  Dist u = resolve_dist("unif", f);
  for (Word x : f.domain()) CHECK(u.weight(x) == doctest::Approx(0.25));
  Dist p = resolve_dist("point", f);
  CHECK(p.weight(f.domain()[0]) == doctest::Approx(1.0));
  Dist b = resolve_dist("biased", f);
  CHECK(b.weight(f.domain()[3]) == doctest::Approx(0.4));
  CHECK_THROWS_AS(resolve_dist("nosuch/dist", f), InputError);
}
