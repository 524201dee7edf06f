#include <cmath>

#include "doctest.h"
#include "dqlab/boolfn.hpp"
#include "dqlab/relations.hpp"

using namespace dqlab;

TEST_CASE("threshold exponent matches exact ball sizes") {
  // tau(n, k) = n - log2 of the radius-(n-k) Hamming ball size.
  CHECK(tau(4, 4) == doctest::Approx(4.0));           // ball size 1
  CHECK(tau(4, 3) == doctest::Approx(4 - std::log2(5.0)));
  CHECK(tau(16, 9) == doctest::Approx(16 - std::log2(1 + 16 + 120 + 560 +
                                                     1820 + 4368 + 8008 +
                                                     11440.0)));
  for (int n = 1; n <= 12; ++n)
    for (int k = n / 2 + 1; k <= n; ++k) {
      auto ball = thr_to_list(0, n, k);
      CHECK(std::pow(2.0, n - tau(n, k)) ==
            doctest::Approx((double)ball.size()).epsilon(1e-9));
    }
}

TEST_CASE("relation acceptance definitions") {
  // Thr: agree with the truth on at least k coordinates.
  RelationInstance thr{RelKind::Thr, 4, 3, parse_bits("1010", 4, "t")};
  CHECK(relation_accepts(thr, parse_bits("1010", 4, "t")));
  CHECK(relation_accepts(thr, parse_bits("1110", 4, "t")));
  CHECK(!relation_accepts(thr, parse_bits("0110", 4, "t")));

  // Label: all committed coordinates must be correct.
  RelationInstance lab{RelKind::Label, 4, 2, parse_bits("1010", 4, "t")};
  Restriction good = Restriction{}.with(0, 1).with(2, 1);
  Restriction bad = Restriction{}.with(0, 1).with(1, 1);
  Restriction short_ = Restriction{}.with(0, 1);
  CHECK(relation_accepts(lab, good));
  CHECK(!relation_accepts(lab, bad));
  // Committing fewer than k positions is a malformed answer, not a miss.
  CHECK_THROWS_AS(relation_accepts(lab, short_), InputError);

  // LD: the truth must appear in a list of exactly 2^(n-ell) strings.
  RelationInstance ld{RelKind::LD, 3, 2, 0b101};
  CHECK(relation_accepts(ld, std::vector<Word>{0b101, 0b000}));
  CHECK(!relation_accepts(ld, std::vector<Word>{0b100, 0b000}));
  CHECK_THROWS_AS(relation_accepts(ld, std::vector<Word>{0b101}),
                  InputError);  // wrong list size is malformed
}

TEST_CASE("both reductions produce faithful lists") {
  int n = 6;
  for (int k = n / 2 + 1; k <= n; ++k)
    for (Word z : {Word(0), Word(0b101010), Word(0b111111)}) {
      auto list = thr_to_list(z, n, k);
      for (Word y = 0; y < (Word(1) << n); ++y) {
        bool in = std::binary_search(list.begin(), list.end(), y);
        CHECK(in == relation_accepts(RelationInstance{RelKind::Thr, n, k, y},
                                     z));
      }
    }
  Restriction z = Restriction{}.with(1, 1).with(4, 0);
  auto list = label_to_list(z, n, 2);
  for (Word y = 0; y < (Word(1) << n); ++y) {
    bool in = std::binary_search(list.begin(), list.end(), y);
    CHECK(in ==
          relation_accepts(RelationInstance{RelKind::Label, n, 2, y}, z));
  }
}

TEST_CASE("cross-entropy lemma pieces") {
  std::vector<double> tau_{0.5, 0.25, 0.75};
  std::vector<double> delta{0.4, 0.2, 0.1};
  HxReport r = hx_cross_entropy_check(delta, tau_);
  CHECK(r.intermediate);
  CHECK(r.tau_bound);
  CHECK(r.pass);
  if (r.precondition) CHECK(r.hx <= r.bound + 1e-9);

  // Unbiased Z against unbiased X: everything collapses to n bits.
  HxReport flat = hx_cross_entropy_check({0, 0}, {0, 0});
  CHECK(flat.hx == doctest::Approx(2.0));
  CHECK(flat.pass);
}

TEST_CASE("list entropy lemma with top-probability lists") {
  std::vector<double> p{0.9, 0.8, 0.7, 0.6, 0.5};
  for (int ell = 1; ell <= 4; ++ell) {
    auto list = top_probability_list(p, ell);
    CHECK(list.size() == (std::size_t(1) << (p.size() - ell)));
    ListReport r = list_entropy_check(p, list, 0.25, ell);
    CHECK(r.pass);
    if (r.precondition) {
      CHECK(r.conclusion);
      CHECK(r.bin_found);
      CHECK(r.bin_mass >= r.bin_need - 1e-12);
    }
  }
}

TEST_CASE("technicality battery and phi monotonicity") {
  for (int k : {2, 4, 6}) {
    double eps = 1.0 / (4 * k);
    double prev = -1e100;
    for (int ell : {1, 2, 4, 8, 16, 32, 64}) {
      TechReport r = technicality(k, eps, ell);
      CHECK(r.pass);
      CHECK(r.lhs >= r.rhs - 1e-12);
      CHECK(r.phi >= prev - 1e-12);
      prev = r.phi;
    }
  }
}

TEST_CASE("list-decoding constant pipeline") {
  LdConstants c = ld_dpt_constants();
  CHECK(c.lambda == std::pow(2.0, -1.0 / 2560));
  CHECK(c.c == std::pow(2.0, -1.0 / (2 * c.k)));
  auto display = [](int k) {
    return (std::pow(2.0, -1.0 / (2 * k)) - std::pow(2.0, -0.5)) /
           (1 - std::pow(2.0, -0.5));
  };
  CHECK(display(c.k) >= c.lambda);
  CHECK(display(c.k - 1) < c.lambda);
  // Independent minimality scan.
  int k = 1;
  while (display(k) < c.lambda) ++k;
  CHECK(k == c.k);

  for (int ell : {1, 2, 4, 8}) {
    ChainReport r = ld_chain_check(10, ell, 1.0 / (2 * c.k));
    CHECK(r.pass);
  }
}

TEST_CASE("product entropy helpers") {
  std::vector<double> p{0.5, 0.5, 0.25};
  double h = product_entropy(p);
  CHECK(h == doctest::Approx(2 + (-0.25 * std::log2(0.25) -
                                  0.75 * std::log2(0.75))));
}
