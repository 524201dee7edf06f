#include "doctest.h"
#include "dqlab/boolfn.hpp"
#include "dqlab/builtin.hpp"

using namespace dqlab;

TEST_CASE("function file parsing") {
  BoolFn f = BoolFn::parse_text(
      "# two-bit AND\n"
      "m=2\n"
      "00 0\n"
      "01 0\n"
      "10 0\n"
      "11 1\n");
  CHECK(f.bits() == 2);
  CHECK(f.domain().size() == 4);
  CHECK(f.value(0b11) == 1);
  CHECK(f.value(0b01) == 0);
}

TEST_CASE("star rows leave the domain partial") {
  BoolFn f = BoolFn::parse_text("m=2\n00 0\n11 1\n01 *\n");
  CHECK(f.domain().size() == 2);
  CHECK(!f.in_domain(0b10));
  CHECK(!f.in_domain(parse_bits("01", 2, "t")));
  CHECK_THROWS_AS((void)f.value(0b10), InputError);
}

TEST_CASE("malformed function files are rejected") {
  CHECK_THROWS_AS(BoolFn::parse_text("00 0\n"), InputError);
  CHECK_THROWS_AS(BoolFn::parse_text("m=2\n000 0\n"), InputError);
  CHECK_THROWS_AS(BoolFn::parse_text("m=2\n00 2\n"), InputError);
}

TEST_CASE("bit strings use position 0 as the leftmost character") {
  // "10" means x_0 = 1, x_1 = 0.
  Word w = parse_bits("10", 2, "t");
  CHECK(bit_at(w, 0) == 1);
  CHECK(bit_at(w, 1) == 0);
  CHECK(bits_to_string(w, 2) == "10");
}

TEST_CASE("builtin functions resolve") {
  for (auto& name : builtin_function_names()) {
    BoolFn f = resolve_function(name);
    CHECK(f.bits() >= 1);
    CHECK(!f.domain().empty());
  }
  CHECK(resolve_function("xor3").bits() == 3);
  CHECK(resolve_function("maj3").value(0b110) == 1);
  CHECK(resolve_function("part3").domain().size() <
        8);  // genuinely partial
  CHECK_THROWS_AS(resolve_function("nosuchfn"), InputError);
}

TEST_CASE("product evaluation equals the tuple of base evaluations") {
  for (auto& name : {"id1", "xor2", "maj3", "part3"}) {
    BoolFn base = resolve_function(name);
    for (int n = 2; base.bits() * n <= 12; ++n) {
      BoolFn fn = BoolFn::product(base, n);
      CHECK(fn.blocks() == n);
      for (Word x : fn.domain()) {
        Word v = fn.value(x);
        for (int i = 0; i < n; ++i) {
          Word xi = fn.block_input(x, i);
          CHECK(base.in_domain(xi));
          CHECK(bit_at(v, i) == (int)base.value(xi));
        }
      }
      // Domain membership: in iff every block is in.
      for (Word x = 0; x < (Word(1) << fn.bits()); ++x) {
        bool all_in = true;
        for (int i = 0; i < n; ++i)
          all_in = all_in && base.in_domain(fn.block_input(x, i));
        CHECK(fn.in_domain(x) == all_in);
      }
    }
  }
}
