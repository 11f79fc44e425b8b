#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "mwkt/ring.hpp"

using namespace mwkt;

namespace {
const char* kTestRings[] = {"F2", "F3", "F5", "F7", "F9", "Z/9", "Z/25", "F5[t]/t^2"};
}

TEST_CASE("spec parsing: sizes, units, residue fields") {
  const LocalRing& f5 = parse_ring_spec("F5");
  CHECK(f5.size == 5);
  CHECK(f5.units.size() == 4);
  CHECK(f5.is_field);
  CHECK(f5.residue_field() == &f5);

  const LocalRing& z9 = parse_ring_spec("Z/9");
  CHECK(z9.size == 9);
  CHECK(z9.units.size() == 6);
  CHECK(!z9.is_field);
  CHECK(z9.residue_size() == 3);
  CHECK(z9.residue(4) == 1);

  const LocalRing& f9 = parse_ring_spec("F9");
  CHECK(f9.size == 9);
  CHECK(f9.p == 3);
  CHECK(f9.units.size() == 8);

  const LocalRing& t = parse_ring_spec("F5[t]/t^2");
  CHECK(t.size == 25);
  CHECK(t.units.size() == 20);
  CHECK(t.residue_size() == 5);

  // aliases resolve to the same instance
  CHECK(&parse_ring_spec("Z/5") == &parse_ring_spec("F5"));
  CHECK(&parse_ring_spec("Z/5^2") == &parse_ring_spec("Z/25"));
  CHECK(&parse_ring_spec("F3^2[x^2+1]") == &parse_ring_spec("F9"));
}

TEST_CASE("spec parsing: rejections carry codes and positions") {
  auto code_of = [](const std::string& s) {
    try {
      parse_ring_spec(s);
    } catch (const mwkt_error& e) {
      return e.code;
    }
    return std::string("no-error");
  };
  CHECK(code_of("Z/6") == "NotLocal");
  CHECK(code_of("F6") == "NotLocal");
  CHECK(code_of("F3^2[x^2+2]") == "NotIrreducible");  // x^2+2 = (x-1)(x+1) over F3
  CHECK(code_of("") == "MalformedSpec");
  CHECK(code_of("Q5") == "MalformedSpec");
  CHECK(code_of("F5x") == "MalformedSpec");
  CHECK(code_of("Z/") == "MalformedSpec");
  CHECK(code_of("F4099") == "TooLarge");  // 4099 is prime but over the size cap
  CHECK(code_of("F4097") == "NotLocal");  // 4097 = 17*241 rejected as non-prime-power first
  try {
    parse_ring_spec("F5}");
  } catch (const mwkt_error& e) {
    CHECK(e.pos == 2);
  }
  CHECK(code_of("F2[t]/t^13") == "TooLarge");
}

TEST_CASE("ring arithmetic: field axioms hold exhaustively on the test set") {
  for (const char* spec : kTestRings) {
    CAPTURE(spec);
    const LocalRing& R = parse_ring_spec(spec);
    // associativity/commutativity/distributivity spot-exhaustive
    for (int a = 0; a < R.size; ++a)
      for (int b = 0; b < R.size; ++b) {
        CHECK(R.add(a, b) == R.add(b, a));
        CHECK(R.mul(a, b) == R.mul(b, a));
        CHECK(R.add(a, R.neg(a)) == 0);
        CHECK(R.mul(a, R.one()) == a);
      }
    int n = std::min(R.size, 12);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          CHECK(R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c)));
          CHECK(R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c)));
          CHECK(R.add(R.add(a, b), c) == R.add(a, R.add(b, c)));
        }
    // units are exactly the invertibles; non-units form an ideal
    for (int a = 0; a < R.size; ++a) {
      if (R.is_unit(a)) {
        CHECK(R.mul(a, R.inv(a)) == R.one());
      }
      for (int b = 0; b < R.size; ++b) {
        if (!R.is_unit(a) && !R.is_unit(b)) {
          CHECK(!R.is_unit(R.add(a, b)));
        }
        if (!R.is_unit(a)) CHECK(!R.is_unit(R.mul(a, b)));
      }
    }
    // residue map is a surjective ring hom
    const LocalRing* k = R.residue_field();
    for (int a = 0; a < R.size; ++a)
      for (int b = 0; b < R.size; ++b) {
        CHECK(R.residue(R.add(a, b)) == k->add(R.residue(a), R.residue(b)));
        CHECK(R.residue(R.mul(a, b)) == k->mul(R.residue(a), R.residue(b)));
      }
    CHECK(R.residue(R.one()) == k->one());
    // additive coordinates are a bijection onto (Z/p^e)^r
    long box = 1;
    for (int i = 0; i < R.add_rank; ++i) {
      box *= 1;
      for (int j = 0; j < R.add_exp; ++j) box *= 1;
    }
    for (int a = 0; a < R.size; ++a) {
      CHECK(R.from_add_coords(R.add_coords(a)) == a);
    }
  }
}

TEST_CASE("galois field addition via zech logs matches digitwise addition") {
  for (const char* spec : {"F4", "F8", "F9", "F27"}) {
    const LocalRing& R = parse_ring_spec(spec);
    // reference digitwise addition through additive coordinates
    for (int a = 0; a < R.size; ++a)
      for (int b = 0; b < R.size; ++b) {
        auto ca = R.add_coords(a), cb = R.add_coords(b);
        for (int i = 0; i < R.add_rank; ++i) ca[i] = (ca[i] + cb[i]) % R.p;
        CHECK(R.add(a, b) == R.from_add_coords(ca));
      }
  }
}

TEST_CASE("unit group: orders, dlog boxes, canonical generators") {
  for (const char* spec : kTestRings) {
    CAPTURE(spec);
    const LocalRing& R = parse_ring_spec(spec);
    long prod = 1;
    for (int s : R.ug_steps) prod *= s;
    CHECK(prod == static_cast<long>(R.units.size()));
    for (size_t ui = 0; ui < R.units.size(); ++ui) {
      int val = R.one();
      for (size_t g = 0; g < R.ug_gens.size(); ++g)
        val = R.mul(val, R.pow(R.ug_gens[g], R.ug_dlog[ui][g]));
      CHECK(val == R.units[ui]);
    }
    Int ord = R.ug_structure.order();
    CHECK(ord == static_cast<long>(R.units.size()));
  }
  // F9^* is cyclic of order 8; (Z/9)^* cyclic of order 6; F5[t]/t^2 has 20 units
  CHECK(parse_ring_spec("F9").ug_structure.structure_str() == "Z/8");
  CHECK(parse_ring_spec("Z/9").ug_structure.structure_str() == "Z/6");
  CHECK(parse_ring_spec("Z/25").ug_structure.structure_str() == "Z/20");
  CHECK(parse_ring_spec("F5[t]/t^2").ug_structure.structure_str() == "Z/20");
  CHECK(parse_ring_spec("F2").ug_structure.structure_str() == "0");
}

TEST_CASE("steinberg pairs match pinned tables and are symmetric") {
  using P = std::vector<std::pair<int, int>>;
  CHECK(steinberg_pairs(parse_ring_spec("F2")) == P{});
  CHECK(steinberg_pairs(parse_ring_spec("F3")) == P{{2, 2}});
  CHECK(steinberg_pairs(parse_ring_spec("F5")) == P{{2, 4}, {3, 3}, {4, 2}});
  for (const char* spec : kTestRings) {
    const LocalRing& R = parse_ring_spec(spec);
    auto pairs = steinberg_pairs(R);
    for (auto [a, b] : pairs) {
      CHECK(R.is_unit(a));
      CHECK(R.is_unit(b));
      CHECK(R.add(a, b) == R.one());
      CHECK(std::find(pairs.begin(), pairs.end(), std::make_pair(b, a)) != pairs.end());
    }
  }
}

TEST_CASE("many-units witnesses: pinned presence/absence and validity") {
  CHECK(!many_units_witness(parse_ring_spec("F2"), 2).has_value());
  auto w5 = many_units_witness(parse_ring_spec("F5"), 2);
  REQUIRE(w5.has_value());
  CHECK(*w5 == std::vector<int>{1, 1});
  auto w31 = many_units_witness(parse_ring_spec("F31"), 4);
  REQUIRE(w31.has_value());
  // validity: every nonempty partial sum of every prefix is a unit
  const LocalRing& R = parse_ring_spec("F31");
  auto& W = *w31;
  for (int mask = 1; mask < (1 << 4); ++mask) {
    int s = 0;
    for (int i = 0; i < 4; ++i)
      if (mask & (1 << i)) s = R.add(s, W[i]);
    CHECK(R.is_unit(s));
  }
  auto w9 = many_units_witness(parse_ring_spec("F9"), 4);
  CHECK(w9.has_value());
}
