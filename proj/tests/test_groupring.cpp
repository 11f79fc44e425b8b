#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "mwkt/groupring.hpp"

using namespace mwkt;

namespace {
const char* kSmallUnitRings[] = {"F2", "F3",   "F5",        "F7",  "F9",
                                 "Z/9", "Z/25", "F5[t]/t^2", "F25"};
}

TEST_CASE("group ring arithmetic and the defining identities") {
  for (const char* spec : kSmallUnitRings) {
    CAPTURE(spec);
    const LocalRing& R = parse_ring_spec(spec);
    REQUIRE(R.units.size() <= 24);
    for (int a : R.units) {
      CHECK(gr_augment(gr_bracket(R, a)) == 0);
      for (int b : R.units) {
        // [ab] = [a] + ⟨a⟩[b]
        GRElem lhs = gr_bracket(R, R.mul(a, b));
        GRElem rhs = gr_add(gr_bracket(R, a),
                            gr_mul(gr_unit(R, a), gr_bracket(R, b)));
        CHECK(gr_eq(lhs, rhs));
        // ⟨⟨a⟩⟩·⟨⟨b⟩⟩ expands symmetrically
        CHECK(gr_eq(gr_mul(gr_bracket(R, a), gr_bracket(R, b)),
                    gr_mul(gr_bracket(R, b), gr_bracket(R, a))));
      }
    }
  }
  // h·⟨⟨−1⟩⟩ = (1+g)(g−1) = 0 in Z[F3*], g = ⟨−1⟩
  const LocalRing& f3 = parse_ring_spec("F3");
  CHECK(gr_mul(gr_h(f3), gr_bracket(f3, f3.neg(f3.one()))).is_zero());
  // ε = −⟨−1⟩ squares to 1
  CHECK(gr_eq(gr_mul(gr_eps(f3), gr_eps(f3)), gr_int(f3, 1)));
  // mixed-ring operands are rejected
  CHECK_THROWS_WITH_AS(gr_add(gr_int(f3, 1), gr_int(parse_ring_spec("F5"), 1)),
                       doctest::Contains("F3"), mwkt_error);
}

TEST_CASE("s_element: defining expansion, augmentation, bad witnesses") {
  const LocalRing& f5 = parse_ring_spec("F5");
  // pinned: F5, m=2, witness (1,1) → 2⟨1⟩ − ⟨2⟩
  GRElem s = s_element(f5, 2, 1, {1, 1});
  GRElem expect = gr_sub(gr_scale(2, gr_unit(f5, 1)), gr_unit(f5, 2));
  CHECK(gr_eq(s, expect));

  // m=2 general shape over F7: ⟨x1⟩+⟨x2⟩−⟨x1+x2⟩
  const LocalRing& f7 = parse_ring_spec("F7");
  for (int x1 : f7.units)
    for (int x2 : f7.units) {
      if (!f7.is_unit(f7.add(x1, x2))) continue;
      GRElem got = s_element(f7, 2, 1, {x1, x2});
      GRElem want = gr_sub(gr_add(gr_unit(f7, x1), gr_unit(f7, x2)),
                           gr_unit(f7, f7.add(x1, x2)));
      CHECK(gr_eq(got, want));
    }

  // augment = 1 for every valid witness, all m ≤ 4, t ∈ [−2, 3]
  for (const char* spec : {"F5", "F7", "F9", "F25", "Z/25", "F5[t]/t^2"}) {
    const LocalRing& R = parse_ring_spec(spec);
    for (int m = 1; m <= 4; ++m) {
      auto w = many_units_witness(R, m);
      if (!w) continue;
      for (long t = -2; t <= 3; ++t)
        CHECK(gr_augment(s_element(R, m, t, *w)) == 1);
    }
  }

  CHECK_THROWS_WITH_AS(s_element(parse_ring_spec("F2"), 2, 1, {1, 1}),
                       doctest::Contains("not a unit"), mwkt_error);
  CHECK_THROWS_WITH_AS(s_element(parse_ring_spec("F3"), 2, 1, {1, 2}),
                       doctest::Contains("not a unit"), mwkt_error);
  CHECK_THROWS_WITH_AS(s_element(f5, 3, 1, {1, 1}),
                       doctest::Contains("length"), mwkt_error);
}

namespace {

// independent orbit-sum model of the invariant lattice: coefficients constant
// on Σ_k-orbits of index tuples, plus q·Z^N.
std::vector<SVec> orbit_lattice(int d, int k, long q) {
  long N = 1;
  for (int i = 0; i < k; ++i) N *= d;
  auto digits = [&](long j) {
    std::vector<int> dg(k);
    for (int l = k - 1; l >= 0; --l) {
      dg[l] = static_cast<int>(j % d);
      j /= d;
    }
    return dg;
  };
  auto encode = [&](std::vector<int> dg) {
    std::sort(dg.begin(), dg.end());
    long out = 0;
    for (int l = 0; l < k; ++l) out = out * d + dg[l];
    return out;
  };
  std::map<long, SVec> orbits;
  for (long j = 0; j < N; ++j)
    orbits[encode(digits(j))].push_back({static_cast<int>(j), Int(1)});
  std::vector<SVec> L;
  for (auto& [rep, row] : orbits) L.push_back(row);
  for (long j = 0; j < N; ++j) L.push_back({{static_cast<int>(j), Int(q)}});
  return L;
}

}  // namespace

TEST_CASE("vk_space: structures match the symmetric-tensor count") {
  struct Want {
    const char* spec;
    int k;
    const char* structure;
  } wants[] = {
      {"F5", 1, "Z/5"},          {"F5", 2, "Z/5"},
      {"Z/9", 2, "Z/9"},         {"F9", 2, "Z/3 + Z/3 + Z/3"},
      {"F9", 3, "Z/3 + Z/3 + Z/3 + Z/3"},
      {"F5[t]/t^2", 2, "Z/5 + Z/5 + Z/5"},
      {"Z/25", 3, "Z/25"},
  };
  for (auto& w : wants) {
    CAPTURE(w.spec);
    CAPTURE(w.k);
    VkSpace V = vk_space(parse_ring_spec(w.spec), w.k);
    CHECK(V.lq.grp.structure_str() == w.structure);
    // cross-oracle: invariant lattice equals the orbit-sum lattice
    Echelon orb = hnf_rows(orbit_lattice(V.d, V.k, V.q), static_cast<int>(V.N));
    CHECK(orb.contains_all(V.lq.LB.rows));
    CHECK(V.lq.LB.contains_all(orb.rows));
  }
  CHECK_THROWS_AS(vk_space(parse_ring_spec("F9"), 10), mwkt_error);
}

TEST_CASE("vk_image: pinned evaluations") {
  const LocalRing& f5 = parse_ring_spec("F5");
  GRElem s2 = s_element(f5, 2, 1, {1, 1});

  VkSpace V1 = vk_space(f5, 1);
  CHECK(vk_image_is_zero(V1, s2));  // 1+1−2 = 0

  VkSpace V2 = vk_space(f5, 2);
  auto im = vk_image(V2, s2);  // 1+1−4 = −2 = 3 in Z/5
  REQUIRE(im.size() == 1);
  CHECK(im[0] == 3);
  CHECK(!vk_image_is_zero(V2, s2));

  // ⟨1⟩ maps to the multiplicative identity 1⊗1 ≠ 0
  auto one = vk_image(V2, gr_unit(f5, 1));
  REQUIRE(im.size() == 1);
  CHECK(one[0] == 1);
  // additivity: image of (x+y) = image x + image y  (mod 5 here)
  GRElem x = gr_unit(f5, 2), y = gr_unit(f5, 3);
  auto ix = vk_image(V2, x), iy = vk_image(V2, y), ixy = vk_image(V2, gr_add(x, y));
  CHECK((ix[0] + iy[0]) % 5 == ixy[0]);
}

TEST_CASE("s_{m,t} vanishes in V_k whenever kt < m (witness-independent)") {
  for (const char* spec : {"F5", "F7", "F9", "F25", "F31", "Z/25", "F5[t]/t^2"}) {
    CAPTURE(spec);
    const LocalRing& R = parse_ring_spec(spec);
    for (int m = 1; m <= 4; ++m) {
      auto w = many_units_witness(R, m);
      if (!w) continue;
      // a family of witnesses: unit rescalings of the first one
      std::vector<std::vector<int>> witnesses = {*w};
      for (int u : {2, 3}) {
        if (u >= R.size || !R.is_unit(u)) continue;
        std::vector<int> scaled;
        for (int x : *w) scaled.push_back(R.mul(u, x));
        witnesses.push_back(scaled);
      }
      for (int k = 1; k <= 3; ++k) {
        long dk = 1;
        for (int i = 0; i < k; ++i) dk *= R.add_rank;
        if (dk > 512) continue;
        VkSpace V = vk_space(R, k);
        for (long t = 1; k * t < m; ++t)
          for (auto& wit : witnesses) {
            CAPTURE(m);
            CAPTURE(k);
            CAPTURE(t);
            CHECK(vk_image_is_zero(V, s_element(R, m, static_cast<int>(t), wit)));
          }
      }
    }
  }
  // sharpness: a recorded non-vanishing with kt ≥ m over F9 as well
  const LocalRing& f9 = parse_ring_spec("F9");
  auto w = many_units_witness(f9, 2);
  REQUIRE(w.has_value());
  VkSpace V = vk_space(f9, 2);
  CHECK(!vk_image_is_zero(V, s_element(f9, 2, 1, *w)));
}
