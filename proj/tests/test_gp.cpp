#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>

#include "doctest.h"
#include "mwkt/gp.hpp"

using namespace mwkt;

namespace {

// the symbol presentation as a standalone Z[A*]-module: generators (u, tuple),
// relations the unit translates of the two-term-plus-corrections family; used
// as an independent oracle for the computed S_n.
FpGroup presented_module(const LocalRing& R, int n) {
  const long U = static_cast<long>(R.units.size());
  long T = 1;
  for (int i = 0; i < n; ++i) T *= U;
  auto gidx = [&](int u, long t) { return static_cast<long>(R.unit_idx[u]) * T + t; };
  auto tidx = [&](const std::vector<int>& a) {
    long t = 0;
    for (int x : a) t = t * U + R.unit_idx[x];
    return t;
  };
  auto add_term = [&](std::vector<std::pair<int, Int>>& row, const GRElem& c,
                      const std::vector<int>& tuple, int twist) {
    for (const auto& [u, v] : c.c)
      row.push_back({static_cast<int>(gidx(R.mul(twist, u), tidx(tuple))), v});
  };
  std::vector<GRElem> eps_pow(2 * n + 1, gr_int(R, 1));
  for (int m = 1; m <= 2 * n; ++m) eps_pow[m] = gr_mul(eps_pow[m - 1], gr_eps(R));
  std::vector<std::vector<int>> lambdas;
  {
    std::vector<int> lam(n);
    std::function<void(int)> rec = [&](int at) {
      if (at == n) {
        lambdas.push_back(lam);
        return;
      }
      for (long i = 0; i < U; ++i) {
        lam[at] = R.units[i];
        bool ok = true;
        for (int j = 0; j < at; ++j)
          if (R.residue(lam[j]) == R.residue(lam[at])) ok = false;
        if (ok) rec(at + 1);
      }
    };
    rec(0);
  }
  std::vector<SVec> rows;
  std::vector<int> a(n);
  for (long t = 0; t < T; ++t) {
    long w = t;
    for (int i = n - 1; i >= 0; --i) {
      a[i] = R.units[w % U];
      w /= U;
    }
    for (const auto& lam : lambdas) {
      for (long tw = 0; tw < U; ++tw) {
        std::vector<std::pair<int, Int>> row;
        std::vector<int> la(n);
        for (int i = 0; i < n; ++i) la[i] = R.mul(lam[i], a[i]);
        add_term(row, gr_int(R, 1), la, R.units[tw]);
        add_term(row, gr_int(R, -1), a, R.units[tw]);
        for (int i = 0; i < n; ++i) {
          std::vector<int> tuple;
          for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            tuple.push_back(R.mul(R.sub(lam[j], lam[i]), a[j]));
          }
          tuple.push_back(lam[i]);
          add_term(row, gr_neg(gr_mul(eps_pow[i + 1 + n], gr_unit(R, a[i]))), tuple,
                   R.units[tw]);
        }
        rows.push_back(svec_make(std::move(row)));
      }
    }
  }
  return fp_group(static_cast<int>(U * T), std::move(rows));
}

}  // namespace

TEST_CASE("frame bases: counts, variants, and the completion certificate") {
  const LocalRing& F3 = parse_ring_spec("F3");
  const FrameComplex& C = build_complex(F3, 2, false, 2);
  CHECK(C.dim(0) == 1);
  CHECK(C.dim(1) == 8);   // (9−1)
  CHECK(C.dim(2) == 48);  // (9−1)(9−3)
  CHECK(C.cert.at("dd_zero").get<bool>());
  CHECK(C.cert.at("field_counts_match").get<bool>());
  CHECK(C.cert.at("frames_completed_to_gl")[1].get<long>() == 8);

  // the general-position variant agrees through degree n and continues above
  const FrameComplex& Ct = build_complex(F3, 2, true, 3);
  CHECK(Ct.dim(1) == 8);
  CHECK(Ct.dim(2) == 48);
  CHECK(Ct.dim(3) == 192);
  CHECK(Ct.basis[2].frames == C.basis[2].frames);

  // boundary of a 3-sequence: three faces with alternating signs
  {
    const FrameBasis& B3 = Ct.basis[3];
    const IntMatrix& d3 = Ct.d[3];
    IntMatrix dd = Ct.d[2].mul(d3);
    CHECK(dd.is_zero());
    long col = 0;  // any column: column sums of |entries| = 3 faces
    int hits = 0;
    for (int r = 0; r < d3.rows; ++r)
      if (svec_get(d3.row[r], static_cast<int>(col))) ++hits;
    CHECK(hits == 3);
    CHECK(B3.count() == 192);
  }

  // frames over a non-field local ring: residues lift freely
  const LocalRing& Z9 = parse_ring_spec("Z/9");
  const FrameComplex& C9 = build_complex(Z9, 2, false, 2);
  CHECK(C9.dim(1) == 72);    // 8·3²
  CHECK(C9.dim(2) == 3888);  // |GL_2(Z/9)| = 48·3⁴

  // the plain variant is empty above degree n
  const FrameComplex& Cu = build_complex(F3, 2, false, 3);
  CHECK(Cu.dim(3) == 0);

  // column cap
  CHECK_THROWS_WITH_AS(build_complex(parse_ring_spec("F5"), 3, false, 3),
                       doctest::Contains("cap"), mwkt_error);
}

TEST_CASE("homology: vanishing below the top degree, both variants") {
  for (const char* s : {"F2", "F3", "F5"}) {
    const LocalRing& R = parse_ring_spec(s);
    for (int i = 0; i <= 1; ++i) {
      CAPTURE(s);
      CAPTURE(i);
      CHECK(complex_homology(R, 2, i, false).grp.is_zero_group());
    }
  }
  const LocalRing& F3 = parse_ring_spec("F3");
  for (int i = 0; i <= 2; ++i) CHECK(complex_homology(F3, 3, i, false).grp.is_zero_group());
  const LocalRing& F5 = parse_ring_spec("F5");
  CHECK(complex_homology(F5, 3, 0, false).grp.is_zero_group());
  CHECK(complex_homology(F5, 3, 1, false).grp.is_zero_group());
  CHECK_THROWS_AS(complex_homology(F5, 3, 2, false), mwkt_error);  // C_3 over cap

  // general-position variant over F5²
  CHECK(complex_homology(F5, 2, 1, true).grp.is_zero_group());
  CHECK(complex_homology(F5, 2, 2, true).grp.is_zero_group());

  // non-field
  const LocalRing& Z9 = parse_ring_spec("Z/9");
  CHECK(complex_homology(Z9, 2, 0, false).grp.is_zero_group());
  CHECK(complex_homology(Z9, 2, 1, false).grp.is_zero_group());
}

TEST_CASE("S modules: group-ring degree, augmentation-ideal degree, pins") {
  // S_0 = Z[A*], free on the units
  const LocalRing& F5 = parse_ring_spec("F5");
  const SnModule& S0 = s_module(F5, 0);
  CHECK(S0.S.grp.structure_str() == "Z^4");
  CHECK(S0.det_class(SVec{{F5.unit_idx[2], Int(1)}}).str() == gr_unit(F5, 2).str());

  // S_1 = I[A*]: free of rank |A*|−1, with ⟨u⟩[a] = [ua] − [u]
  const SnModule& S1 = s_module(F5, 1);
  CHECK(S1.S.grp.q.free_rank == 3);
  CHECK(S1.S.grp.q.invariant_factors.empty());
  for (int u : F5.units)
    for (int a : F5.units) {
      SVec lhs = S1.act_unit(u, S1.symbol_cycle({a}));
      SVec rhs = svec_add(S1.symbol_cycle({F5.mul(u, a)}), svec_neg(S1.symbol_cycle({u})));
      CAPTURE(u);
      CAPTURE(a);
      CHECK(S1.class_eq(lhs, rhs));
    }

  // degree-2 structures
  CHECK(s_module(parse_ring_spec("F2"), 2).S.grp.structure_str() == "Z");
  CHECK(s_module(parse_ring_spec("F3"), 2).S.grp.structure_str() == "Z^2");
  CHECK(s_module(F5, 2).S.grp.structure_str() == "Z^4 + Z/5");
  CHECK(s_module(parse_ring_spec("F7"), 2).S.grp.structure_str() == "Z^6 + Z/7");

  // build certificates
  const SnModule& S2 = s_module(F5, 2);
  CHECK(S2.cert.at("lift_independent").get<bool>());
  CHECK(S2.cert.at("symbols_generate").get<bool>());
  CHECK(S2.cert.at("cycle_rank").get<long>() == 457);

  // symbol classes sit in the table exactly as recomputed
  std::vector<int> a = {2, 3};
  long flat = F5.unit_idx[2] * 4 + F5.unit_idx[3];
  CHECK(S2.symbol_table[flat] == S2.class_coords(S2.symbol_cycle(a)));

  // scale gate
  CHECK_THROWS_WITH_AS(s_module(parse_ring_spec("Z/25"), 2), doctest::Contains("cap"),
                       mwkt_error);
}

TEST_CASE("S modules: the symbol presentation is a presentation over small fields") {
  for (const char* s : {"F3", "F5"}) {
    const LocalRing& R = parse_ring_spec(s);
    const SnModule& S = s_module(R, 2);
    FpGroup P = presented_module(R, 2);
    CHECK(P.structure_str() == S.S.grp.structure_str());

    // the symbol map (u, tuple) ↦ ⟨u⟩·[tuple] is an isomorphism
    const long U = static_cast<long>(R.units.size());
    FpHom f;
    f.src = &P;
    f.tgt = &S.S.grp;
    for (long g = 0; g < U * U * U; ++g) {
      int u = R.units[g / (U * U)];
      long t = g % (U * U);
      std::vector<int> tuple = {R.units[t / U], R.units[t % U]};
      SVec z = S.act_unit(u, S.symbol_cycle(tuple));
      auto sol = S.S.LB.solve(z);
      REQUIRE(sol.has_value());
      std::vector<std::pair<int, Int>> e;
      for (size_t i = 0; i < sol->size(); ++i)
        if ((*sol)[i] != 0) e.push_back({static_cast<int>(i), (*sol)[i]});
      f.mat.push_back(svec_make(std::move(e)));
    }
    HomReport rep = analyze_hom(f);
    CAPTURE(s);
    CHECK(rep.well_defined);
    CHECK(rep.injective);
    CHECK(rep.surjective);
  }
}

TEST_CASE("S modules: determinant edge map") {
  const LocalRing& F5 = parse_ring_spec("F5");
  const SnModule& S1 = s_module(F5, 1);
  const SnModule& S2 = s_module(F5, 2);

  // det[a] = ⟨a⟩ − ⟨1⟩
  for (int a : F5.units)
    CHECK(gr_eq(S1.det_class(S1.symbol_cycle({a})),
                gr_sub(gr_unit(F5, a), gr_unit(F5, F5.one()))));

  // det[a,b] = ⟨−a⟩ − ⟨b⟩ + ⟨1⟩
  for (int a : F5.units)
    for (int b : F5.units) {
      GRElem want = gr_add(gr_sub(gr_unit(F5, F5.neg(a)), gr_unit(F5, b)),
                           gr_unit(F5, F5.one()));
      CAPTURE(a);
      CAPTURE(b);
      CHECK(gr_eq(S2.det_class(S2.symbol_cycle({a, b})), want));
    }

  // Z[A*]-linearity of det
  GRElem s = gr_add(gr_unit(F5, 2), gr_int(F5, -3));
  SVec z = S2.symbol_cycle({3, 4});
  CHECK(gr_eq(S2.det_class(S2.act_gr(s, z)), gr_mul(s, S2.det_class(z))));
}

TEST_CASE("products: block sums, the unit of S_0, and det multiplicativity") {
  const LocalRing& F5 = parse_ring_spec("F5");
  const SnModule& S0 = s_module(F5, 0);
  const SnModule& S1 = s_module(F5, 1);
  const SnModule& S2 = s_module(F5, 2);

  // [a]·[b] = [a,b] − ⟨a⟩[1,b] − ⟨b⟩[a,1] + ⟨ab⟩[1,1]
  for (int a : F5.units)
    for (int b : F5.units) {
      SVec lhs = sn_product(S1, S1.symbol_cycle({a}), S1, S1.symbol_cycle({b}), S2);
      SVec rhs = S2.symbol_cycle({a, b});
      rhs = svec_add(rhs, svec_neg(S2.act_unit(a, S2.symbol_cycle({F5.one(), b}))));
      rhs = svec_add(rhs, svec_neg(S2.act_unit(b, S2.symbol_cycle({a, F5.one()}))));
      rhs = svec_add(rhs, S2.act_unit(F5.mul(a, b), S2.symbol_cycle({F5.one(), F5.one()})));
      CAPTURE(a);
      CAPTURE(b);
      CHECK(S2.class_eq(lhs, rhs));
    }

  // 1 ∈ S_0 is the unit, on either side
  SVec one = S0.symbol_cycle({});
  SVec x = S1.symbol_cycle({3});
  CHECK(sn_product(S0, one, S1, x, S1) == x);
  CHECK(sn_product(S1, x, S0, one, S1) == x);

  // degree-0 products are group-ring products
  SVec u2 = SVec{{F5.unit_idx[2], Int(1)}};
  SVec u3 = SVec{{F5.unit_idx[3], Int(1)}};
  CHECK(sn_product(S0, u2, S0, u3, S0) == SVec{{F5.unit_idx[F5.mul(2, 3)], Int(1)}});

  // det is multiplicative on products
  for (int a : F5.units)
    for (int b : F5.units) {
      SVec p = sn_product(S1, S1.symbol_cycle({a}), S1, S1.symbol_cycle({b}), S2);
      CHECK(gr_eq(S2.det_class(p), gr_mul(S1.det_class(S1.symbol_cycle({a})),
                                          S1.det_class(S1.symbol_cycle({b})))));
    }

  // mixed rings are rejected
  const SnModule& T1 = s_module(parse_ring_spec("F3"), 1);
  CHECK_THROWS_WITH_AS(sn_product(S1, x, T1, T1.symbol_cycle({2}), S2),
                       doctest::Contains("mixed"), mwkt_error);
}

TEST_CASE("symbol reduction: transversals, verification, and the obstruction") {
  const LocalRing& F5 = parse_ring_spec("F5");
  const SnModule& S2 = s_module(F5, 2);

  // a symbol cycle reduces to a class-equal combination
  SVec z = S2.symbol_cycle({2, 3});
  SymbolReduction red = reduce_to_symbols(S2, z);
  CHECK(red.verified);
  CHECK(red.transversal == std::vector<int>{1, 1});
  SVec back;
  for (const auto& [coeff, tuple] : red.terms)
    back = svec_add(back, S2.act_gr(coeff, S2.symbol_cycle(tuple)));
  CHECK(S2.class_eq(back, z));

  // a block-sum cycle reduces to the same class as the product
  const SnModule& S1 = s_module(F5, 1);
  for (int a : {2, 4})
    for (int b : {3, 4}) {
      SVec p = sn_product(S1, S1.symbol_cycle({a}), S1, S1.symbol_cycle({b}), S2);
      SymbolReduction r2 = reduce_to_symbols(S2, p);
      CAPTURE(a);
      CAPTURE(b);
      CHECK(r2.verified);
      SVec acc;
      for (const auto& [coeff, tuple] : r2.terms)
        acc = svec_add(acc, S2.act_gr(coeff, S2.symbol_cycle(tuple)));
      CHECK(S2.class_eq(acc, p));
    }

  // degree-0 classes reduce to themselves
  const SnModule& S0 = s_module(F5, 0);
  SymbolReduction r0 = reduce_to_symbols(S0, S0.symbol_cycle({}));
  CHECK(r0.verified);
  CHECK(r0.terms.size() == 1);

  // over F2 the three lines cover the plane
  const LocalRing& F2 = parse_ring_spec("F2");
  const SnModule& T2 = s_module(F2, 2);
  CHECK_THROWS_WITH_AS(reduce_to_symbols(T2, T2.symbol_cycle({1, 1})),
                       doctest::Contains("covered hyperplane"), mwkt_error);
}

TEST_CASE("T: symbols to words, certificates, and the annihilated ideal") {
  const LocalRing& F5 = parse_ring_spec("F5");

  // degree 1 is the identity I[A*] → I[A*] (nonvacuous: khat_1 is free)
  const SnModule& S1 = s_module(F5, 1);
  const TensModule& K1 = khat_n(F5, 1);
  for (int a : F5.units) {
    SVec img = t_map(S1, S1.symbol_cycle({a}));
    CHECK(img == K1.word({a}));
  }
  // and is Z[A*]-equivariant through reductions
  {
    GRElem s = gr_add(gr_unit(F5, 3), gr_int(F5, 2));
    SVec z = S1.act_gr(s, S1.symbol_cycle({2}));
    CHECK(t_map(S1, z) == K1.act_gr(s, K1.word({2})));
  }

  // T(1) = 1
  const SnModule& S0 = s_module(F5, 0);
  const TensModule& K0 = khat_n(F5, 0);
  CHECK(t_map(S0, S0.symbol_cycle({})) == K0.word({}));

  // T([a,b]) = [a][b] (khat_2(F5) is the zero group, so this is the boundary
  // case of the identity; coordinates agree)
  const SnModule& S2 = s_module(F5, 2);
  const TensModule& K2 = khat_n(F5, 2);
  CHECK(K2.grp.is_zero_group());
  for (int a : {2, 3})
    for (int b : {2, 4}) {
      SVec lhs = t_map(S2, S2.symbol_cycle({a, b}));
      SVec rhs = tens_mul(K1, K1.word({a}), K1, K1.word({b}), K2);
      CHECK(K2.grp.coords_zero(svec_add(lhs, svec_neg(rhs))));
    }

  // certificates: relation images vanish, products match, [−1,1] annihilates
  json c = t_map_certificate(F5, 2);
  CHECK(c.at("relation_instances").get<long>() == 192);
  CHECK(c.at("relations_map_to_zero").get<bool>());
  CHECK(c.at("product_samples").get<long>() == 16);
  CHECK(c.at("products_match").get<bool>());
  CHECK(c.at("annihilation_samples").get<long>() == 8);
  CHECK(c.at("annihilation_zero").get<bool>());

  json c3 = t_map_certificate(F5, 3);
  CHECK(c3.at("relation_instances").get<long>() == 1536);
  CHECK(c3.at("relations_map_to_zero").get<bool>());

  json c7 = t_map_certificate(parse_ring_spec("F7"), 2);
  CHECK(c7.at("relation_instances").get<long>() == 1080);
  CHECK(c7.at("relations_map_to_zero").get<bool>());

  // F3 has too few residues for triple-distinct λ: degree 3 is vacuous
  json cf3 = t_map_certificate(parse_ring_spec("F3"), 3);
  CHECK(cf3.at("relation_instances").get<long>() == 0);
}

TEST_CASE("beta: determinant vanishes; guards fire; class needs the cap") {
  for (const char* s : {"F3", "F5", "F7"}) {
    const LocalRing& R = parse_ring_spec(s);
    for (int lam : R.units) {
      if (R.residue(lam) == R.residue(R.one())) continue;
      BetaReport B = beta(R, lam, false);
      CAPTURE(s);
      CAPTURE(lam);
      CHECK(B.det.is_zero());
      // λ = −1 collapses two pairs of faces
      CHECK(B.cycle.size() == (lam == R.neg(R.one()) ? 12u : 18u));
    }
  }
  const LocalRing& F5 = parse_ring_spec("F5");
  CHECK_THROWS_WITH_AS(beta(F5, F5.one(), false), doctest::Contains("residue"), mwkt_error);
  CHECK_THROWS_AS(beta(F5, 0, false), mwkt_error);
  // residue of λ equal to 1 in a non-field: 1−λ is not a unit
  CHECK_THROWS_AS(beta(parse_ring_spec("Z/9"), 4, false), mwkt_error);
  // the S_3(F5) class is behind the cap
  CHECK_THROWS_WITH_AS(beta(F5, 2, true), doctest::Contains("cap"), mwkt_error);
}

TEST_CASE("heavy: S_3(F3), beta classes, and the commutator" *
          doctest::skip(std::getenv("MWKT_HEAVY") == nullptr)) {
  const LocalRing& F3 = parse_ring_spec("F3");
  const SnModule& S3 = s_module(F3, 3);
  CHECK(S3.cert.at("lift_independent").get<bool>());

  // β has determinant zero and a well-defined class
  BetaReport B = beta(F3, 2, true);
  CHECK(B.has_class);
  CHECK(B.det.is_zero());

  // [−1,1]·[a] − [a]·[−1,1] = ⟨⟨a⟩⟩·β
  const SnModule& S1 = s_module(F3, 1);
  const SnModule& S2 = s_module(F3, 2);
  SVec oo = S2.symbol_cycle({F3.neg(F3.one()), F3.one()});
  SVec bvec = S3.vec_of(B.cycle);
  for (int a : F3.units) {
    SVec xa = S1.symbol_cycle({a});
    SVec lhs = svec_add(sn_product(S2, oo, S1, xa, S3),
                        svec_neg(sn_product(S1, xa, S2, oo, S3)));
    SVec rhs = S3.act_gr(gr_bracket(F3, a), bvec);
    CAPTURE(a);
    CHECK(S3.class_eq(lhs, rhs));
  }
}
