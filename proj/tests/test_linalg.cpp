#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "mwkt/abelian.hpp"

using namespace mwkt;

namespace {

std::vector<std::vector<Int>> dense_mul(const std::vector<std::vector<Int>>& a,
                                        const std::vector<std::vector<Int>>& b) {
  size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  std::vector<std::vector<Int>> c(n, std::vector<Int>(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t)
      if (a[i][t] != 0)
        for (size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
  return c;
}

IntMatrix random_matrix(std::minstd_rand& rng, int rows, int cols, int density_pct,
                        int mag) {
  IntMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    std::vector<std::pair<int, Int>> e;
    for (int j = 0; j < cols; ++j) {
      if (static_cast<int>(rng() % 100) < density_pct) {
        long v = static_cast<long>(rng() % (2 * mag + 1)) - mag;
        if (v != 0) e.emplace_back(j, Int(v));
      }
    }
    m.row[i] = svec_make(std::move(e));
  }
  return m;
}

SVec random_svec(std::minstd_rand& rng, int cols, int mag) {
  std::vector<std::pair<int, Int>> e;
  for (int j = 0; j < cols; ++j)
    if (rng() % 3 == 0) {
      long v = static_cast<long>(rng() % (2 * mag + 1)) - mag;
      if (v != 0) e.emplace_back(j, Int(v));
    }
  return svec_make(std::move(e));
}

}  // namespace

TEST_CASE("smith normal form reproduces pinned examples") {
  auto m1 = IntMatrix::from_dense({{2, 0}, {0, 3}});
  auto r1 = smith_normal_form(m1);
  CHECK(r1.S[0][0] == 1);
  CHECK(r1.S[1][1] == 6);
  CHECK(r1.S[0][1] == 0);
  CHECK(r1.S[1][0] == 0);

  auto m2 = IntMatrix::from_dense({{2, 4}, {4, 2}});
  auto r2 = smith_normal_form(m2);
  CHECK(r2.S[0][0] == 2);
  CHECK(r2.S[1][1] == 6);
}

TEST_CASE("smith transforms are unimodular and U*M*V = S") {
  std::minstd_rand rng(12345);
  for (int trial = 0; trial < 40; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 6), cols = 1 + static_cast<int>(rng() % 6);
    IntMatrix m = random_matrix(rng, rows, cols, 60, 6);
    auto r = smith_normal_form(m);
    auto md = std::vector<std::vector<Int>>(rows, std::vector<Int>(cols, 0));
    for (int i = 0; i < rows; ++i)
      for (const auto& [j, v] : m.row[i]) md[i][j] = v;
    auto umv = dense_mul(dense_mul(r.U, md), r.V);
    CHECK(umv == r.S);
    Int du = det_dense(r.U), dv = det_dense(r.V);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    // S diagonal with divisibility chain
    Int prev = 0;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        if (i != j) CHECK(r.S[i][j] == 0);
      }
    for (int k = 0; k < std::min(rows, cols); ++k) {
      const Int& d = r.S[k][k];
      CHECK(d >= 0);
      if (prev != 0 && d != 0) CHECK(d % prev == 0);
      prev = d;
    }
  }
}

TEST_CASE("kernel lattice pinned example and nullspace property") {
  auto m = IntMatrix::from_dense({{2, 4}});
  auto k = kernel_lattice(m);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == SVec{{0, Int(2)}, {1, Int(-1)}});

  std::minstd_rand rng(777);
  for (int trial = 0; trial < 30; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 5), cols = 1 + static_cast<int>(rng() % 6);
    IntMatrix m2 = random_matrix(rng, rows, cols, 50, 5);
    auto ker = kernel_lattice(m2);
    IntMatrix km(static_cast<int>(ker.size()), cols);
    km.row = ker;
    // each kernel row x satisfies M x = 0, i.e. x * M^T = 0.
    CHECK(km.mul(m2.transpose()).is_zero());
    // rank-nullity over Q: rank(ker) + rank(M) = cols.
    Echelon me = hnf_rows(m2.transpose().row, rows);
    Echelon re = hnf_rows(m2.row, cols);
    CHECK(static_cast<int>(ker.size()) + re.rank() == cols);
  }
}

TEST_CASE("hnf canonical form is invariant under row shuffles and unimodular mixes") {
  std::minstd_rand rng(4242);
  for (int trial = 0; trial < 25; ++trial) {
    int rows = 2 + static_cast<int>(rng() % 5), cols = 2 + static_cast<int>(rng() % 5);
    IntMatrix m = random_matrix(rng, rows, cols, 55, 7);
    Echelon a = hnf_rows(m.row, cols);
    a.canonicalize();
    std::vector<SVec> mixed = m.row;
    std::shuffle(mixed.begin(), mixed.end(), rng);
    for (int i = 0; i + 1 < static_cast<int>(mixed.size()); ++i) {
      long q = static_cast<long>(rng() % 5) - 2;
      mixed[i] = svec_axpy(mixed[i], Int(q), mixed[i + 1]);
    }
    if (!mixed.empty()) mixed[0] = svec_neg(mixed[0]);
    Echelon b = hnf_rows(mixed, cols);
    b.canonicalize();
    CHECK(a.rows == b.rows);
  }
}

TEST_CASE("echelon solve recomposes exactly and rejects non-members") {
  std::minstd_rand rng(999);
  for (int trial = 0; trial < 25; ++trial) {
    int rows = 2 + static_cast<int>(rng() % 4), cols = 3 + static_cast<int>(rng() % 4);
    IntMatrix m = random_matrix(rng, rows, cols, 60, 5);
    Echelon e = hnf_rows(m.row, cols);
    if (e.rank() == 0) continue;
    SVec combo;
    for (const auto& r : e.rows) {
      long q = static_cast<long>(rng() % 7) - 3;
      combo = svec_axpy(combo, Int(q), r);
    }
    auto c = e.solve(combo);
    REQUIRE(c.has_value());
    SVec back;
    for (size_t i = 0; i < c->size(); ++i) back = svec_axpy(back, (*c)[i], e.rows[i]);
    CHECK(back == combo);
  }
  Echelon e = hnf_rows({SVec{{0, Int(2)}}}, 2);
  CHECK(!e.solve(SVec{{0, Int(1)}}).has_value());
  CHECK(!e.solve(SVec{{1, Int(1)}}).has_value());
}

TEST_CASE("fp_group structures match pinned examples") {
  FpGroup z = fp_group(1, {});
  CHECK(z.structure_str() == "Z");
  FpGroup z2 = fp_group(1, {SVec{{0, Int(2)}}});
  CHECK(z2.structure_str() == "Z/2");
  FpGroup zz2 = fp_group(2, {SVec{{0, Int(2)}}});
  CHECK(zz2.q.free_rank == 1);
  REQUIRE(zz2.q.invariant_factors.size() == 1);
  CHECK(zz2.q.invariant_factors[0] == 2);
  FpGroup zero = fp_group(0, {});
  CHECK(zero.is_zero_group());
  CHECK(zero.structure_str() == "0");
}

TEST_CASE("invariant factors agree with the dense smith oracle and survive row ops") {
  std::minstd_rand rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 6), cols = 1 + static_cast<int>(rng() % 6);
    IntMatrix m = random_matrix(rng, rows, cols, 55, 6);
    FpGroup g = fp_group(cols, m.row);
    auto snf = smith_normal_form(m);
    std::vector<Int> oracle;
    int r = 0;
    for (int k = 0; k < std::min(rows, cols); ++k)
      if (snf.S[k][k] != 0) {
        ++r;
        if (snf.S[k][k] >= 2) oracle.push_back(snf.S[k][k]);
      }
    CHECK(g.q.invariant_factors == oracle);
    CHECK(g.q.free_rank == cols - r);

    std::vector<SVec> mixed = m.row;
    std::shuffle(mixed.begin(), mixed.end(), rng);
    for (int i = 0; i + 1 < static_cast<int>(mixed.size()); ++i)
      mixed[i] = svec_axpy(mixed[i], Int(static_cast<long>(rng() % 5) - 2), mixed[i + 1]);
    FpGroup g2 = fp_group(cols, mixed);
    CHECK(g2.q.invariant_factors == g.q.invariant_factors);
    CHECK(g2.q.free_rank == g.q.free_rank);
  }
}

TEST_CASE("lattice index equals |det| for nonsingular square relation matrices") {
  std::minstd_rand rng(31337);
  int done = 0;
  while (done < 15) {
    int n = 2 + static_cast<int>(rng() % 4);
    IntMatrix m = random_matrix(rng, n, n, 80, 4);
    std::vector<std::vector<Int>> d(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i)
      for (const auto& [j, v] : m.row[i]) d[i][j] = v;
    Int det = det_dense(d);
    if (det == 0) continue;
    ++done;
    FpGroup g = fp_group(n, m.row);
    CHECK(g.order() == abs(det));
  }
}

TEST_CASE("coordinate functionals classify cosets exactly") {
  std::minstd_rand rng(5150);
  for (int trial = 0; trial < 25; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 5), cols = 2 + static_cast<int>(rng() % 5);
    IntMatrix m = random_matrix(rng, rows, cols, 50, 5);
    FpGroup g = fp_group(cols, m.row);
    CHECK(g.q.has_coords);
    for (const auto& r : g.rel) {
      CHECK(g.coords_zero(r));
    }
    for (int t = 0; t < 30; ++t) {
      SVec x = random_svec(rng, cols, 6), y = random_svec(rng, cols, 6);
      bool same_coords = g.coords(x) == g.coords(y);
      bool same_coset = g.reduce(x) == g.reduce(y);
      CHECK(same_coords == same_coset);
      CHECK(g.coords_zero(x) == g.is_zero(x));
    }
  }
}

TEST_CASE("hom analysis: identity, doubling, inclusion, ill-formed") {
  FpGroup z6 = fp_group(1, {SVec{{0, Int(6)}}});
  FpHom id{&z6, &z6, {SVec{{0, Int(1)}}}};
  json cert;
  CHECK(is_isomorphism(id, &cert));

  FpGroup z4 = fp_group(1, {SVec{{0, Int(4)}}});
  FpHom dbl{&z4, &z4, {SVec{{0, Int(2)}}}};
  HomReport r = analyze_hom(dbl);
  CHECK(r.well_defined);
  CHECK(!r.injective);
  CHECK(!r.surjective);

  FpGroup z = fp_group(1, {});
  FpGroup zz2 = fp_group(2, {SVec{{1, Int(2)}}});
  FpHom incl{&z, &zz2, {SVec{{0, Int(1)}}}};
  HomReport r2 = analyze_hom(incl);
  CHECK(r2.well_defined);
  CHECK(r2.injective);
  CHECK(!r2.surjective);
  CHECK(r2.certificate["cokernel"]["invariant_factors"][0] == 2);

  FpGroup z2 = fp_group(1, {SVec{{0, Int(2)}}});
  FpHom bad{&z2, &z, {SVec{{0, Int(1)}}}};
  CHECK_THROWS_AS(is_isomorphism(bad), mwkt_error);
}

TEST_CASE("lattice quotient and exactness at the middle group") {
  std::vector<SVec> L = {SVec{{0, Int(2)}}, SVec{{1, Int(3)}}};
  std::vector<SVec> M = {SVec{{0, Int(2)}}, SVec{{1, Int(6)}}};
  LatticeQuotient q = lattice_quotient(L, M, 2);
  CHECK(q.grp.structure_str() == "Z/2");

  FpGroup z = fp_group(1, {});
  FpGroup z2 = fp_group(1, {SVec{{0, Int(2)}}});
  FpHom mul2{&z, &z, {SVec{{0, Int(2)}}}};
  FpHom mul4{&z, &z, {SVec{{0, Int(4)}}}};
  FpHom proj{&z, &z2, {SVec{{0, Int(1)}}}};
  CHECK(exactness_at(mul2, proj).exact);
  ExactnessReport bad = exactness_at(mul4, proj);
  CHECK(!bad.exact);
  CHECK(bad.detail["homology"]["invariant_factors"][0] == 2);
}
