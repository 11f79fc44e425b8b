#pragma once

#include "mwkt/groupring.hpp"

namespace mwkt {

// GW(A) = Z[A*] / (⟨⟨a⟩⟩h, ⟨⟨a⟩⟩⟨⟨1−a⟩⟩): ambient generator i is ⟨units[i]⟩.
struct GwRing {
  const LocalRing* ring = nullptr;
  FpGroup grp;
  std::vector<SVec> rel_rows;  // the defining rows (ideal generators)
  json cert;  // ideal closure + (odd fields) rank–discriminant oracle verdicts

  SVec unit_vec(int a) const;     // ⟨a⟩
  SVec pfister(int a) const;      // ⟨⟨a⟩⟩ = ⟨a⟩ − ⟨1⟩
  SVec h_vec() const;             // 1 + ⟨−1⟩
  SVec one_vec() const;           // ⟨1⟩
  SVec mul(const SVec& x, const SVec& y) const;  // bilinear on ⟨u⟩⟨v⟩ = ⟨uv⟩
};

const GwRing& gw_ring(const LocalRing& R);

// V(A) = I[A*] / (⟨⟨a⟩⟩h[b]; Z[A*]·⟨⟨a⟩⟩[1−a]): ambient generator i is
// [units[i+1]].
struct VModule {
  const LocalRing* ring = nullptr;
  FpGroup grp;
  std::vector<SVec> rel_rows;
  json cert;  // action well-definedness + GW-module closure

  SVec bracket(int a) const;                   // [a] (zero for a = 1)
  SVec act(const GRElem& s, const SVec& x) const;  // Z[A*]-action
};

const VModule& v_module(const LocalRing& R);

// W(A) = GW/(h) with the fundamental-ideal filtration I⁰ ⊇ I¹ ⊇ ⋯:
// all lattices live in the ⟨u⟩ ambient of Z[A*].
struct WittTower {
  const LocalRing* ring = nullptr;
  int n_max = 0;
  FpGroup W;                        // Z^{units} / (GW relations + h)
  std::vector<Echelon> ideal;       // lattice of Iⁿ + W-relations, n = 0..n_max+1
  std::vector<LatticeQuotient> sub; // Iⁿ as subgroup: ideal[n] / W-relations
  std::vector<LatticeQuotient> layer;  // Iⁿ/Iⁿ⁺¹, n = 0..n_max
  int stable_at = -1;  // least n with Iⁿ = Iⁿ⁺¹ (within range), −1 if none
  json info_json() const;
};

WittTower witt_tower(const LocalRing& R, int n_max);

}  // namespace mwkt
