#pragma once

#include "mwkt/gw.hpp"

namespace mwkt {

// K^M_n(A): generators (A*)^n (flat index base |A*|), relations are per-slot
// multiplicativity against unit-group generators and adjacent Steinberg
// tuples.  n = 0 is Z.
struct MilnorK {
  const LocalRing* ring = nullptr;
  int n = 0;
  FpGroup grp;

  long gen_count() const { return grp.gens; }
  SVec symbol(const std::vector<int>& a) const;  // {a_1,...,a_n}
};

const MilnorK& milnor_k(const LocalRing& R, int n);

// degree-n piece of a tensor model over the transversal basis
// [a], a ∈ A* \ {1}: words [a_1]⊗···⊗[a_n], flat index base B = |A*|−1.
//  - with_v = false: K̂^MW_n = Tens_{Z[A*]}(I[A*])_n / Steinberg
//    (relations: Z[A*]-balancing at each tensor position + embedded Steinberg
//    words; degree 0 is Z[A*], degree 1 is I[A*], free).
//  - with_v = true: K^MW_n = (Tens_{GW}V / Steinberg)_n
//    (adds the V(A) relation lattice in every slot; degree 0 is GW(A)).
struct TensModule {
  const LocalRing* ring = nullptr;
  int n = 0;
  bool with_v = false;
  long B = 0;  // transversal size (n ≥ 1); degree 0 is over the unit basis
  std::vector<long> bpow;  // B^0 .. B^n, flat word index = Σ digit_j·B^{n−1−j}
  FpGroup grp;
  std::vector<SVec> rel_rows;

  // [a_1,...,a_n]; zero when some a_i = 1; NotAUnit on non-units. n must
  // match the tuple length; degree 0 takes the empty tuple (= ⟨1⟩).
  SVec word(const std::vector<int>& a) const;
  // ⟨u⟩ acting through tensor slot `slot` (degree 0: ring multiplication)
  SVec act_unit(int u, int slot, const SVec& x) const;
  // Z[A*]-scalar action through slot 0
  SVec act_gr(const GRElem& s, const SVec& x) const;
};

const TensModule& khat_n(const LocalRing& R, int n);
const TensModule& kmw_n(const LocalRing& R, int n);

// graded product x·y into Z (Z.n = X.n + Y.n, same ring and kind)
SVec tens_mul(const TensModule& X, const SVec& x, const TensModule& Y,
              const SVec& y, const TensModule& Z);

// natural quotient map khat_n → kmw_n (shared ambient): surjective always,
// isomorphism expected for n ≥ 2 over fields / residue field ≥ 4.
HomReport khat_to_kmw_report(const LocalRing& R, int n);

// η-truncated presentation: generators [η^m, u_1..u_{n+m}], m ≤ M, u_i ∈ A*,
// with the relation families gated by η-room, plus the map into kmw(R, n).
struct TildeKmw {
  const LocalRing* ring = nullptr;
  int n = 0;
  int M = 0;
  FpGroup grp;
  std::vector<long> level_offset;  // generator index of [η^m, 0...] per m
  FpHom to_kmw;
  json cert;  // relations_map_to_zero, surjective_at_M0

  long gen_index(int m, const std::vector<int>& u) const;
};

const TildeKmw& tilde_kmw_truncated(const LocalRing& R, int n, int M);

// Lemma sequence  K^MW_n --h--> K^MW_n --η--> K^MW_{n-1} --π--> K^M_{n-1} --> 0
struct EtaHReport {
  const LocalRing* ring = nullptr;
  int n = 0;
  bool exact_at_mid_h = false;   // im(h_n) = ker(η_n)
  bool exact_at_low = false;     // im(η_n) = ker(π)
  bool surjective_pi = false;
  json detail;
};

EtaHReport eta_h_sequence(const LocalRing& R, int n);

// Morel-square pullback P_n = {(x,u) ∈ Iⁿ ⊕ K^M_n : x mod Iⁿ⁺¹ = milnor(ū)}
// with the comparison map from K^MW_n.  Residue characteristic must be odd.
struct FiberModel {
  const LocalRing* ring = nullptr;
  int n = 0;
  LatticeQuotient P;    // pullback subgroup of Iⁿ ⊕ K^M_n
  int rank_i = 0;       // ambient split: first rank_i coordinates are Iⁿ
  HomReport comparison; // kmw_n → P
  json detail;
};

FiberModel fiber_model(const LocalRing& R, int n);

}  // namespace mwkt
