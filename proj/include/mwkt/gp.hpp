#pragma once

#include "mwkt/kmw.hpp"

namespace mwkt {

// basis of the degree-r chain group over A^n: left-invertible n×r matrices
// (columns v_1..v_r in column-major encoding), enumerated in lexicographic
// column order.  general_position additionally admits r > n, requiring every
// n-subset of the columns to be invertible; the two variants agree for r ≤ n.
struct FrameBasis {
  const LocalRing* ring = nullptr;
  int n = 0, r = 0;
  bool general_position = false;
  std::vector<std::vector<int>> frames;
  std::map<std::vector<int>, int> index;

  long count() const { return static_cast<long>(frames.size()); }
  int index_of(const std::vector<int>& f) const;  // -1 when absent
};

// chain complex of frames with the simplicial boundary
// d_r = Σ_{i=1..r} (−1)^{i−1} · (delete column i); d∘d = 0 is verified at
// build time.  Degree 0 is Z on the empty frame; the plain variant is empty
// above degree n.  Column counts are capped (TooLarge, "column-cap").
struct FrameComplex {
  const LocalRing* ring = nullptr;
  int n = 0;
  bool general_position = false;
  int r_max = 0;
  std::vector<FrameBasis> basis;  // degrees 0..r_max
  std::vector<IntMatrix> d;       // d[r]: dim C_{r−1} rows × dim C_r cols
  json cert;                      // dims, d∘d, count formula, frame completion

  long dim(int r) const;
};

const FrameComplex& build_complex(const LocalRing& R, int n, bool general_position,
                                  int r_max);

// H_i = ker d_i / im d_{i+1}; generators are the kernel-lattice basis rows.
LatticeQuotient complex_homology(const LocalRing& R, int n, int i,
                                 bool general_position);

// integer combination of explicit n×n frames (column-major encodings)
using CycleTerms = std::vector<std::pair<Int, std::vector<int>>>;

// S_n(A) = Z[A*] ⊗_{GL_n} Z_n(Aⁿ), computed as SL_n-coinvariants of the cycle
// lattice Z_n = ker d_n ⊂ C_n = Z[GL_n(A)]; ⟨u⟩ acts through any determinant-u
// lift (independence of the lift is spot-checked in cert).  Degree 0 is Z[A*]
// on the unit basis.  Symbols [a_1..a_n] are the classes of the boundary of
// (e_1,…,e_n, Σ a_i e_i), defined whenever every a_i is a unit.
struct SnModule {
  const LocalRing* ring = nullptr;
  int n = 0;
  const FrameBasis* frames = nullptr;  // null in degree 0
  std::vector<SVec> zbasis;            // HNF basis of Z_n
  LatticeQuotient S;
  std::vector<std::vector<Int>> symbol_table;  // flat unit-index tuple → coords
  json cert;

  SVec symbol_cycle(const std::vector<int>& a) const;
  std::vector<Int> class_coords(const SVec& z) const;  // IllFormedHom off Z_n
  bool class_is_zero(const SVec& z) const;
  bool class_eq(const SVec& z, const SVec& w) const;
  SVec act_unit(int u, const SVec& z) const;
  SVec act_gr(const GRElem& s, const SVec& z) const;
  GRElem det_class(const SVec& z) const;  // Σ c_j ⟨det α_j⟩
  CycleTerms terms_of(const SVec& z) const;
  SVec vec_of(const CycleTerms& t) const;
};

const SnModule& s_module(const LocalRing& R, int n);

// abstract symbol cycle: the n+1 boundary faces of (e_1,…,e_n, Σ a_i e_i)
CycleTerms symbol_terms(const LocalRing& R, const std::vector<int>& a);

// graded product by block-diagonal juxtaposition of frames; degree-0 factors
// act by determinant twist.  Z must be s_module over X.n + Y.n.
SVec sn_product(const SnModule& X, const SVec& x, const SnModule& Y, const SVec& y,
                const SnModule& Z);
CycleTerms sn_product_terms(const LocalRing& R, int m, const CycleTerms& x, int n,
                            const CycleTerms& y);

// term-level Z[A*]-action (⟨u⟩ twists a frame through diag(u,1,…,1)) and the
// determinant pairing Σ c_j ⟨det α_j⟩; both are basis-free, so they work for
// rings whose frame bases exceed the column cap.
CycleTerms terms_act_gr(const LocalRing& R, int n, const GRElem& s, const CycleTerms& t);
CycleTerms terms_add(const CycleTerms& x, const CycleTerms& y);
GRElem terms_det(const LocalRing& R, int n, const CycleTerms& t);

// reduction of a cycle to a Z[A*]-combination of symbols against the
// lexicographically first transversal vector v:
//   Σ n_i (α_i)  =  (−1)ⁿ Σ n_i ⟨det α_i⟩ [α_i⁻¹ v].
// verified records the class-equality re-check (set on the SnModule path).
struct SymbolTerm {
  GRElem coeff;
  std::vector<int> tuple;
};
struct SymbolReduction {
  int n = 0;
  std::vector<int> transversal;
  std::vector<SymbolTerm> terms;
  bool verified = false;
  json detail;
};

SymbolReduction reduce_terms(const LocalRing& R, int n, const CycleTerms& t);
SymbolReduction reduce_to_symbols(const SnModule& X, const SVec& z);

// T: S_n(A) → K̂^MW_n(A), [a_1,…,a_n] ↦ [a_1]⋯[a_n]; the certificate maps
// every symbol-presentation relation to khat and checks zero, then checks
// multiplicativity on reduced block products and the vanishing of products
// with [−1,1].
SVec t_of_terms(const LocalRing& R, int n, const std::vector<SymbolTerm>& terms);
SVec t_map(const SnModule& X, const SVec& z);
json t_map_certificate(const LocalRing& R, int n);

// β_λ = [1,1−λ,λ] − [1,1−λ,1] + [1,−λ,1] − [1−λ,λ,1] + [1−λ,1,1] − [−λ,1,1]
// as an abstract C_3 cycle with its determinant (always computable); class
// coordinates are filled when want_class and S_3 fits the cap.
struct BetaReport {
  const LocalRing* ring = nullptr;
  int lambda = 0;
  CycleTerms cycle;
  GRElem det;
  bool has_class = false;
  std::vector<Int> class_coords;
  json detail;
};

BetaReport beta(const LocalRing& R, int lambda, bool want_class);

}  // namespace mwkt
