#pragma once

#include <memory>

#include "mwkt/linalg.hpp"

namespace mwkt {

// finitely presented abelian group Z^gens / rowlattice(rel), with canonical
// coset representatives (via the echelon basis H) and a complete system of
// invariant-factor coordinate functionals.
struct FpGroup {
  int gens = 0;
  std::vector<SVec> rel;
  Echelon H;
  QuotientStructure q;

  // int64 fast path for coordinate evaluation (usable when functionals fit).
  std::vector<std::vector<long long>> coord_ll;
  std::vector<long long> coord_mod_ll;
  bool ll_ok = false;

  bool is_zero_group() const { return q.invariant_factors.empty() && q.free_rank == 0; }
  Int order() const;  // 0 = infinite
  SVec reduce(const SVec& x) const { return H.reduce(x); }
  bool is_zero(const SVec& x) const { return H.contains(x); }
  std::vector<Int> coords(const SVec& x) const;  // torsion (in [0,d)) then free
  bool coords_zero(const SVec& x) const;
  json structure_json() const;  // {"free_rank","invariant_factors"}
  std::string structure_str() const;  // e.g. "Z^2 + Z/2 + Z/6", "0"
};

FpGroup fp_group(int gens, std::vector<SVec> rel, bool want_coords = true);

// group homomorphism between presented groups; row i of mat = image of source
// generator i in the target's ambient coordinates.
struct FpHom {
  const FpGroup* src = nullptr;
  const FpGroup* tgt = nullptr;
  std::vector<SVec> mat;

  SVec apply(const SVec& x) const;
  bool is_ambient_identity() const;
};

struct HomReport {
  bool well_defined = false;
  bool injective = false;
  bool surjective = false;
  json certificate;
  bool is_iso() const { return well_defined && injective && surjective; }
};

// kernel/cokernel analysis with SNF-backed certificates. Ambient-identity homs
// take the lattice-comparison fast path.
HomReport analyze_hom(const FpHom& f);

// throws mwkt_error("IllFormedHom") when f does not respect source relations.
bool is_isomorphism(const FpHom& f, json* certificate = nullptr);

// structure of L/M for lattices M ⊆ L ⊆ Z^cols (gens = basis rows of L).
// Also returns the echelon basis of L used for coordinates.
struct LatticeQuotient {
  Echelon LB;
  FpGroup grp;  // on LB.rank() generators
};
LatticeQuotient lattice_quotient(const std::vector<SVec>& Lgens,
                                 const std::vector<SVec>& Mgens, int cols);

// preimage lattice {x : x * mat ∈ lattice(tgt_rel)}; contains ker as lattice.
std::vector<SVec> preimage_lattice(const std::vector<SVec>& mat, int src_dim,
                                   const Echelon& tgt_lattice);

// homology ker(g)/im(f) at the middle group of  src --f--> mid --g--> tgt.
struct ExactnessReport {
  bool exact = false;
  json detail;  // structure of ker/im and witnesses
};
ExactnessReport exactness_at(const FpHom& f, const FpHom& g);

}  // namespace mwkt
