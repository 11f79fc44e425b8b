#pragma once

#include <map>
#include <optional>

#include "mwkt/abelian.hpp"
#include "mwkt/ring.hpp"

namespace mwkt {

// element of Z[A*], keyed by unit encoding; no zero coefficients stored.
struct GRElem {
  const LocalRing* ring = nullptr;
  std::map<int, Int> c;

  bool is_zero() const { return c.empty(); }
  json to_json() const;    // {"<unit encoding>": coefficient}
  std::string str() const; // e.g. "2<1> - <2>"
};

GRElem gr_zero(const LocalRing& R);
GRElem gr_int(const LocalRing& R, const Int& n);  // n·⟨1⟩
GRElem gr_unit(const LocalRing& R, int a);        // ⟨a⟩
GRElem gr_bracket(const LocalRing& R, int a);     // [a] = ⟨⟨a⟩⟩ = ⟨a⟩ − 1
GRElem gr_h(const LocalRing& R);                  // 1 + ⟨−1⟩
GRElem gr_eps(const LocalRing& R);                // −⟨−1⟩

GRElem gr_add(const GRElem& x, const GRElem& y);
GRElem gr_sub(const GRElem& x, const GRElem& y);
GRElem gr_neg(const GRElem& x);
GRElem gr_scale(const Int& n, const GRElem& x);
GRElem gr_mul(const GRElem& x, const GRElem& y);
Int gr_augment(const GRElem& x);  // ring map ⟨a⟩ ↦ 1
bool gr_eq(const GRElem& x, const GRElem& y);

// coordinate conversions against the unit basis ⟨u⟩ of Z[A*] (generator i is
// units[i]) and the basis {[a] : a ≠ 1} of the augmentation ideal I[A*]
// (generator i is [units[i+1]]).
SVec gr_to_units(const GRElem& x);
GRElem units_to_gr(const LocalRing& R, const SVec& v);
SVec gr_to_ibasis(const GRElem& x);  // requires augment = 0
GRElem ibasis_to_gr(const LocalRing& R, const SVec& v);

// s_{m,t} = −Σ_{∅≠J⊆[m]} (−1)^{|J|} ⟨(X_J)^t⟩ for X_J = Σ_{i∈J} witness[i].
// Requires every X_J to be a unit (BadWitness otherwise); t may be negative.
GRElem s_element(const LocalRing& R, int m, long t,
                 const std::vector<int>& witness);

// V_k(A) = (A^{⊗k})^{Σ_k}: invariants of the k-fold tensor power of the
// additive group, presented as L/q·Z^N for the invariant lattice L, where
// N = add_rank^k and q = p^add_exp.  Capped at N ≤ 512.
struct VkSpace {
  const LocalRing* ring = nullptr;
  int k = 1;
  int d = 1;   // add_rank
  long q = 1;  // additive exponent p^e
  long N = 1;  // d^k
  LatticeQuotient lq;
};

VkSpace vk_space(const LocalRing& R, int k);

// additive extension of ⟨a⟩ ↦ a⊗···⊗a, in invariant-factor coordinates of
// the group V_k; all-zero coordinates ⟺ the image vanishes.
std::vector<Int> vk_image(const VkSpace& V, const GRElem& x);
bool vk_image_is_zero(const VkSpace& V, const GRElem& x);

}  // namespace mwkt
