#pragma once

#include <optional>

#include "mwkt/abelian.hpp"

namespace mwkt {

// finite commutative local ring, immutable after construction. Elements are
// ints in [0, size): the canonical base-p digit encoding of the element.
class LocalRing {
 public:
  enum class Kind { prime_field, galois_field, integers_mod_pk, truncation };

  Kind kind;
  std::string spec;  // canonical spec string
  int size = 0;
  int p = 0;       // residue characteristic
  int deg = 1;     // galois: d; integers_mod_pk: k; truncation: e
  bool is_field = false;

  // additive structure (Z/p^add_exp)^add_rank with basis element encodings.
  int add_exp = 1;
  int add_rank = 1;
  std::vector<int> add_basis;

  std::vector<int> units;     // ascending encodings
  std::vector<int> unit_idx;  // enc -> index in units, or -1

  // unit group: canonical generators with step sizes; dlog boxes are the
  // unique exponent vectors with 0 <= v_i < step[i].
  std::vector<int> ug_gens;
  std::vector<int> ug_steps;
  std::vector<std::vector<int>> ug_dlog;  // per unit index
  FpGroup ug_structure;

  int zero() const { return 0; }
  int one() const { return one_; }
  int add(int a, int b) const;
  int neg(int a) const;
  int sub(int a, int b) const { return add(a, neg(b)); }
  int mul(int a, int b) const;
  int pow(int a, long e) const;
  int inv(int a) const;
  int of_int(long n) const;
  bool is_unit(int a) const { return unit_idx[a] >= 0; }

  const LocalRing* residue_field() const { return residue_field_ ? residue_field_ : this; }
  int residue(int a) const;  // encoding in residue_field()
  int residue_size() const { return residue_field()->size; }

  std::vector<int> add_coords(int a) const;  // length add_rank, values in [0, p^add_exp)
  int from_add_coords(const std::vector<int>& c) const;

  json info_json() const;

 private:
  friend const LocalRing& parse_ring_spec(const std::string&);
  friend struct RingBuilder;
  LocalRing() = default;

  int one_ = 1;
  std::vector<int> poly;  // galois: monic modulus coefficients c_0..c_d
  std::vector<int> exp_, log_, zech_;
  const LocalRing* base_ = nullptr;          // truncation base
  const LocalRing* residue_field_ = nullptr; // null = self

  std::vector<int> gf_digits(int a) const;
  int gf_encode(const std::vector<int>& d) const;
  int gf_mul_raw(int a, int b) const;
  std::vector<int> tr_digits(int a) const;
  int tr_encode(const std::vector<int>& d) const;
  void finish();  // units, unit group, additive data
};

// parses and caches ring instances; references stay valid for the process
// lifetime. Throws mwkt_error: MalformedSpec (with position), NotIrreducible,
// NotLocal, TooLarge("ring-size-cap").
const LocalRing& parse_ring_spec(const std::string& spec);

// ordered pairs (a, 1-a) with both coordinates units, ascending in a.
std::vector<std::pair<int, int>> steinberg_pairs(const LocalRing& R);

// lexicographically first tuple (X_1..X_m) of units whose nonempty partial
// sums are all units; nullopt when none exists.
std::optional<std::vector<int>> many_units_witness(const LocalRing& R, int m);

}  // namespace mwkt
