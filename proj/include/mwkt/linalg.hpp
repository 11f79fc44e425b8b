#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

#include "mwkt/util.hpp"

namespace mwkt {

using Int = mpz_class;

// sparse integer row vector: (col, value), strictly ascending cols, no zeros.
using SVec = std::vector<std::pair<int, Int>>;

SVec svec_make(std::vector<std::pair<int, Int>> entries);  // sort+merge+prune
SVec svec_add(const SVec& x, const SVec& y);
SVec svec_axpy(const SVec& x, const Int& q, const SVec& y);  // x + q*y
SVec svec_scale(const SVec& x, const Int& c);
SVec svec_neg(const SVec& x);
const Int* svec_get(const SVec& x, int col);
inline bool svec_is_zero(const SVec& x) { return x.empty(); }
std::string svec_str(const SVec& x);

// row-major sparse integer matrix.
struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<SVec> row;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), row(r) {}
  static IntMatrix from_dense(const std::vector<std::vector<long>>& d);
  void set(int i, int j, Int v);
  Int get(int i, int j) const;
  IntMatrix transpose() const;
  IntMatrix mul(const IntMatrix& o) const;
  bool is_zero() const;
  long nnz() const;
  json to_json() const;  // {"rows","cols","entries":[[i,j,"v"],...]}
};

// echelon basis of an integer row lattice: rows ordered by strictly increasing
// pivot column, pivots positive; above-pivot entries unconstrained until
// canonicalize() is called (which yields the unique Hermite normal form).
struct Echelon {
  int cols = 0;
  std::vector<SVec> rows;
  std::vector<int> pivot_of_col;  // col -> row index or -1

  int rank() const { return static_cast<int>(rows.size()); }
  // canonical coset representative: entries at pivot columns land in [0, pivot).
  SVec reduce(const SVec& x) const;
  bool contains(const SVec& x) const { return reduce(x).empty(); }
  bool contains_all(const std::vector<SVec>& xs) const;
  // coefficients expressing x over rows; nullopt when x is outside the lattice.
  std::optional<std::vector<Int>> solve(const SVec& x) const;
  void canonicalize();
  json to_json() const;
};

// Hermite reduction of the lattice spanned by `rows`. When `track` is given it
// must be parallel to `rows`; every row operation is mirrored, surviving rows'
// tracks are returned in track (aligned with the echelon rows) and tracks of
// rows that became zero are appended to zero_track.
Echelon hnf_rows(std::vector<SVec> rows, int cols, std::vector<SVec>* track = nullptr,
                 std::vector<SVec>* zero_track = nullptr);

// canonical HNF basis of {x : M x = 0} (column-vector kernel).
std::vector<SVec> kernel_lattice(const IntMatrix& M);

// dense Smith normal form with transforms: U*M*V = S, det U, det V = ±1.
struct SnfResult {
  std::vector<std::vector<Int>> S, U, V;
};
SnfResult smith_normal_form(const IntMatrix& M);

// one invariant-factor coordinate of a finitely presented quotient:
// value(x) = (x . f) mod modulus  (modulus 0 = free coordinate, no reduction).
struct CoordFun {
  std::vector<Int> f;
  Int modulus;
};

// structure of Z^cols / rowlattice(H): nontrivial invariant factors (each >= 2,
// divisibility chain), free rank, and — when requested — a complete coordinate
// system (torsion coordinates aligned with the factors, then free coordinates).
struct QuotientStructure {
  std::vector<Int> invariant_factors;
  long free_rank = 0;
  std::vector<CoordFun> coords;
  bool has_coords = false;
};
QuotientStructure quotient_structure(const Echelon& H, bool want_coords);

Int det_dense(std::vector<std::vector<Int>> m);  // Bareiss, exact

}  // namespace mwkt
