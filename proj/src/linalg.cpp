#include "mwkt/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace mwkt {

static Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

static int cmpabs(const Int& a, const Int& b) {
  return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

SVec svec_make(std::vector<std::pair<int, Int>> e) {
  std::sort(e.begin(), e.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SVec out;
  out.reserve(e.size());
  for (auto& kv : e) {
    if (!out.empty() && out.back().first == kv.first)
      out.back().second += kv.second;
    else
      out.push_back(std::move(kv));
    if (!out.empty() && out.back().second == 0) out.pop_back();
  }
  return out;
}

SVec svec_axpy(const SVec& x, const Int& q, const SVec& y) {
  if (q == 0 || y.empty()) return x;
  SVec out;
  out.reserve(x.size() + y.size());
  size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, q * y[j].second);
      ++j;
    } else {
      Int v = x[i].second + q * y[j].second;
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

SVec svec_add(const SVec& x, const SVec& y) { return svec_axpy(x, 1, y); }

SVec svec_scale(const SVec& x, const Int& c) {
  if (c == 0) return {};
  SVec out = x;
  for (auto& kv : out) kv.second *= c;
  return out;
}

SVec svec_neg(const SVec& x) { return svec_scale(x, -1); }

const Int* svec_get(const SVec& x, int col) {
  auto it = std::lower_bound(x.begin(), x.end(), col,
                             [](const auto& kv, int c) { return kv.first < c; });
  if (it != x.end() && it->first == col) return &it->second;
  return nullptr;
}

std::string svec_str(const SVec& x) {
  std::string s = "{";
  for (size_t i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(x[i].first) + ":" + x[i].second.get_str();
  }
  return s + "}";
}

IntMatrix IntMatrix::from_dense(const std::vector<std::vector<long>>& d) {
  IntMatrix m(static_cast<int>(d.size()), d.empty() ? 0 : static_cast<int>(d[0].size()));
  for (int i = 0; i < m.rows; ++i) {
    std::vector<std::pair<int, Int>> e;
    for (int j = 0; j < m.cols; ++j)
      if (d[i][j] != 0) e.emplace_back(j, Int(d[i][j]));
    m.row[i] = svec_make(std::move(e));
  }
  return m;
}

void IntMatrix::set(int i, int j, Int v) {
  auto& r = row[i];
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const auto& kv, int c) { return kv.first < c; });
  if (it != r.end() && it->first == j) {
    if (v == 0)
      r.erase(it);
    else
      it->second = std::move(v);
  } else if (v != 0) {
    r.emplace(it, j, std::move(v));
  }
}

Int IntMatrix::get(int i, int j) const {
  const Int* p = svec_get(row[i], j);
  return p ? *p : Int(0);
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (const auto& [j, v] : row[i]) t.row[j].emplace_back(i, v);
  return t;  // per-row cols ascend because i ascends
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
  assert(cols == o.rows);
  IntMatrix out(rows, o.cols);
  for (int i = 0; i < rows; ++i) {
    SVec acc;
    for (const auto& [k, v] : row[i]) acc = svec_axpy(acc, v, o.row[k]);
    out.row[i] = std::move(acc);
  }
  return out;
}

bool IntMatrix::is_zero() const {
  for (const auto& r : row)
    if (!r.empty()) return false;
  return true;
}

long IntMatrix::nnz() const {
  long n = 0;
  for (const auto& r : row) n += static_cast<long>(r.size());
  return n;
}

json IntMatrix::to_json() const {
  json e = json::array();
  for (int i = 0; i < rows; ++i)
    for (const auto& [j, v] : row[i]) e.push_back({i, j, v.get_str()});
  return json{{"rows", rows}, {"cols", cols}, {"entries", e}};
}

SVec Echelon::reduce(const SVec& x) const {
  SVec r = x;
  size_t k = 0;
  while (k < r.size()) {
    int c = r[k].first;
    int pi = (c < cols) ? pivot_of_col[c] : -1;
    if (pi < 0) {
      ++k;
      continue;
    }
    const Int& p = rows[pi][0].second;
    Int q = fdiv(r[k].second, p);
    if (q == 0) {
      ++k;
      continue;
    }
    r = svec_axpy(r, -q, rows[pi]);
    // entries left of c are untouched; re-find the cursor at column >= c.
    k = std::lower_bound(r.begin(), r.end(), c,
                         [](const auto& kv, int cc) { return kv.first < cc; }) -
        r.begin();
  }
  return r;
}

bool Echelon::contains_all(const std::vector<SVec>& xs) const {
  for (const auto& x : xs)
    if (!contains(x)) return false;
  return true;
}

std::optional<std::vector<Int>> Echelon::solve(const SVec& x) const {
  std::vector<Int> coeff(rows.size(), 0);
  SVec r = x;
  size_t k = 0;
  while (k < r.size()) {
    int c = r[k].first;
    int pi = (c < cols) ? pivot_of_col[c] : -1;
    if (pi < 0) return std::nullopt;  // entry at a pivot-free column
    const Int& p = rows[pi][0].second;
    if (!mpz_divisible_p(r[k].second.get_mpz_t(), p.get_mpz_t())) return std::nullopt;
    Int q = r[k].second / p;
    coeff[pi] = q;
    r = svec_axpy(r, -q, rows[pi]);
    k = std::lower_bound(r.begin(), r.end(), c,
                         [](const auto& kv, int cc) { return kv.first < cc; }) -
        r.begin();
  }
  if (!r.empty()) return std::nullopt;
  return coeff;
}

void Echelon::canonicalize() {
  // reduce above-pivot entries: row j (earlier pivot) minus multiples of row i.
  for (size_t i = 0; i < rows.size(); ++i) {
    int c = rows[i][0].first;
    const Int& p = rows[i][0].second;
    for (size_t j = 0; j < i; ++j) {
      const Int* v = svec_get(rows[j], c);
      if (!v) continue;
      Int q = fdiv(*v, p);
      if (q != 0) rows[j] = svec_axpy(rows[j], -q, rows[i]);
    }
  }
}

json Echelon::to_json() const {
  json r = json::array();
  for (const auto& row : rows) {
    json e = json::array();
    for (const auto& [c, v] : row) e.push_back({c, v.get_str()});
    r.push_back(e);
  }
  return json{{"cols", cols}, {"rows", r}};
}

Echelon hnf_rows(std::vector<SVec> rows, int cols, std::vector<SVec>* track,
                 std::vector<SVec>* zero_track) {
  assert(!track || track->size() == rows.size());
  std::vector<std::vector<int>> bucket(cols);  // leading col -> row ids
  auto lead_col = [&](int r) { return rows[r].empty() ? -1 : rows[r][0].first; };
  auto place = [&](int r) {
    int c = lead_col(r);
    if (c < 0) {
      if (zero_track && track) zero_track->push_back(std::move((*track)[r]));
      rows[r].clear();
      if (track) (*track)[r].clear();
    } else {
      bucket[c].push_back(r);
    }
  };
  for (size_t r = 0; r < rows.size(); ++r) place(static_cast<int>(r));

  Echelon H;
  H.cols = cols;
  H.pivot_of_col.assign(cols, -1);
  std::vector<SVec> out_track;
  for (int c = 0; c < cols; ++c) {
    auto& b = bucket[c];
    while (b.size() > 1) {
      // euclid on leading values: reduce everything modulo the min |lead| row.
      size_t best = 0;
      for (size_t i = 1; i < b.size(); ++i) {
        if (cmpabs(rows[b[i]][0].second, rows[b[best]][0].second) < 0) best = i;
      }
      int piv = b[best];
      std::vector<int> rest;
      rest.reserve(b.size() - 1);
      for (size_t i = 0; i < b.size(); ++i)
        if (i != best) rest.push_back(b[i]);
      b.clear();
      b.push_back(piv);
      const Int& pv = rows[piv][0].second;
      for (int r : rest) {
        Int q = fdiv(rows[r][0].second, pv);
        rows[r] = svec_axpy(rows[r], -q, rows[piv]);
        if (track) (*track)[r] = svec_axpy((*track)[r], -q, (*track)[piv]);
        if (lead_col(r) == c)
          b.push_back(r);
        else
          place(r);
      }
    }
    if (!b.empty()) {
      int r = b[0];
      if (rows[r][0].second < 0) {
        rows[r] = svec_neg(rows[r]);
        if (track) (*track)[r] = svec_neg((*track)[r]);
      }
      H.pivot_of_col[c] = static_cast<int>(H.rows.size());
      H.rows.push_back(std::move(rows[r]));
      if (track) out_track.push_back(std::move((*track)[r]));
    }
  }
  if (track) *track = std::move(out_track);
  return H;
}

std::vector<SVec> kernel_lattice(const IntMatrix& M) {
  // {x : Mx = 0} = left kernel of M^T; track identity to harvest coefficients.
  IntMatrix N = M.transpose();
  std::vector<SVec> track(N.rows);
  for (int i = 0; i < N.rows; ++i) track[i] = {{i, Int(1)}};
  std::vector<SVec> zeros;
  hnf_rows(std::move(N.row), N.cols, &track, &zeros);
  Echelon K = hnf_rows(std::move(zeros), M.cols);
  K.canonicalize();
  return K.rows;
}

// ---- Smith normal form (dense, with transforms) ----

namespace {

struct DenseWork {
  std::vector<std::vector<Int>> M, U, V;
  int rows, cols;

  void row_add(int dst, int src, const Int& q) {
    for (int j = 0; j < cols; ++j) M[dst][j] += q * M[src][j];
    for (size_t j = 0; j < U[dst].size(); ++j) U[dst][j] += q * U[src][j];
  }
  void col_add(int dst, int src, const Int& q) {
    for (int i = 0; i < rows; ++i) M[i][dst] += q * M[i][src];
    for (size_t i = 0; i < V.size(); ++i) V[i][dst] += q * V[i][src];
  }
  void row_swap(int a, int b) {
    std::swap(M[a], M[b]);
    std::swap(U[a], U[b]);
  }
  void col_swap(int a, int b) {
    for (int i = 0; i < rows; ++i) std::swap(M[i][a], M[i][b]);
    for (size_t i = 0; i < V.size(); ++i) std::swap(V[i][a], V[i][b]);
  }
  void row_neg(int a) {
    for (auto& v : M[a]) v = -v;
    for (auto& v : U[a]) v = -v;
  }
};

}  // namespace

SnfResult smith_normal_form(const IntMatrix& Min) {
  int n = Min.rows, m = Min.cols;
  DenseWork w;
  w.rows = n;
  w.cols = m;
  w.M.assign(n, std::vector<Int>(m, 0));
  for (int i = 0; i < n; ++i)
    for (const auto& [j, v] : Min.row[i]) w.M[i][j] = v;
  w.U.assign(n, std::vector<Int>(n, 0));
  w.V.assign(m, std::vector<Int>(m, 0));
  for (int i = 0; i < n; ++i) w.U[i][i] = 1;
  for (int j = 0; j < m; ++j) w.V[j][j] = 1;

  int k = 0;
  while (k < n && k < m) {
    // pick min-|v| nonzero pivot in the trailing submatrix.
    int pi = -1, pj = -1;
    for (int i = k; i < n; ++i)
      for (int j = k; j < m; ++j)
        if (w.M[i][j] != 0 &&
            (pi < 0 || cmpabs(w.M[i][j], w.M[pi][pj]) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    if (pi != k) w.row_swap(pi, k);
    if (pj != k) w.col_swap(pj, k);
    bool clean = true;
    for (int i = k + 1; i < n; ++i)
      if (w.M[i][k] != 0) {
        Int q = fdiv(w.M[i][k], w.M[k][k]);
        w.row_add(i, k, -q);
        if (w.M[i][k] != 0) clean = false;
      }
    for (int j = k + 1; j < m; ++j)
      if (w.M[k][j] != 0) {
        Int q = fdiv(w.M[k][j], w.M[k][k]);
        w.col_add(j, k, -q);
        if (w.M[k][j] != 0) clean = false;
      }
    if (!clean) continue;  // smaller residues appeared; redo with new pivot
    // divisibility: pivot must divide every remaining entry.
    bool fixed = false;
    for (int i = k + 1; i < n && !fixed; ++i)
      for (int j = k + 1; j < m && !fixed; ++j)
        if (!mpz_divisible_p(w.M[i][j].get_mpz_t(), w.M[k][k].get_mpz_t())) {
          w.row_add(k, i, 1);
          fixed = true;
        }
    if (fixed) continue;
    if (w.M[k][k] < 0) w.row_neg(k);
    ++k;
  }
  SnfResult res;
  res.S = std::move(w.M);
  res.U = std::move(w.U);
  res.V = std::move(w.V);
  return res;
}

// ---- structure-only invariant factors with coordinate functionals ----

namespace {

struct ColOp {  // col_dst += q * col_src, or swap when q is unset
  int dst, src;
  Int q;
  bool swap;
};

// sparse phase: peel ±1 pivots (row ops free, col ops logged), then a dense
// finish on whatever remains.
struct StructureWork {
  int cols;
  std::vector<std::map<int, Int>> row;     // active rows, map col -> value
  std::vector<std::vector<int>> col_rows;  // col -> row ids possibly present
  std::vector<bool> row_alive, col_alive;
  std::vector<ColOp> log;

  explicit StructureWork(const Echelon& H) : cols(H.cols) {
    row.resize(H.rows.size());
    col_rows.resize(cols);
    for (size_t i = 0; i < H.rows.size(); ++i)
      for (const auto& [c, v] : H.rows[i]) {
        row[i][c] = v;
        col_rows[c].push_back(static_cast<int>(i));
      }
    row_alive.assign(row.size(), true);
    col_alive.assign(cols, true);
  }

  void note_col(int c, int r) { col_rows[c].push_back(r); }

  // row[dst] += q*row[src]
  void row_add(int dst, int src, const Int& q) {
    for (const auto& [c, v] : row[src]) {
      auto it = row[dst].find(c);
      if (it == row[dst].end()) {
        Int nv = q * v;
        if (nv != 0) {
          row[dst][c] = std::move(nv);
          note_col(c, dst);
        }
      } else {
        it->second += q * v;
        if (it->second == 0) row[dst].erase(it);
      }
    }
  }

  bool peel_units() {
    bool progress = false;
    for (size_t i = 0; i < row.size(); ++i) {
      if (!row_alive[i]) continue;
      int pc = -1;
      for (const auto& [c, v] : row[i])
        if (col_alive[c] && (v == 1 || v == -1)) {
          pc = c;
          break;
        }
      if (pc < 0) continue;
      progress = true;
      Int pv = row[i][pc];  // ±1
      // clear the pivot column in all other live rows (row ops, unlogged).
      auto ids = col_rows[pc];
      for (int j : ids) {
        if (j == static_cast<int>(i) || !row_alive[j]) continue;
        auto it = row[j].find(pc);
        if (it == row[j].end()) continue;
        Int q = -it->second * pv;  // pv^{-1} == pv
        row_add(j, static_cast<int>(i), q);
      }
      // clear the pivot row's tail with logged column ops; the pivot column is
      // zero elsewhere, so each op touches only this row.
      for (const auto& [t, v] : row[i]) {
        if (t == pc || !col_alive[t]) continue;
        log.push_back(ColOp{t, pc, -v * pv, false});
      }
      row_alive[i] = false;
      col_alive[pc] = false;
      row[i].clear();
    }
    return progress;
  }
};

}  // namespace

QuotientStructure quotient_structure(const Echelon& H, bool want_coords) {
  QuotientStructure out;
  out.has_coords = want_coords;
  StructureWork w(H);
  while (w.peel_units()) {
  }

  // dense finish over the surviving rows/cols.
  std::vector<int> ar, ac;
  for (size_t i = 0; i < w.row.size(); ++i)
    if (w.row_alive[i] && !w.row[i].empty()) ar.push_back(static_cast<int>(i));
  std::vector<bool> col_used(w.cols, false);
  for (int i : ar)
    for (const auto& [c, v] : w.row[i])
      if (w.col_alive[c]) col_used[c] = true;
  for (int c = 0; c < w.cols; ++c)
    if (w.col_alive[c] && col_used[c]) ac.push_back(c);

  int dn = static_cast<int>(ar.size()), dm = static_cast<int>(ac.size());
  std::vector<std::vector<Int>> D(dn, std::vector<Int>(dm, 0));
  std::vector<int> col_pos(w.cols, -1);
  for (int j = 0; j < dm; ++j) col_pos[ac[j]] = j;
  for (int i = 0; i < dn; ++i)
    for (const auto& [c, v] : w.row[ar[i]])
      if (col_pos[c] >= 0) D[i][col_pos[c]] = v;

  auto col_add = [&](int dst, int src, const Int& q) {
    for (int i = 0; i < dn; ++i) D[i][dst] += q * D[i][src];
    w.log.push_back(ColOp{ac[dst], ac[src], q, false});
  };
  auto col_swap = [&](int a, int b) {
    for (int i = 0; i < dn; ++i) std::swap(D[i][a], D[i][b]);
    w.log.push_back(ColOp{ac[a], ac[b], 0, true});
  };
  auto row_add = [&](int dst, int src, const Int& q) {
    for (int j = 0; j < dm; ++j) D[dst][j] += q * D[src][j];
  };

  int k = 0;
  while (k < dn && k < dm) {
    int pi = -1, pj = -1;
    for (int i = k; i < dn; ++i)
      for (int j = k; j < dm; ++j)
        if (D[i][j] != 0 && (pi < 0 || cmpabs(D[i][j], D[pi][pj]) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    if (pi != k) std::swap(D[pi], D[k]);
    if (pj != k) col_swap(pj, k);
    bool clean = true;
    for (int i = k + 1; i < dn; ++i)
      if (D[i][k] != 0) {
        Int q = fdiv(D[i][k], D[k][k]);
        row_add(i, k, -q);
        if (D[i][k] != 0) clean = false;
      }
    for (int j = k + 1; j < dm; ++j)
      if (D[k][j] != 0) {
        Int q = fdiv(D[k][j], D[k][k]);
        col_add(j, k, -q);
        if (D[k][j] != 0) clean = false;
      }
    if (!clean) continue;
    bool fixed = false;
    for (int i = k + 1; i < dn && !fixed; ++i)
      for (int j = k + 1; j < dm && !fixed; ++j)
        if (!mpz_divisible_p(D[i][j].get_mpz_t(), D[k][k].get_mpz_t())) {
          row_add(k, i, 1);
          fixed = true;
        }
    if (fixed) continue;
    if (D[k][k] < 0)
      for (auto& v : D[k]) v = -v;
    ++k;
  }

  // essential coordinates: torsion at dense pivot cols with d >= 2, free at
  // every remaining live column that never hosted a pivot.
  std::vector<std::pair<int, Int>> torsion;  // (global col, d)
  for (int t = 0; t < k; ++t)
    if (D[t][t] >= 2) torsion.emplace_back(ac[t], D[t][t]);
  std::vector<int> free_cols;
  std::vector<bool> pivoted(w.cols, false);
  for (int t = 0; t < k; ++t) pivoted[ac[t]] = true;
  for (int c = 0; c < w.cols; ++c)
    if (w.col_alive[c] && !pivoted[c]) free_cols.push_back(c);

  for (auto& [c, d] : torsion) out.invariant_factors.push_back(d);
  out.free_rank = static_cast<long>(free_cols.size());

  if (want_coords) {
    auto replay = [&](int t) {
      std::vector<Int> v(w.cols, 0);
      v[t] = 1;
      for (auto it = w.log.rbegin(); it != w.log.rend(); ++it) {
        if (it->swap)
          std::swap(v[it->dst], v[it->src]);
        else
          v[it->src] += it->q * v[it->dst];
      }
      return v;
    };
    for (auto& [c, d] : torsion) out.coords.push_back(CoordFun{replay(c), d});
    for (int c : free_cols) out.coords.push_back(CoordFun{replay(c), Int(0)});
  }
  return out;
}

Int det_dense(std::vector<std::vector<Int>> m) {
  int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int s = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) {
          s = i;
          break;
        }
      if (s < 0) return 0;
      std::swap(m[k], m[s]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
      }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

}  // namespace mwkt
