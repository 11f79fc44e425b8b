#include "mwkt/gp.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <set>

namespace mwkt {

namespace {

constexpr long kColCap = 20000;

std::recursive_mutex& cache_mutex() {
  static std::recursive_mutex m;
  return m;
}

// ---- small matrix helpers over the ring (column-major n×r encodings) ----

// entry (row i, column j)
inline int ent(const std::vector<int>& f, int n, int i, int j) { return f[j * n + i]; }

// residue row echelon over the residue field; rows normalized to leading 1.
// Returns true (and inserts when insert) iff v is independent of the rows.
bool res_ech_insert(const LocalRing& k, std::vector<std::vector<int>>& rows,
                    std::vector<int>& lead, std::vector<int> v, bool insert) {
  const int n = static_cast<int>(v.size());
  for (size_t t = 0; t < rows.size(); ++t) {
    int c = lead[t];
    if (v[c] != k.zero()) {
      int f = v[c];
      for (int j = 0; j < n; ++j) v[j] = k.sub(v[j], k.mul(f, rows[t][j]));
    }
  }
  int l = -1;
  for (int j = 0; j < n; ++j)
    if (v[j] != k.zero()) {
      l = j;
      break;
    }
  if (l < 0) return false;
  if (insert) {
    int inv = k.inv(v[l]);
    for (int j = 0; j < n; ++j) v[j] = k.mul(inv, v[j]);
    rows.push_back(std::move(v));
    lead.push_back(l);
  }
  return true;
}

std::vector<int> residue_col(const LocalRing& R, const std::vector<int>& col) {
  std::vector<int> out(col.size());
  for (size_t i = 0; i < col.size(); ++i) out[i] = R.residue(col[i]);
  return out;
}

// determinant by first-column Laplace expansion (frames are tiny)
int ring_det(const LocalRing& R, const std::vector<int>& m, int n) {
  if (n == 0) return R.one();
  if (n == 1) return m[0];
  int acc = R.zero();
  for (int i = 0; i < n; ++i) {
    if (m[i] == R.zero()) continue;
    std::vector<int> minor((n - 1) * (n - 1));
    for (int j = 1; j < n; ++j) {
      int t = 0;
      for (int i2 = 0; i2 < n; ++i2) {
        if (i2 == i) continue;
        minor[(j - 1) * (n - 1) + t] = ent(m, n, i2, j);
        ++t;
      }
    }
    int term = R.mul(m[i], ring_det(R, minor, n - 1));
    acc = (i % 2 == 0) ? R.add(acc, term) : R.sub(acc, term);
  }
  return acc;
}

// solve A x = v for invertible A (unit-pivot Gauss–Jordan)
std::vector<int> ring_solve(const LocalRing& R, std::vector<int> a, std::vector<int> v,
                            int n) {
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (R.is_unit(ent(a, n, i, col))) {
        piv = i;
        break;
      }
    if (piv < 0) throw mwkt_error("IllFormedHom", "singular frame in solve");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a[j * n + piv], a[j * n + col]);
      std::swap(v[piv], v[col]);
    }
    int inv = R.inv(ent(a, n, col, col));
    for (int j = 0; j < n; ++j) a[j * n + col] = R.mul(inv, a[j * n + col]);
    v[col] = R.mul(inv, v[col]);
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      int f = ent(a, n, i, col);
      if (f == R.zero()) continue;
      for (int j = 0; j < n; ++j) a[j * n + i] = R.sub(a[j * n + i], R.mul(f, a[j * n + col]));
      v[i] = R.sub(v[i], R.mul(f, v[col]));
    }
  }
  return v;
}

// left multiplication g·f of an n×r frame by the elementary matrix
// e_{ij}(b) = 1 + b·E_{ij}: row i gains b × row j.
std::vector<int> elem_mult(const LocalRing& R, const std::vector<int>& f, int n, int r,
                           int i, int j, int b) {
  std::vector<int> g = f;
  for (int c = 0; c < r; ++c) g[c * n + i] = R.add(g[c * n + i], R.mul(b, g[c * n + j]));
  return g;
}

// left multiplication by diag(u, 1, …, 1)
std::vector<int> diag_mult(const LocalRing& R, const std::vector<int>& f, int n, int r,
                           int u) {
  std::vector<int> g = f;
  for (int c = 0; c < r; ++c) g[c * n] = R.mul(u, g[c * n]);
  return g;
}

// extends a left-invertible frame to an invertible n×n matrix by standard
// basis vectors; returns false only if the frame was not left invertible.
bool completes_to_gl(const LocalRing& R, const std::vector<int>& f, int n, int r) {
  const LocalRing& k = *R.residue_field();
  std::vector<std::vector<int>> rows;
  std::vector<int> lead;
  std::vector<int> full = f;
  for (int c = 0; c < r; ++c) {
    std::vector<int> col(f.begin() + c * n, f.begin() + (c + 1) * n);
    if (!res_ech_insert(k, rows, lead, residue_col(R, col), true)) return false;
  }
  for (int j = 0; j < n && static_cast<int>(rows.size()) < n; ++j) {
    std::vector<int> e(n, k.zero());
    e[j] = k.one();
    if (res_ech_insert(k, rows, lead, e, true)) {
      std::vector<int> col(n, R.zero());
      col[j] = R.one();
      full.insert(full.end(), col.begin(), col.end());
    }
  }
  return static_cast<int>(full.size()) == n * n && R.is_unit(ring_det(R, full, n));
}

// ---- frame enumeration ----

void enumerate_frames(FrameBasis& B) {
  const LocalRing& R = *B.ring;
  const LocalRing& k = *R.residue_field();
  const int n = B.n, r = B.r;
  if (r == 0) {
    B.frames.push_back({});
    B.index[{}] = 0;
    return;
  }
  if (!B.general_position && r > n) return;

  long codes = 1;
  for (int i = 0; i < n; ++i) codes *= R.size;

  std::vector<int> cur;                       // column-major, level*n entries
  std::vector<std::vector<int>> res_cols;     // residue columns chosen so far
  std::vector<std::vector<int>> ech;          // echelon state (levels ≤ n)
  std::vector<int> lead;

  std::function<void(int)> rec = [&](int level) {
    if (level == r) {
      if (B.count() >= kColCap)
        throw mwkt_error("TooLarge", "frame basis exceeds cap", "column-cap");
      B.index[cur] = static_cast<int>(B.frames.size());
      B.frames.push_back(cur);
      return;
    }
    std::vector<int> col(n);
    for (long code = 0; code < codes; ++code) {
      long w = code;
      for (int i = n - 1; i >= 0; --i) {
        col[i] = static_cast<int>(w % R.size);
        w /= R.size;
      }
      std::vector<int> rc = residue_col(R, col);
      bool ok;
      if (level < n) {
        // next column must leave the residue matrix of full rank
        ok = res_ech_insert(k, ech, lead, rc, false);
      } else {
        // general position: every (n−1)-subset of earlier columns, plus the
        // new one, must be invertible
        ok = true;
        std::vector<int> sel;
        std::function<void(int, int)> subsets = [&](int from, int need) {
          if (!ok) return;
          if (need == 0) {
            std::vector<int> m;
            for (int s : sel)
              m.insert(m.end(), res_cols[s].begin(), res_cols[s].end());
            m.insert(m.end(), rc.begin(), rc.end());
            if (!k.is_unit(ring_det(k, m, n))) ok = false;
            return;
          }
          for (int t = from; t <= level - need; ++t) {
            sel.push_back(t);
            subsets(t + 1, need - 1);
            sel.pop_back();
            if (!ok) return;
          }
        };
        subsets(0, n - 1);
      }
      if (!ok) continue;
      size_t ech_n = ech.size();
      if (level < n) res_ech_insert(k, ech, lead, rc, true);
      cur.insert(cur.end(), col.begin(), col.end());
      res_cols.push_back(rc);
      rec(level + 1);
      res_cols.pop_back();
      cur.resize(cur.size() - n);
      ech.resize(ech_n);
      lead.resize(ech_n);
    }
  };
  rec(0);
}

IntMatrix boundary_matrix(const FrameBasis& lo, const FrameBasis& hi) {
  const int n = hi.n, r = hi.r;
  IntMatrix d(static_cast<int>(lo.count()), static_cast<int>(hi.count()));
  std::vector<std::vector<std::pair<int, Int>>> acc(lo.count());
  for (long c = 0; c < hi.count(); ++c) {
    const std::vector<int>& f = hi.frames[c];
    for (int i = 0; i < r; ++i) {
      std::vector<int> face = f;
      face.erase(face.begin() + i * n, face.begin() + (i + 1) * n);
      int fi = lo.index_of(face);
      if (fi < 0) throw mwkt_error("IllFormedHom", "boundary face left the basis");
      acc[fi].push_back({static_cast<int>(c), Int(i % 2 == 0 ? 1 : -1)});
    }
  }
  for (long i = 0; i < lo.count(); ++i) d.row[i] = svec_make(std::move(acc[i]));
  return d;
}

const FrameComplex& complex_cached(const LocalRing& R, int n, bool gp, int r_max) {
  std::lock_guard<std::recursive_mutex> lock(cache_mutex());
  static std::map<std::string, std::unique_ptr<FrameComplex>> cache;
  std::string key = R.spec + "#" + std::to_string(n) + "#" + (gp ? "t" : "u") + "#" +
                    std::to_string(r_max);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;

  auto C = std::make_unique<FrameComplex>();
  C->ring = &R;
  C->n = n;
  C->general_position = gp;
  C->r_max = r_max;
  C->basis.resize(r_max + 1);
  C->d.resize(r_max + 1);

  json dims = json::array();
  json completed = json::array();
  bool counts_ok = true;
  for (int r = 0; r <= r_max; ++r) {
    FrameBasis& B = C->basis[r];
    B.ring = &R;
    B.n = n;
    B.r = r;
    B.general_position = gp;
    enumerate_frames(B);
    dims.push_back(B.count());
    // over a field, |U_r| = (qⁿ−1)(qⁿ−q)···(qⁿ−q^{r−1})
    if (R.is_field && r >= 1 && r <= n) {
      long expect = 1, qi = 1, qn = 1;
      for (int i = 0; i < n; ++i) qn *= R.size;
      for (int i = 0; i < r; ++i) {
        expect *= qn - qi;
        qi *= R.size;
      }
      if (expect != B.count()) counts_ok = false;
    }
    // left-invertible frames complete to GL_n (constructive certificate;
    // meaningful for r ≤ n only)
    if (r <= n) {
      long done = 0;
      for (const auto& f : B.frames)
        if (completes_to_gl(R, f, n, r)) ++done;
      completed.push_back(done);
      if (done != B.count())
        throw mwkt_error("IllFormedHom", "frame failed to complete to an invertible matrix");
    } else {
      completed.push_back(nullptr);
    }
    C->d[r] = (r == 0) ? IntMatrix(0, static_cast<int>(B.count()))
                       : boundary_matrix(C->basis[r - 1], B);
  }
  bool dd = true;
  for (int r = 1; r < r_max; ++r)
    if (!C->d[r].mul(C->d[r + 1]).is_zero()) dd = false;
  if (!dd) throw mwkt_error("IllFormedHom", "boundary does not square to zero");
  C->cert = json{{"ring", R.spec},
                 {"n", n},
                 {"variant", gp ? "general-position" : "U"},
                 {"dims", dims},
                 {"dd_zero", dd},
                 {"field_counts_match", counts_ok},
                 {"frames_completed_to_gl", completed}};
  if (R.is_field && !counts_ok)
    throw mwkt_error("IllFormedHom", "frame count differs from the field formula");

  auto& ref = *C;
  cache[key] = std::move(C);
  return ref;
}

}  // namespace

// ---------------------------------------------------------------------------
// complexes

int FrameBasis::index_of(const std::vector<int>& f) const {
  auto it = index.find(f);
  return it == index.end() ? -1 : it->second;
}

long FrameComplex::dim(int r) const {
  if (r < 0 || r > r_max) return 0;
  return basis[r].count();
}

const FrameComplex& build_complex(const LocalRing& R, int n, bool general_position,
                                  int r_max) {
  if (n < 1 || r_max < 0) throw mwkt_error("MalformedSpec", "complex needs n ≥ 1, r ≥ 0");
  return complex_cached(R, n, general_position, r_max);
}

LatticeQuotient complex_homology(const LocalRing& R, int n, int i, bool general_position) {
  if (i < 0) throw mwkt_error("MalformedSpec", "negative homology degree");
  const FrameComplex& C = build_complex(R, n, general_position, i + 1);
  std::vector<SVec> kern = kernel_lattice(C.d[i]);
  std::vector<SVec> image = C.d[i + 1].transpose().row;
  return lattice_quotient(kern, image, static_cast<int>(C.dim(i)));
}

// ---------------------------------------------------------------------------
// S_n

CycleTerms symbol_terms(const LocalRing& R, const std::vector<int>& a) {
  const int n = static_cast<int>(a.size());
  for (int x : a)
    if (!R.is_unit(x)) throw mwkt_error("NotAUnit", R.spec + ": " + std::to_string(x));
  if (n == 0) return {};
  CycleTerms t;
  // faces of (e_1, …, e_n, a): delete e_i → (e_1..ê_i..e_n, a), delete a → 1
  for (int i = 0; i < n; ++i) {
    std::vector<int> f;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<int> e(n, R.zero());
      e[j] = R.one();
      f.insert(f.end(), e.begin(), e.end());
    }
    f.insert(f.end(), a.begin(), a.end());
    t.push_back({Int(i % 2 == 0 ? 1 : -1), std::move(f)});
  }
  std::vector<int> id(n * n, R.zero());
  for (int j = 0; j < n; ++j) id[j * n + j] = R.one();
  t.push_back({Int(n % 2 == 0 ? 1 : -1), std::move(id)});
  return t;
}

SVec SnModule::symbol_cycle(const std::vector<int>& a) const {
  const LocalRing& R = *ring;
  if (static_cast<int>(a.size()) != n)
    throw mwkt_error("IllFormedHom", "symbol length != degree");
  if (n == 0) return SVec{{R.unit_idx[R.one()], Int(1)}};
  return vec_of(symbol_terms(R, a));
}

std::vector<Int> SnModule::class_coords(const SVec& z) const {
  auto sol = S.LB.solve(z);
  if (!sol) throw mwkt_error("IllFormedHom", "vector is not a cycle");
  std::vector<std::pair<int, Int>> e;
  for (size_t i = 0; i < sol->size(); ++i)
    if ((*sol)[i] != 0) e.push_back({static_cast<int>(i), (*sol)[i]});
  return S.grp.coords(svec_make(std::move(e)));
}

bool SnModule::class_is_zero(const SVec& z) const {
  auto c = class_coords(z);
  for (const Int& v : c)
    if (v != 0) return false;
  return true;
}

bool SnModule::class_eq(const SVec& z, const SVec& w) const {
  return class_is_zero(svec_add(z, svec_neg(w)));
}

SVec SnModule::act_unit(int u, const SVec& z) const {
  const LocalRing& R = *ring;
  if (!R.is_unit(u)) throw mwkt_error("NotAUnit", R.spec + ": " + std::to_string(u));
  std::vector<std::pair<int, Int>> out;
  if (n == 0) {
    for (const auto& [i, c] : z)
      out.push_back({R.unit_idx[R.mul(u, R.units[i])], c});
    return svec_make(std::move(out));
  }
  for (const auto& [i, c] : z) {
    int j = frames->index_of(diag_mult(R, frames->frames[i], n, n, u));
    if (j < 0) throw mwkt_error("IllFormedHom", "unit action left the basis");
    out.push_back({j, c});
  }
  return svec_make(std::move(out));
}

SVec SnModule::act_gr(const GRElem& s, const SVec& z) const {
  SVec acc;
  for (const auto& [u, c] : s.c) acc = svec_axpy(acc, c, act_unit(u, z));
  return acc;
}

GRElem SnModule::det_class(const SVec& z) const {
  const LocalRing& R = *ring;
  if (n == 0) return units_to_gr(R, z);
  GRElem acc = gr_zero(R);
  for (const auto& [i, c] : z) {
    GRElem t = gr_unit(R, ring_det(R, frames->frames[i], n));
    acc = gr_add(acc, gr_scale(c, t));
  }
  return acc;
}

CycleTerms SnModule::terms_of(const SVec& z) const {
  if (n == 0) throw mwkt_error("IllFormedHom", "degree-0 classes carry no frames");
  CycleTerms t;
  for (const auto& [i, c] : z) t.push_back({c, frames->frames[i]});
  return t;
}

SVec SnModule::vec_of(const CycleTerms& t) const {
  if (n == 0) throw mwkt_error("IllFormedHom", "degree-0 classes carry no frames");
  std::vector<std::pair<int, Int>> e;
  for (const auto& [c, f] : t) {
    int i = frames->index_of(f);
    if (i < 0) throw mwkt_error("IllFormedHom", "frame outside the basis");
    e.push_back({i, c});
  }
  return svec_make(std::move(e));
}

const SnModule& s_module(const LocalRing& R, int n) {
  if (n < 0) throw mwkt_error("MalformedSpec", "negative degree");
  std::lock_guard<std::recursive_mutex> lock(cache_mutex());
  static std::map<std::string, std::unique_ptr<SnModule>> cache;
  std::string key = R.spec + "#" + std::to_string(n);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;

  auto M = std::make_unique<SnModule>();
  M->ring = &R;
  M->n = n;
  const long U = static_cast<long>(R.units.size());

  if (n == 0) {
    // S_0 = Z[A*] on the unit basis (empty frame, determinant twist)
    std::vector<SVec> gens;
    for (long i = 0; i < U; ++i) gens.push_back(SVec{{static_cast<int>(i), Int(1)}});
    M->S = lattice_quotient(gens, {}, static_cast<int>(U));
    M->zbasis = M->S.LB.rows;
    M->symbol_table = {M->class_coords(SVec{{R.unit_idx[R.one()], Int(1)}})};
    M->cert = json{{"ring", R.spec}, {"n", 0}, {"free_on_units", true}};
    auto& ref = *M;
    cache[key] = std::move(M);
    return ref;
  }

  const FrameComplex& C = build_complex(R, n, false, n);
  M->frames = &C.basis[n];
  M->zbasis = kernel_lattice(C.d[n]);

  // SL_n-coinvariants: e_{ij}(b)·z − z over the additive basis spans the
  // action lattice (words in elementary generators reduce to these by
  // Z-linearity, and elementary matrices generate SL_n over a local ring).
  std::vector<SVec> rel;
  for (const SVec& z : M->zbasis) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        for (int b : R.add_basis) {
          std::vector<std::pair<int, Int>> e;
          for (const auto& [f, c] : z) {
            int g = M->frames->index_of(elem_mult(R, M->frames->frames[f], n, n, i, j, b));
            if (g < 0) throw mwkt_error("IllFormedHom", "elementary action left the basis");
            e.push_back({g, c});
          }
          SVec gz = svec_make(std::move(e));
          SVec row = svec_add(gz, svec_neg(z));
          if (!row.empty()) rel.push_back(std::move(row));
        }
      }
    }
  }
  M->S = lattice_quotient(M->zbasis, rel, static_cast<int>(M->frames->count()));

  // symbol table over all unit tuples
  long cnt = 1;
  for (int i = 0; i < n; ++i) {
    if (cnt > kColCap) throw mwkt_error("TooLarge", "symbol table exceeds cap", "column-cap");
    cnt *= U;
  }
  std::vector<int> a(n);
  for (long t = 0; t < cnt; ++t) {
    long w = t;
    for (int i = n - 1; i >= 0; --i) {
      a[i] = R.units[w % U];
      w /= U;
    }
    M->symbol_table.push_back(M->class_coords(M->symbol_cycle(a)));
  }

  // lift independence of the ⟨u⟩-action: compare diag(u,1,…,1) with random
  // determinant-u lifts on every symbol cycle.
  std::mt19937 rng(static_cast<unsigned>(fnv1a64(R.spec.data(), R.spec.size()) ^ n));
  long lift_checks = 0;
  bool lift_ok = true;
  std::vector<int> sample_units = R.ug_gens;
  if (sample_units.empty()) sample_units.push_back(R.one());
  for (int u : sample_units) {
    for (int trial = 0; trial < 3; ++trial) {
      // random SL word s; lift g = diag(u,1,…,1)·s has determinant u
      std::vector<std::array<int, 3>> word;
      int len = (n == 1) ? 0 : 1 + static_cast<int>(rng() % 4);
      for (int t = 0; t < len; ++t) {
        int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
        if (i == j) j = (j + 1) % n;
        int b = static_cast<int>(rng() % R.size);
        word.push_back({i, j, b});
      }
      for (long t = 0; t < cnt; ++t) {
        long w = t;
        for (int i = n - 1; i >= 0; --i) {
          a[i] = R.units[w % U];
          w /= U;
        }
        SVec z = M->symbol_cycle(a);
        // apply s frame-wise, then the diagonal lift
        std::vector<std::pair<int, Int>> e;
        for (const auto& [f, c] : z) {
          std::vector<int> g = M->frames->frames[f];
          for (const auto& [i, j, b] : word) g = elem_mult(R, g, n, n, i, j, b);
          g = diag_mult(R, g, n, n, u);
          int idx = M->frames->index_of(g);
          if (idx < 0) throw mwkt_error("IllFormedHom", "lift action left the basis");
          e.push_back({idx, c});
        }
        ++lift_checks;
        if (!M->class_eq(svec_make(std::move(e)), M->act_unit(u, z))) lift_ok = false;
      }
    }
  }
  if (!lift_ok)
    throw mwkt_error("IllFormedHom", "unit action depends on the determinant lift");

  // the symbol classes generate S_n over Z[A*]: their unit translates must
  // generate the quotient group, i.e. S modulo the translates is zero.
  const auto& ifs = M->S.grp.q.invariant_factors;
  const int coord_dim = static_cast<int>(ifs.size()) + M->S.grp.q.free_rank;
  std::vector<SVec> span;
  for (size_t i = 0; i < ifs.size(); ++i)
    span.push_back(SVec{{static_cast<int>(i), ifs[i]}});
  for (long t = 0; t < cnt; ++t) {
    long w = t;
    for (int i = n - 1; i >= 0; --i) {
      a[i] = R.units[w % U];
      w /= U;
    }
    SVec z = M->symbol_cycle(a);
    for (int ui = 0; ui < U; ++ui) {
      std::vector<Int> c = M->class_coords(M->act_unit(R.units[ui], z));
      std::vector<std::pair<int, Int>> e;
      for (size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) e.push_back({static_cast<int>(i), c[i]});
      span.push_back(svec_make(std::move(e)));
    }
  }
  bool generate = fp_group(coord_dim, std::move(span), false).is_zero_group();

  M->cert = json{{"ring", R.spec},
                 {"n", n},
                 {"cycle_rank", M->zbasis.size()},
                 {"action_rows", rel.size()},
                 {"lift_checks", lift_checks},
                 {"lift_independent", lift_ok},
                 {"symbols_generate", generate},
                 {"structure", M->S.grp.structure_str()}};

  auto& ref = *M;
  cache[key] = std::move(M);
  return ref;
}

// ---------------------------------------------------------------------------
// products

CycleTerms sn_product_terms(const LocalRing& R, int m, const CycleTerms& x, int n,
                            const CycleTerms& y) {
  const int r = m + n;
  std::map<std::vector<int>, Int> acc;
  for (const auto& [cx, fx] : x)
    for (const auto& [cy, fy] : y) {
      std::vector<int> f(r * r, R.zero());
      for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) f[j * r + i] = fx[j * m + i];
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) f[(m + j) * r + (m + i)] = fy[j * n + i];
      acc[f] += cx * cy;
    }
  CycleTerms out;
  for (auto& [f, c] : acc)
    if (c != 0) out.push_back({c, f});
  return out;
}

CycleTerms terms_act_gr(const LocalRing& R, int n, const GRElem& s, const CycleTerms& t) {
  if (n < 1) throw mwkt_error("IllFormedHom", "degree-0 terms carry no frame");
  std::map<std::vector<int>, Int> acc;
  for (const auto& [u, cu] : s.c)
    for (const auto& [c, f] : t) acc[diag_mult(R, f, n, n, u)] += cu * c;
  CycleTerms out;
  for (auto& [f, c] : acc)
    if (c != 0) out.push_back({c, f});
  return out;
}

CycleTerms terms_add(const CycleTerms& x, const CycleTerms& y) {
  std::map<std::vector<int>, Int> acc;
  for (const auto& [c, f] : x) acc[f] += c;
  for (const auto& [c, f] : y) acc[f] += c;
  CycleTerms out;
  for (auto& [f, c] : acc)
    if (c != 0) out.push_back({c, f});
  return out;
}

GRElem terms_det(const LocalRing& R, int n, const CycleTerms& t) {
  if (n < 1) throw mwkt_error("IllFormedHom", "degree-0 terms carry no frame");
  GRElem det = gr_zero(R);
  for (const auto& [c, f] : t)
    det = gr_add(det, gr_scale(c, gr_unit(R, ring_det(R, f, n))));
  return det;
}

SVec sn_product(const SnModule& X, const SVec& x, const SnModule& Y, const SVec& y,
                const SnModule& Z) {
  const LocalRing& R = *X.ring;
  if (Y.ring != &R || Z.ring != &R) throw mwkt_error("RingMismatch", "mixed rings");
  if (Z.n != X.n + Y.n) throw mwkt_error("IllFormedHom", "product degree mismatch");
  if (X.n == 0) {
    SVec acc;
    for (const auto& [i, c] : x) acc = svec_axpy(acc, c, Y.act_unit(R.units[i], y));
    return acc;
  }
  if (Y.n == 0) {
    SVec acc;
    for (const auto& [i, c] : y) acc = svec_axpy(acc, c, X.act_unit(R.units[i], x));
    return acc;
  }
  return Z.vec_of(sn_product_terms(R, X.n, X.terms_of(x), Y.n, Y.terms_of(y)));
}

// ---------------------------------------------------------------------------
// symbol reduction and the T-map

SymbolReduction reduce_terms(const LocalRing& R, int n, const CycleTerms& t) {
  SymbolReduction out;
  out.n = n;
  if (n == 0) throw mwkt_error("IllFormedHom", "nothing to reduce in degree 0");

  long codes = 1;
  for (int i = 0; i < n; ++i) codes *= R.size;
  std::vector<int> v(n);
  bool found = false;
  for (long code = 0; code < codes && !found; ++code) {
    long w = code;
    for (int i = n - 1; i >= 0; --i) {
      v[i] = static_cast<int>(w % R.size);
      w /= R.size;
    }
    bool ok = true;
    for (const auto& [c, f] : t) {
      for (int e : ring_solve(R, f, v, n))
        if (!R.is_unit(e)) {
          ok = false;
          break;
        }
      if (!ok) break;
    }
    found = ok;
  }
  if (!found) {
    // the obstruction: the hyperplanes spanned by (n−1)-subsets of support
    // columns cover the whole space; report their normal covectors
    const LocalRing& k = *R.residue_field();
    std::set<std::vector<int>> normals;
    for (const auto& [c, f] : t) {
      std::vector<int> sel;
      std::function<void(int, int)> subsets = [&](int from, int need) {
        if (need == 0) {
          std::vector<int> w(n);
          for (int i = 0; i < n; ++i) {
            // minor deleting row i of the residue n×(n−1) matrix of columns sel
            std::vector<int> m((n - 1) * (n - 1));
            for (size_t j = 0; j < sel.size(); ++j) {
              int tgt = 0;
              for (int i2 = 0; i2 < n; ++i2) {
                if (i2 == i) continue;
                m[j * (n - 1) + tgt] = R.residue(ent(f, n, i2, sel[j]));
                ++tgt;
              }
            }
            int d = ring_det(k, m, n - 1);
            w[i] = (i % 2 == 0) ? d : k.neg(d);
          }
          int lead = -1;
          for (int i = 0; i < n; ++i)
            if (w[i] != k.zero()) {
              lead = i;
              break;
            }
          if (lead >= 0) {
            int inv = k.inv(w[lead]);
            for (int& x : w) x = k.mul(inv, x);
            normals.insert(w);
          }
          return;
        }
        for (int s = from; s <= n - need; ++s) {
          sel.push_back(s);
          subsets(s + 1, need - 1);
          sel.pop_back();
        }
      };
      subsets(0, n - 1);
    }
    std::string list;
    for (const auto& w : normals) {
      list += list.empty() ? "(" : ", (";
      for (int i = 0; i < n; ++i) list += (i ? "," : "") + std::to_string(w[i]);
      list += ")";
    }
    throw mwkt_error("TransversalNotFound",
                     R.spec + ": all " + std::to_string(codes) +
                         " candidate vectors lie on a covered hyperplane; residue normal "
                         "covectors: " +
                         list);
  }
  out.transversal = v;

  std::map<std::vector<int>, GRElem> acc;
  const Int sgn(n % 2 == 0 ? 1 : -1);
  for (const auto& [c, f] : t) {
    std::vector<int> tuple = ring_solve(R, f, v, n);
    GRElem coeff = gr_scale(sgn * c, gr_unit(R, ring_det(R, f, n)));
    auto it = acc.find(tuple);
    if (it == acc.end()) acc.emplace(std::move(tuple), std::move(coeff));
    else it->second = gr_add(it->second, coeff);
  }
  for (auto& [tuple, coeff] : acc)
    if (!coeff.is_zero()) out.terms.push_back({std::move(coeff), tuple});
  out.detail = json{{"support", t.size()}, {"terms", out.terms.size()}};
  return out;
}

SymbolReduction reduce_to_symbols(const SnModule& X, const SVec& z) {
  const LocalRing& R = *X.ring;
  if (X.n == 0) {
    SymbolReduction out;
    out.n = 0;
    out.terms.push_back({units_to_gr(R, z), {}});
    out.verified = true;
    return out;
  }
  SymbolReduction out = reduce_terms(R, X.n, X.terms_of(z));
  SVec back;
  for (const auto& [coeff, tuple] : out.terms)
    back = svec_add(back, X.act_gr(coeff, X.symbol_cycle(tuple)));
  out.verified = X.class_eq(back, z);
  return out;
}

SVec t_of_terms(const LocalRing& R, int n, const std::vector<SymbolTerm>& terms) {
  const TensModule& K = khat_n(R, n);
  SVec acc;
  for (const auto& [coeff, tuple] : terms)
    acc = svec_add(acc, K.act_gr(coeff, K.word(tuple)));
  return acc;
}

SVec t_map(const SnModule& X, const SVec& z) {
  SymbolReduction red = reduce_to_symbols(X, z);
  if (X.n > 0 && !red.verified)
    throw mwkt_error("IllFormedHom", "symbol reduction failed verification");
  return t_of_terms(*X.ring, X.n, red.terms);
}

json t_map_certificate(const LocalRing& R, int n) {
  if (n < 1) throw mwkt_error("MalformedSpec", "certificate needs degree ≥ 1");
  const TensModule& K = khat_n(R, n);
  const long U = static_cast<long>(R.units.size());

  // ε powers ε^{1+n} … ε^{n+n}
  std::vector<GRElem> eps_pow(2 * n + 1, gr_int(R, 1));
  for (int m = 1; m <= 2 * n; ++m) eps_pow[m] = gr_mul(eps_pow[m - 1], gr_eps(R));

  // admissible λ tuples: pairwise distinct residues
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

  long cnt = 1;
  for (int i = 0; i < n; ++i) cnt *= U;
  long instances = 0;
  bool relations_zero = true;
  std::vector<int> a(n);
  for (long t = 0; t < cnt; ++t) {
    long w = t;
    for (int i = n - 1; i >= 0; --i) {
      a[i] = R.units[w % U];
      w /= U;
    }
    for (const auto& lam : lambdas) {
      std::vector<SymbolTerm> terms;
      std::vector<int> la(n);
      for (int i = 0; i < n; ++i) la[i] = R.mul(lam[i], a[i]);
      terms.push_back({gr_int(R, 1), la});
      terms.push_back({gr_int(R, -1), a});
      for (int i = 0; i < n; ++i) {
        std::vector<int> tuple;
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          tuple.push_back(R.mul(R.sub(lam[j], lam[i]), a[j]));
        }
        tuple.push_back(lam[i]);
        terms.push_back({gr_neg(gr_mul(eps_pow[i + 1 + n], gr_unit(R, a[i]))), tuple});
      }
      ++instances;
      if (!K.grp.coords_zero(t_of_terms(R, n, terms))) relations_zero = false;
    }
  }

  // multiplicativity through the reduction formula: [a]·[b] block cycles
  long product_samples = 0;
  bool products_match = true;
  long annihilation_samples = 0;
  bool annihilation_zero = true;
  if (n == 2) {
    const TensModule& K1 = khat_n(R, 1);
    const TensModule& K3 = khat_n(R, 3);
    CycleTerms one_one = symbol_terms(R, {R.neg(R.one()), R.one()});
    for (int ai = 0; ai < U; ++ai)
      for (int bi = 0; bi < U; ++bi) {
        int av = R.units[ai], bv = R.units[bi];
        CycleTerms xa = symbol_terms(R, {av});
        CycleTerms xb = symbol_terms(R, {bv});
        CycleTerms prod = sn_product_terms(R, 1, xa, 1, xb);
        SymbolReduction red = reduce_terms(R, 2, prod);
        SVec lhs = t_of_terms(R, 2, red.terms);
        SVec rhs = tens_mul(K1, K1.word({av}), K1, K1.word({bv}), K);
        ++product_samples;
        if (!K.grp.coords_zero(svec_add(lhs, svec_neg(rhs)))) products_match = false;
      }
    for (int ai = 0; ai < U; ++ai) {
      CycleTerms xa = symbol_terms(R, {R.units[ai]});
      for (bool left : {true, false}) {
        CycleTerms prod = left ? sn_product_terms(R, 2, one_one, 1, xa)
                               : sn_product_terms(R, 1, xa, 2, one_one);
        SymbolReduction red = reduce_terms(R, 3, prod);
        ++annihilation_samples;
        if (!K3.grp.coords_zero(t_of_terms(R, 3, red.terms))) annihilation_zero = false;
      }
    }
  }

  return json{{"ring", R.spec},
              {"degree", n},
              {"relation_instances", instances},
              {"relations_map_to_zero", relations_zero},
              {"product_samples", product_samples},
              {"products_match", products_match},
              {"annihilation_samples", annihilation_samples},
              {"annihilation_zero", annihilation_zero}};
}

// ---------------------------------------------------------------------------
// β

BetaReport beta(const LocalRing& R, int lambda, bool want_class) {
  BetaReport B;
  B.ring = &R;
  B.lambda = lambda;
  if (!R.is_unit(lambda) || R.residue(lambda) == R.residue(R.one()) ||
      !R.is_unit(R.sub(R.one(), lambda)))
    throw mwkt_error("BadLambda", R.spec + ": residue of λ must avoid 0 and 1");

  const int one = R.one();
  const int oml = R.sub(one, lambda);
  const int ngl = R.neg(lambda);
  const std::vector<std::pair<int, std::vector<int>>> six = {
      {+1, {one, oml, lambda}}, {-1, {one, oml, one}}, {+1, {one, ngl, one}},
      {-1, {oml, lambda, one}}, {+1, {oml, one, one}}, {-1, {ngl, one, one}}};

  std::map<std::vector<int>, Int> acc;
  json tuples = json::array();
  for (const auto& [s, tuple] : six) {
    tuples.push_back(json{{"sign", s}, {"tuple", tuple}});
    for (const auto& [c, f] : symbol_terms(R, tuple)) acc[f] += s * c;
  }
  for (auto& [f, c] : acc)
    if (c != 0) B.cycle.push_back({c, f});

  GRElem det = gr_zero(R);
  for (const auto& [c, f] : B.cycle)
    det = gr_add(det, gr_scale(c, gr_unit(R, ring_det(R, f, 3))));
  B.det = det;

  if (want_class) {
    const SnModule& S3 = s_module(R, 3);  // TooLarge above the cap
    B.class_coords = S3.class_coords(S3.vec_of(B.cycle));
    B.has_class = true;
  }
  B.detail = json{{"ring", R.spec},
                  {"lambda", lambda},
                  {"terms", tuples},
                  {"support", B.cycle.size()},
                  {"det", det.str()},
                  {"det_zero", det.is_zero()}};
  return B;
}

}  // namespace mwkt
