#include "mwkt/groupring.hpp"

#include <algorithm>

namespace mwkt {

namespace {

void require_unit(const LocalRing& R, int a) {
  if (a < 0 || a >= R.size || !R.is_unit(a))
    throw mwkt_error("NotAUnit", R.spec + ": " + std::to_string(a));
}

void require_same_ring(const GRElem& x, const GRElem& y) {
  if (x.ring != y.ring)
    throw mwkt_error("RingMismatch",
                     x.ring->spec + " vs " + y.ring->spec);
}

void set_coeff(GRElem& x, int key, Int v) {
  if (v == 0)
    x.c.erase(key);
  else
    x.c[key] = std::move(v);
}

}  // namespace

json GRElem::to_json() const {
  json out = json::object();
  for (const auto& [k, v] : c) out[std::to_string(k)] = v.get_str();
  return out;
}

std::string GRElem::str() const {
  if (c.empty()) return "0";
  std::string out;
  for (const auto& [k, v] : c) {
    if (out.empty()) {
      if (v < 0) out += "-";
    } else {
      out += (v < 0) ? " - " : " + ";
    }
    Int a = abs(v);
    if (a != 1) out += a.get_str();
    out += "<" + std::to_string(k) + ">";
  }
  return out;
}

GRElem gr_zero(const LocalRing& R) { return GRElem{&R, {}}; }

GRElem gr_int(const LocalRing& R, const Int& n) {
  GRElem x{&R, {}};
  set_coeff(x, R.one(), n);
  return x;
}

GRElem gr_unit(const LocalRing& R, int a) {
  require_unit(R, a);
  GRElem x{&R, {}};
  x.c[a] = 1;
  return x;
}

GRElem gr_bracket(const LocalRing& R, int a) {
  return gr_sub(gr_unit(R, a), gr_int(R, 1));
}

GRElem gr_h(const LocalRing& R) {
  return gr_add(gr_int(R, 1), gr_unit(R, R.neg(R.one())));
}

GRElem gr_eps(const LocalRing& R) {
  return gr_neg(gr_unit(R, R.neg(R.one())));
}

GRElem gr_add(const GRElem& x, const GRElem& y) {
  require_same_ring(x, y);
  GRElem out = x;
  for (const auto& [k, v] : y.c) {
    auto it = out.c.find(k);
    if (it == out.c.end()) {
      out.c[k] = v;
    } else {
      it->second += v;
      if (it->second == 0) out.c.erase(it);
    }
  }
  return out;
}

GRElem gr_neg(const GRElem& x) {
  GRElem out{x.ring, {}};
  for (const auto& [k, v] : x.c) out.c[k] = -v;
  return out;
}

GRElem gr_sub(const GRElem& x, const GRElem& y) { return gr_add(x, gr_neg(y)); }

GRElem gr_scale(const Int& n, const GRElem& x) {
  GRElem out{x.ring, {}};
  if (n == 0) return out;
  for (const auto& [k, v] : x.c) out.c[k] = n * v;
  return out;
}

GRElem gr_mul(const GRElem& x, const GRElem& y) {
  require_same_ring(x, y);
  GRElem out{x.ring, {}};
  const LocalRing& R = *x.ring;
  for (const auto& [a, u] : x.c)
    for (const auto& [b, v] : y.c) {
      int ab = R.mul(a, b);
      auto it = out.c.find(ab);
      if (it == out.c.end()) {
        out.c[ab] = u * v;
      } else {
        it->second += u * v;
        if (it->second == 0) out.c.erase(it);
      }
    }
  return out;
}

Int gr_augment(const GRElem& x) {
  Int s = 0;
  for (const auto& [k, v] : x.c) s += v;
  return s;
}

bool gr_eq(const GRElem& x, const GRElem& y) {
  require_same_ring(x, y);
  return x.c == y.c;
}

SVec gr_to_units(const GRElem& x) {
  SVec v;
  for (const auto& [a, c] : x.c) v.push_back({x.ring->unit_idx[a], c});
  std::sort(v.begin(), v.end());
  return v;
}

GRElem units_to_gr(const LocalRing& R, const SVec& v) {
  GRElem x{&R, {}};
  for (const auto& [i, c] : v) x.c[R.units[i]] = c;
  return x;
}

SVec gr_to_ibasis(const GRElem& x) {
  if (gr_augment(x) != 0)
    throw mwkt_error("IllFormedHom", "element is not in the augmentation ideal");
  SVec v;
  for (const auto& [a, c] : x.c) {
    int i = x.ring->unit_idx[a];
    if (i > 0) v.push_back({i - 1, c});
  }
  std::sort(v.begin(), v.end());
  return v;
}

GRElem ibasis_to_gr(const LocalRing& R, const SVec& v) {
  GRElem x = gr_zero(R);
  for (const auto& [i, c] : v)
    x = gr_add(x, gr_scale(c, gr_bracket(R, R.units[i + 1])));
  return x;
}

GRElem s_element(const LocalRing& R, int m, long t,
                 const std::vector<int>& witness) {
  if (m <= 0 || static_cast<int>(witness.size()) != m)
    throw mwkt_error("BadWitness", "witness length != m");
  for (int w : witness) require_unit(R, w);
  GRElem out{&R, {}};
  for (int mask = 1; mask < (1 << m); ++mask) {
    int s = 0, bits = 0;
    for (int i = 0; i < m; ++i)
      if (mask & (1 << i)) {
        s = R.add(s, witness[i]);
        ++bits;
      }
    if (!R.is_unit(s))
      throw mwkt_error("BadWitness",
                       "partial sum " + std::to_string(s) + " is not a unit");
    int st = (t >= 0) ? R.pow(s, t) : R.pow(R.inv(s), -t);
    Int sign = (bits % 2 == 0) ? -1 : 1;  // −(−1)^{|J|}
    auto it = out.c.find(st);
    if (it == out.c.end()) {
      out.c[st] = sign;
    } else {
      it->second += sign;
      if (it->second == 0) out.c.erase(it);
    }
  }
  return out;
}

namespace {

// adjacent-transposition permutation of flat tensor indices; digits are
// big-endian positions of the k-tuple in base d.
long swap_positions(long j, int s, int d, int k) {
  std::vector<int> dig(k);
  for (int l = k - 1; l >= 0; --l) {
    dig[l] = static_cast<int>(j % d);
    j /= d;
  }
  std::swap(dig[s], dig[s + 1]);
  long out = 0;
  for (int l = 0; l < k; ++l) out = out * d + dig[l];
  return out;
}

}  // namespace

VkSpace vk_space(const LocalRing& R, int k) {
  if (k <= 0) throw mwkt_error("MalformedSpec", "k must be positive");
  VkSpace V;
  V.ring = &R;
  V.k = k;
  V.d = R.add_rank;
  V.q = 1;
  for (int i = 0; i < R.add_exp; ++i) V.q *= R.p;
  V.N = 1;
  for (int i = 0; i < k; ++i) {
    V.N *= V.d;
    if (V.N > 512)
      throw mwkt_error("TooLarge", "tensor power rank exceeds 512",
                       "tensor-rank-cap");
  }
  int N = static_cast<int>(V.N);
  std::vector<SVec> L;
  if (k == 1 || V.d == 1) {
    // every vector is invariant
    L.reserve(N);
    for (int i = 0; i < N; ++i) L.push_back({{i, Int(1)}});
  } else {
    // invariance ⟺ x·(P_σ − I) ≡ 0 mod q for adjacent transpositions σ
    std::vector<SVec> B(N);
    for (int s = 0; s + 1 < k; ++s)
      for (long i = 0; i < N; ++i) {
        long si = swap_positions(i, s, V.d, k);
        if (si == i) continue;
        SVec row = {{static_cast<int>(s) * N + static_cast<int>(si), Int(1)},
                    {static_cast<int>(s) * N + static_cast<int>(i), Int(-1)}};
        std::sort(row.begin(), row.end());
        B[i] = svec_add(B[i], row);
      }
    std::vector<SVec> qrows;
    int M = (k - 1) * N;
    qrows.reserve(M);
    for (int j = 0; j < M; ++j) qrows.push_back({{j, Int(V.q)}});
    Echelon tgt = hnf_rows(qrows, M);
    L = preimage_lattice(B, N, tgt);
  }
  std::vector<SVec> qid;
  qid.reserve(N);
  for (int j = 0; j < N; ++j) qid.push_back({{j, Int(V.q)}});
  V.lq = lattice_quotient(L, qid, N);
  return V;
}

std::vector<Int> vk_image(const VkSpace& V, const GRElem& x) {
  if (x.ring != V.ring)
    throw mwkt_error("RingMismatch", x.ring->spec + " vs " + V.ring->spec);
  const LocalRing& R = *V.ring;
  int N = static_cast<int>(V.N);
  std::vector<Int> dense(N, 0);
  for (const auto& [a, cv] : x.c) {
    std::vector<int> co = R.add_coords(a);
    for (long j = 0; j < N; ++j) {
      long jj = j;
      Int prod = 1;
      for (int l = 0; l < V.k; ++l) {
        prod *= co[jj % V.d];
        jj /= V.d;
      }
      if (prod != 0) dense[static_cast<int>(j)] += cv * prod;
    }
  }
  SVec v;
  for (int j = 0; j < N; ++j)
    if (dense[j] != 0) v.push_back({j, dense[j]});
  auto sol = V.lq.LB.solve(v);
  if (!sol)
    throw mwkt_error("IllFormedHom", "tensor image escapes the invariant lattice");
  SVec s;
  for (size_t i = 0; i < sol->size(); ++i)
    if ((*sol)[i] != 0) s.push_back({static_cast<int>(i), (*sol)[i]});
  return V.lq.grp.coords(s);
}

bool vk_image_is_zero(const VkSpace& V, const GRElem& x) {
  auto co = vk_image(V, x);
  for (const Int& v : co)
    if (v != 0) return false;
  return true;
}

}  // namespace mwkt
