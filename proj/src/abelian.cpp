#include "mwkt/abelian.hpp"

#include <algorithm>
#include <set>

namespace mwkt {

Int FpGroup::order() const {
  if (q.free_rank > 0) return 0;
  Int o = 1;
  for (const Int& d : q.invariant_factors) o *= d;
  return o;
}

std::vector<Int> FpGroup::coords(const SVec& x) const {
  std::vector<Int> out;
  out.reserve(q.coords.size());
  for (const auto& cf : q.coords) {
    Int acc = 0;
    for (const auto& [c, v] : x) acc += v * cf.f[c];
    if (cf.modulus != 0) {
      Int r;
      mpz_fdiv_r(r.get_mpz_t(), acc.get_mpz_t(), cf.modulus.get_mpz_t());
      out.push_back(std::move(r));
    } else {
      out.push_back(std::move(acc));
    }
  }
  return out;
}

bool FpGroup::coords_zero(const SVec& x) const {
  if (ll_ok) {
    for (size_t t = 0; t < coord_ll.size(); ++t) {
      __int128 acc = 0;
      bool fit = true;
      for (const auto& [c, v] : x) {
        if (!v.fits_slong_p()) {
          fit = false;
          break;
        }
        acc += static_cast<__int128>(v.get_si()) * coord_ll[t][c];
      }
      if (!fit) goto slow;
      long long m = coord_mod_ll[t];
      if (m != 0) {
        if (acc % m != 0) return false;
      } else if (acc != 0) {
        return false;
      }
    }
    return true;
  }
slow:
  for (const Int& c : coords(x))
    if (c != 0) return false;
  return true;
}

json FpGroup::structure_json() const {
  json f = json::array();
  for (const Int& d : q.invariant_factors) {
    if (d.fits_slong_p())
      f.push_back(d.get_si());
    else
      f.push_back(d.get_str());
  }
  return json{{"free_rank", q.free_rank}, {"invariant_factors", f}};
}

std::string FpGroup::structure_str() const {
  if (is_zero_group()) return "0";
  std::string s;
  if (q.free_rank == 1) s = "Z";
  if (q.free_rank > 1) s = "Z^" + std::to_string(q.free_rank);
  for (const Int& d : q.invariant_factors) {
    if (!s.empty()) s += " + ";
    s += "Z/" + d.get_str();
  }
  return s;
}

FpGroup fp_group(int gens, std::vector<SVec> rel, bool want_coords) {
  FpGroup g;
  g.gens = gens;
  // dedupe relation rows (they arrive in bulk from symmetric constructions).
  std::sort(rel.begin(), rel.end());
  rel.erase(std::unique(rel.begin(), rel.end()), rel.end());
  if (!rel.empty() && rel.front().empty()) rel.erase(rel.begin());
  g.rel = rel;
  g.H = hnf_rows(std::move(rel), gens);
  g.q = quotient_structure(g.H, want_coords);
  if (want_coords) {
    g.ll_ok = true;
    for (const auto& cf : g.q.coords) {
      std::vector<long long> f(gens);
      for (int c = 0; c < gens; ++c) {
        if (!cf.f[c].fits_slong_p() || std::abs(cf.f[c].get_si()) > (1ll << 40)) {
          g.ll_ok = false;
          break;
        }
        f[c] = cf.f[c].get_si();
      }
      if (!g.ll_ok) break;
      if (cf.modulus != 0 && !cf.modulus.fits_slong_p()) {
        g.ll_ok = false;
        break;
      }
      g.coord_ll.push_back(std::move(f));
      g.coord_mod_ll.push_back(cf.modulus.fits_slong_p() ? cf.modulus.get_si() : 0);
    }
    if (!g.ll_ok) {
      g.coord_ll.clear();
      g.coord_mod_ll.clear();
    }
  }
  return g;
}

SVec FpHom::apply(const SVec& x) const {
  SVec acc;
  for (const auto& [c, v] : x) acc = svec_axpy(acc, v, mat[c]);
  return acc;
}

bool FpHom::is_ambient_identity() const {
  if (src->gens != tgt->gens) return false;
  for (int i = 0; i < src->gens; ++i) {
    if (mat[i].size() != 1 || mat[i][0].first != i || mat[i][0].second != 1) return false;
  }
  return true;
}

HomReport analyze_hom(const FpHom& f) {
  HomReport r;
  json cert;
  // well-definedness: every source relation must die in the target.
  std::vector<std::string> bad;
  for (const auto& rel : f.src->rel) {
    if (!f.tgt->is_zero(f.apply(rel))) bad.push_back(svec_str(rel));
  }
  r.well_defined = bad.empty();
  cert["well_defined"] = r.well_defined;
  if (!bad.empty()) {
    cert["violating_relations"] = json(std::vector<std::string>(
        bad.begin(), bad.begin() + std::min<size_t>(bad.size(), 5)));
    r.certificate = cert;
    return r;
  }

  if (f.is_ambient_identity()) {
    // same ambient: iso <=> equal relation lattices, decided by mutual reduction.
    bool fwd = f.tgt->H.contains_all(f.src->H.rows);  // follows from well-definedness
    bool bwd = f.src->H.contains_all(f.tgt->H.rows);
    r.injective = bwd && fwd;
    r.surjective = true;  // identity on ambient generators
    cert["method"] = "lattice-equality";
    cert["src_lattice_in_tgt"] = fwd;
    cert["tgt_lattice_in_src"] = bwd;
    cert["src_structure"] = f.src->structure_json();
    cert["tgt_structure"] = f.tgt->structure_json();
    r.certificate = cert;
    return r;
  }

  cert["method"] = "kernel-cokernel";
  // surjectivity: cokernel = target / (target relations + image rows).
  {
    std::vector<SVec> rows = f.tgt->rel;
    for (const auto& m : f.mat) rows.push_back(m);
    FpGroup coker = fp_group(f.tgt->gens, std::move(rows), false);
    r.surjective = coker.is_zero_group();
    cert["cokernel"] = coker.structure_json();
  }
  // injectivity: the preimage lattice of the target relation lattice must be
  // contained in the source relation lattice.
  {
    std::vector<SVec> K = preimage_lattice(f.mat, f.src->gens, f.tgt->H);
    bool inj = true;
    json wit = json::array();
    for (const auto& k : K) {
      if (!f.src->is_zero(k)) {
        inj = false;
        if (wit.size() < 5) wit.push_back(svec_str(k));
      }
    }
    r.injective = inj;
    cert["kernel_generators"] = static_cast<long>(K.size());
    if (!inj) {
      cert["kernel_witnesses"] = wit;
      LatticeQuotient kq = lattice_quotient(K, f.src->H.rows, f.src->gens);
      cert["kernel_structure"] = kq.grp.structure_json();
    }
  }
  r.certificate = cert;
  return r;
}

bool is_isomorphism(const FpHom& f, json* certificate) {
  HomReport r = analyze_hom(f);
  if (certificate) *certificate = r.certificate;
  if (!r.well_defined)
    throw mwkt_error("IllFormedHom",
                     "homomorphism does not kill source relations: " +
                         r.certificate["violating_relations"].dump());
  return r.is_iso();
}

std::vector<SVec> preimage_lattice(const std::vector<SVec>& mat, int src_dim,
                                   const Echelon& tgt_lattice) {
  // rows [mat | I] and [tgt relations | 0]; zero main parts yield x with
  // x*mat in the target lattice.
  std::vector<SVec> rows;
  std::vector<SVec> track;
  rows.reserve(mat.size() + tgt_lattice.rows.size());
  for (size_t i = 0; i < mat.size(); ++i) {
    rows.push_back(mat[i]);
    track.push_back(SVec{{static_cast<int>(i), Int(1)}});
  }
  for (const auto& t : tgt_lattice.rows) {
    rows.push_back(t);
    track.push_back(SVec{});
  }
  std::vector<SVec> zeros;
  hnf_rows(std::move(rows), tgt_lattice.cols, &track, &zeros);
  Echelon K = hnf_rows(std::move(zeros), src_dim);
  K.canonicalize();
  return K.rows;
}

LatticeQuotient lattice_quotient(const std::vector<SVec>& Lgens,
                                 const std::vector<SVec>& Mgens, int cols) {
  LatticeQuotient out;
  out.LB = hnf_rows(Lgens, cols);
  std::vector<SVec> rel;
  rel.reserve(Mgens.size());
  for (const auto& m : Mgens) {
    auto c = out.LB.solve(m);
    if (!c) throw mwkt_error("IllFormedHom", "lattice_quotient: M is not contained in L");
    std::vector<std::pair<int, Int>> e;
    for (size_t i = 0; i < c->size(); ++i)
      if ((*c)[i] != 0) e.emplace_back(static_cast<int>(i), (*c)[i]);
    rel.push_back(svec_make(std::move(e)));
  }
  out.grp = fp_group(out.LB.rank(), std::move(rel), true);
  return out;
}

ExactnessReport exactness_at(const FpHom& f, const FpHom& g) {
  // im(f) + rel(mid)  vs  {x : g(x) ∈ rel(tgt)}; homology = ker/im.
  ExactnessReport rep;
  std::vector<SVec> im = f.mat;
  for (const auto& r : f.tgt->rel) im.push_back(r);
  std::vector<SVec> ker = preimage_lattice(g.mat, g.src->gens, g.tgt->H);
  Echelon imB = hnf_rows(im, f.tgt->gens);
  bool im_in_ker = true;
  {
    Echelon kerB = hnf_rows(ker, g.src->gens);
    for (const auto& r : imB.rows)
      if (!kerB.contains(r)) {
        im_in_ker = false;
        break;
      }
  }
  LatticeQuotient h = lattice_quotient(ker, im_in_ker ? im : ker, g.src->gens);
  rep.exact = im_in_ker && h.grp.is_zero_group();
  rep.detail = json{{"im_contained_in_ker", im_in_ker},
                    {"homology", im_in_ker ? h.grp.structure_json()
                                           : json{{"free_rank", nullptr}}}};
  return rep;
}

}  // namespace mwkt
