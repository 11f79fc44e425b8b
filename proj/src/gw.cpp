#include "mwkt/gw.hpp"

#include <mutex>

namespace mwkt {

namespace {

// ⟨⟨a⟩⟩h as a group-ring element
GRElem pfister_h(const LocalRing& R, int a) {
  return gr_mul(gr_bracket(R, a), gr_h(R));
}

std::recursive_mutex& cache_mutex() {
  static std::recursive_mutex m;
  return m;
}

}  // namespace

SVec GwRing::unit_vec(int a) const {
  return {{ring->unit_idx[a], Int(1)}};
}

SVec GwRing::pfister(int a) const {
  return gr_to_units(gr_bracket(*ring, a));
}

SVec GwRing::h_vec() const { return gr_to_units(gr_h(*ring)); }

SVec GwRing::one_vec() const { return {{0, Int(1)}}; }

SVec GwRing::mul(const SVec& x, const SVec& y) const {
  return gr_to_units(gr_mul(units_to_gr(*ring, x), units_to_gr(*ring, y)));
}

const GwRing& gw_ring(const LocalRing& R) {
  std::lock_guard<std::recursive_mutex> lock(cache_mutex());
  static std::map<std::string, std::unique_ptr<GwRing>> cache;
  auto it = cache.find(R.spec);
  if (it != cache.end()) return *it->second;

  auto gw = std::make_unique<GwRing>();
  gw->ring = &R;
  // ideal generated by ⟨⟨a⟩⟩h and Steinberg products: the ⟨⟨a⟩⟩h family is
  // already ⟨u⟩-closed (⟨u⟩⟨⟨a⟩⟩h = ⟨⟨au⟩⟩h − ⟨⟨u⟩⟩h); the Steinberg family
  // needs explicit unit multiples.
  for (int a : R.units) gw->rel_rows.push_back(gr_to_units(pfister_h(R, a)));
  for (auto [a, b] : steinberg_pairs(R)) {
    GRElem st = gr_mul(gr_bracket(R, a), gr_bracket(R, b));
    for (int u : R.units)
      gw->rel_rows.push_back(gr_to_units(gr_mul(gr_unit(R, u), st)));
  }
  std::vector<SVec> rows = gw->rel_rows;
  gw->grp = fp_group(static_cast<int>(R.units.size()), std::move(rows));

  // certificate: the relation lattice is an ideal (closed under every ⟨u⟩)
  bool ideal_ok = true;
  for (const SVec& r : gw->rel_rows)
    for (int u : R.units)
      if (!gw->grp.is_zero(gw->mul(gw->unit_vec(u), r))) ideal_ok = false;
  gw->cert["ideal_closed"] = ideal_ok;

  // rank–discriminant oracle over odd finite fields: forms are classified by
  // (rank ∈ Z, discriminant class ∈ Z/2); ⟨a⟩ ↦ (1, [a nonsquare]).
  if (R.is_field && R.p != 2) {
    std::vector<char> is_sq(R.size, 0);
    for (int u : R.units) is_sq[R.mul(u, u)] = 1;
    auto chi = [&](int a) { return is_sq[a] ? 0 : 1; };
    FpGroup oracle = fp_group(2, {{{1, Int(2)}}});
    FpHom phi;
    phi.src = &gw->grp;
    phi.tgt = &oracle;
    for (int u : R.units) {
      SVec row = {{0, Int(1)}};
      if (chi(u)) row.push_back({1, Int(1)});
      phi.mat.push_back(row);
    }
    HomReport rep = analyze_hom(phi);
    bool table_ok = true;
    for (int u : R.units)
      for (int v : R.units) {
        // (1,χu)·(1,χv) = (1, χu+χv) must match φ(⟨uv⟩)
        int lhs = (chi(u) + chi(v)) % 2;
        if (lhs != chi(R.mul(u, v))) table_ok = false;
      }
    gw->cert["oracle"] = {{"isomorphism", rep.is_iso()},
                          {"multiplication_matches", table_ok},
                          {"structure", oracle.structure_str()}};
  }
  const GwRing& out = *gw;
  cache[R.spec] = std::move(gw);
  return out;
}

SVec VModule::bracket(int a) const {
  int i = ring->unit_idx[a];
  if (i < 0) throw mwkt_error("NotAUnit", ring->spec + ": " + std::to_string(a));
  if (i == 0) return {};
  return {{i - 1, Int(1)}};
}

SVec VModule::act(const GRElem& s, const SVec& x) const {
  return gr_to_ibasis(gr_mul(s, ibasis_to_gr(*ring, x)));
}

const VModule& v_module(const LocalRing& R) {
  std::lock_guard<std::recursive_mutex> lock(cache_mutex());
  static std::map<std::string, std::unique_ptr<VModule>> cache;
  auto it = cache.find(R.spec);
  if (it != cache.end()) return *it->second;

  auto vm = std::make_unique<VModule>();
  vm->ring = &R;
  for (int a : R.units)
    for (int b : R.units)
      vm->rel_rows.push_back(
          gr_to_ibasis(gr_mul(pfister_h(R, a), gr_bracket(R, b))));
  for (auto [a, b] : steinberg_pairs(R)) {
    GRElem st = gr_mul(gr_bracket(R, a), gr_bracket(R, b));
    for (int u : R.units)
      vm->rel_rows.push_back(gr_to_ibasis(gr_mul(gr_unit(R, u), st)));
  }
  std::vector<SVec> rows = vm->rel_rows;
  vm->grp =
      fp_group(static_cast<int>(R.units.size()) - 1, std::move(rows));

  // action well-defined: every ⟨u⟩·relation stays in the lattice
  bool act_ok = true;
  for (const SVec& r : vm->rel_rows)
    for (int u : R.units)
      if (!vm->grp.is_zero(vm->act(gr_unit(R, u), r))) act_ok = false;
  vm->cert["action_well_defined"] = act_ok;

  // GW-module: the GW relation ideal annihilates V
  bool gwmod_ok = true;
  const GwRing& gw = gw_ring(R);
  for (const SVec& rho : gw.rel_rows) {
    GRElem s = units_to_gr(R, rho);
    for (size_t i = 1; i < R.units.size(); ++i)
      if (!vm->grp.is_zero(vm->act(s, vm->bracket(R.units[i]))))
        gwmod_ok = false;
  }
  vm->cert["gw_module"] = gwmod_ok;

  const VModule& out = *vm;
  cache[R.spec] = std::move(vm);
  return out;
}

json WittTower::info_json() const {
  json layers = json::array();
  for (int n = 0; n <= n_max; ++n)
    layers.push_back({{"n", n},
                      {"ideal_order", sub[n].grp.order().get_str()},
                      {"layer", layer[n].grp.structure_json()}});
  return json{{"ring", ring->spec},
              {"witt", W.structure_json()},
              {"witt_order", W.order().get_str()},
              {"filtration", layers},
              {"stable_at", stable_at}};
}

WittTower witt_tower(const LocalRing& R, int n_max) {
  const GwRing& gw = gw_ring(R);
  int U = static_cast<int>(R.units.size());
  WittTower T;
  T.ring = &R;
  T.n_max = n_max;

  std::vector<SVec> relW = gw.rel_rows;
  relW.push_back(gw.h_vec());
  Echelon relWE = hnf_rows(relW, U);
  {
    std::vector<SVec> wrows = relW;
    T.W = fp_group(U, std::move(wrows));
  }

  // ideal[0] = full lattice; ideal[n+1] = span{⟨⟨a⟩⟩·b : b basis of ideal[n]}
  // plus the W-relations (an ideal, so the span is the ideal product).
  std::vector<SVec> full;
  for (int i = 0; i < U; ++i) full.push_back({{i, Int(1)}});
  T.ideal.push_back(hnf_rows(full, U));
  for (int n = 0; n <= n_max; ++n) {
    std::vector<SVec> next = relW;
    for (const SVec& b : T.ideal[n].rows)
      for (int a : R.units) {
        SVec prod = gw.mul(gw.pfister(a), b);
        if (!svec_is_zero(prod)) next.push_back(prod);
      }
    T.ideal.push_back(hnf_rows(next, U));
  }
  for (int n = 0; n <= n_max; ++n) {
    T.sub.push_back(lattice_quotient(T.ideal[n].rows, relWE.rows, U));
    T.layer.push_back(
        lattice_quotient(T.ideal[n].rows, T.ideal[n + 1].rows, U));
    if (T.stable_at < 0 &&
        T.ideal[n].contains_all(T.ideal[n + 1].rows) &&
        T.ideal[n + 1].contains_all(T.ideal[n].rows))
      T.stable_at = n;
  }
  return T;
}

}  // namespace mwkt
