// mwkt — exact presentations of GW rings, Milnor–Witt K-groups, and
// general-position symbol modules over finite commutative local rings.
//
// Exit codes: 0 success (and no failing check), 1 failing check or error,
// 2 usage error, 3 resource cap exceeded (the cap is named on stderr).

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mwkt/gp.hpp"
#include "mwkt/gw.hpp"
#include "mwkt/kmw.hpp"
#include "mwkt/suites.hpp"

namespace {

using mwkt::json;

// content-addressed immutable cache of emitted JSON documents
void cache_json(const json& j) {
  const char* env = std::getenv("MWKT_CACHE");
  std::filesystem::path dir = (env && *env) ? env : ".mwkt-cache";
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return;
  std::string body = j.dump();
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.json",
                static_cast<unsigned long long>(
                    mwkt::fnv1a64(body.data(), body.size())));
  std::filesystem::path file = dir / name;
  if (std::filesystem::exists(file, ec)) return;  // entries are immutable
  std::ofstream out(file);
  out << body << "\n";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void print_json(const json& j) {
  std::cout << j.dump() << "\n";
  cache_json(j);
}

struct Common {
  std::vector<std::string> rings;
  int degree = -1;
  int max_eta = -1;
  bool heavy = false;
  bool as_json = false;
  bool as_csv = false;
  int jobs = 1;
};

void add_common(CLI::App* cmd, Common& c, bool ring_required) {
  auto* r = cmd->add_option("--ring", c.rings,
                            "ring spec, e.g. F5, F9, Z/25, F5[t]/t^2 (repeatable)");
  if (ring_required) r->required();
  cmd->add_option("--degree", c.degree, "degree / tower depth");
  cmd->add_option("--max-eta", c.max_eta, "eta-truncation level");
  cmd->add_flag("--heavy", c.heavy, "enable heavy (opt-in) computations");
  cmd->add_flag("--json", c.as_json, "emit JSON");
  cmd->add_flag("--csv", c.as_csv, "emit CSV");
  cmd->add_option("--jobs", c.jobs, "suite concurrency")->check(CLI::Range(1, 64));
}

int deg_or(const Common& c, int def) { return c.degree >= 0 ? c.degree : def; }

// one structure-style report per ring; single ring prints one object
int emit_per_ring(const Common& c,
                  const std::function<json(const mwkt::LocalRing&)>& make,
                  const std::function<std::string(const mwkt::LocalRing&, const json&)>& text) {
  json arr = json::array();
  for (const auto& rs : c.rings) {
    const mwkt::LocalRing& R = mwkt::parse_ring_spec(rs);
    arr.push_back(make(R));
  }
  if (c.as_json) {
    print_json(arr.size() == 1 ? arr[0] : arr);
  } else {
    for (size_t i = 0; i < arr.size(); ++i)
      std::cout << text(mwkt::parse_ring_spec(c.rings[i]), arr[i]);
  }
  return 0;
}

int run_verify(const std::vector<std::string>& names_in, const Common& c) {
  std::vector<std::string> names;
  for (const auto& n : names_in)
    if (n != "all") names.push_back(n);
  mwkt::SuiteOptions opt;
  opt.rings = c.rings;
  opt.degree = c.degree;
  if (c.max_eta >= 0) opt.max_eta = c.max_eta;
  opt.heavy = c.heavy;
  std::vector<mwkt::SuiteReport> reps = mwkt::run_suites(names, opt, c.jobs);

  long fails = 0;
  for (const auto& r : reps) fails += r.count("fail");

  if (c.as_json) {
    json arr = json::array();
    for (const auto& r : reps) {
      json j = r.to_json();
      cache_json(j);
      arr.push_back(std::move(j));
    }
    std::cout << arr.dump() << "\n";
  } else if (c.as_csv) {
    std::cout << "suite,ring,check,verdict,instances,note\n";
    for (const auto& r : reps) {
      cache_json(r.to_json());
      for (const auto& ch : r.checks)
        std::cout << csv_field(r.suite) << "," << csv_field(ch.ring) << ","
                  << csv_field(ch.name) << "," << csv_field(ch.verdict) << ","
                  << ch.instances << "," << csv_field(ch.note) << "\n";
    }
  } else {
    long pass = 0, finding = 0, skipped = 0;
    for (const auto& r : reps) {
      cache_json(r.to_json());
      std::cout << r.text() << "\n";
      pass += r.count("pass");
      finding += r.count("finding");
      skipped += r.count("skipped");
    }
    std::cout << reps.size() << " suites: " << pass << " pass, " << fails
              << " fail, " << finding << " finding, " << skipped << " skipped\n";
  }
  return fails ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact presentations of Grothendieck-Witt rings, Milnor-Witt K-groups, "
      "and general-position symbol modules over finite commutative local rings"};
  app.require_subcommand(1);

  Common c;

  auto* ring_cmd = app.add_subcommand("ring", "ring inspection");
  ring_cmd->require_subcommand(1);
  auto* ring_info = ring_cmd->add_subcommand("info", "describe a ring");
  add_common(ring_info, c, true);

  auto* gw_cmd = app.add_subcommand("gw", "Grothendieck-Witt ring");
  add_common(gw_cmd, c, true);
  auto* km_cmd = app.add_subcommand("km", "Milnor K-theory");
  add_common(km_cmd, c, true);
  auto* kmw_cmd = app.add_subcommand("kmw", "Milnor-Witt K-theory");
  add_common(kmw_cmd, c, true);
  auto* khat_cmd = app.add_subcommand("khat", "tensor model of Milnor-Witt K-theory");
  add_common(khat_cmd, c, true);
  auto* vmod_cmd = app.add_subcommand("vmod", "the module V(A)");
  add_common(vmod_cmd, c, true);
  auto* witt_cmd = app.add_subcommand("witt", "Witt ring and fundamental-ideal tower");
  add_common(witt_cmd, c, true);
  auto* fiber_cmd = app.add_subcommand("fiber", "fiber-product model and comparison");
  add_common(fiber_cmd, c, true);

  auto* complex_cmd = app.add_subcommand("complex", "frame complex and homology");
  add_common(complex_cmd, c, true);
  bool tilde = false;
  complex_cmd->add_flag("--tilde", tilde, "general-position variant");

  auto* smod_cmd = app.add_subcommand("smodule", "symbol module S_n");
  add_common(smod_cmd, c, true);

  auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> suite_args;
  verify_cmd->add_option("suite", suite_args, "suite names, or 'all'")->required();
  add_common(verify_cmd, c, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (ring_info->parsed()) {
      return emit_per_ring(
          c, [](const mwkt::LocalRing& R) { return R.info_json(); },
          [](const mwkt::LocalRing& R, const json& j) {
            std::ostringstream os;
            os << R.spec << ": size " << R.size << ", residue field size "
               << R.residue_size() << ", " << R.units.size() << " units, "
               << (R.is_field ? "field" : "local ring") << "\n  "
               << j.dump() << "\n";
            return os.str();
          });
    }
    if (gw_cmd->parsed()) {
      return emit_per_ring(
          c,
          [](const mwkt::LocalRing& R) {
            const mwkt::GwRing& G = mwkt::gw_ring(R);
            return json{{"ring", R.spec},
                        {"structure", G.grp.structure_json()},
                        {"cert", G.cert}};
          },
          [](const mwkt::LocalRing& R, const json&) {
            return "GW(" + R.spec + ") = " + mwkt::gw_ring(R).grp.structure_str() +
                   "\n";
          });
    }
    if (km_cmd->parsed() || kmw_cmd->parsed() || khat_cmd->parsed()) {
      int n = deg_or(c, 1);
      const char* name = km_cmd->parsed() ? "km" : (kmw_cmd->parsed() ? "kmw" : "khat");
      return emit_per_ring(
          c,
          [&](const mwkt::LocalRing& R) {
            const mwkt::FpGroup& g = km_cmd->parsed()
                                         ? mwkt::milnor_k(R, n).grp
                                         : (kmw_cmd->parsed() ? mwkt::kmw_n(R, n).grp
                                                              : mwkt::khat_n(R, n).grp);
            json j{{"ring", R.spec},
                   {"degree", n},
                   {"structure", g.structure_json()}};
            if (kmw_cmd->parsed() && c.max_eta >= 0) {
              const mwkt::TildeKmw& t = mwkt::tilde_kmw_truncated(R, n, c.max_eta);
              j["tilde"] = json{{"M", t.M},
                                {"structure", t.grp.structure_json()},
                                {"cert", t.cert}};
            }
            return j;
          },
          [&](const mwkt::LocalRing& R, const json&) {
            const mwkt::FpGroup& g =
                km_cmd->parsed() ? mwkt::milnor_k(R, n).grp
                                 : (kmw_cmd->parsed() ? mwkt::kmw_n(R, n).grp
                                                      : mwkt::khat_n(R, n).grp);
            std::ostringstream os;
            os << name << "_" << n << "(" << R.spec << ") = " << g.structure_str()
               << "\n";
            return os.str();
          });
    }
    if (vmod_cmd->parsed()) {
      return emit_per_ring(
          c,
          [](const mwkt::LocalRing& R) {
            const mwkt::VModule& V = mwkt::v_module(R);
            return json{{"ring", R.spec},
                        {"structure", V.grp.structure_json()},
                        {"cert", V.cert}};
          },
          [](const mwkt::LocalRing& R, const json&) {
            return "V(" + R.spec + ") = " + mwkt::v_module(R).grp.structure_str() +
                   "\n";
          });
    }
    if (witt_cmd->parsed()) {
      int n = deg_or(c, 4);
      return emit_per_ring(
          c,
          [&](const mwkt::LocalRing& R) {
            return mwkt::witt_tower(R, n).info_json();
          },
          [&](const mwkt::LocalRing& R, const json& j) {
            return "W(" + R.spec + ") tower: " + j.dump() + "\n";
          });
    }
    if (fiber_cmd->parsed()) {
      int n = deg_or(c, 1);
      return emit_per_ring(
          c,
          [&](const mwkt::LocalRing& R) {
            mwkt::FiberModel F = mwkt::fiber_model(R, n);
            return json{{"ring", R.spec},
                        {"degree", n},
                        {"pullback_structure", F.P.grp.structure_json()},
                        {"comparison",
                         {{"well_defined", F.comparison.well_defined},
                          {"injective", F.comparison.injective},
                          {"surjective", F.comparison.surjective}}},
                        {"detail", F.detail}};
          },
          [&](const mwkt::LocalRing& R, const json& j) {
            std::ostringstream os;
            os << "fiber model of kmw_" << n << "(" << R.spec << "): pullback "
               << j["pullback_structure"].dump() << ", comparison "
               << (j["comparison"]["well_defined"].get<bool>() &&
                           j["comparison"]["injective"].get<bool>() &&
                           j["comparison"]["surjective"].get<bool>()
                       ? "isomorphism"
                       : "NOT an isomorphism")
               << "\n";
            return os.str();
          });
    }
    if (complex_cmd->parsed()) {
      int n = deg_or(c, 2);
      return emit_per_ring(
          c,
          [&](const mwkt::LocalRing& R) {
            const mwkt::FrameComplex& C =
                mwkt::build_complex(R, n, tilde, tilde ? n + 1 : n);
            json dims = json::array();
            for (int r = 0; r <= C.r_max; ++r) dims.push_back(C.dim(r));
            json hom = json::object();
            int top = tilde ? n : n - 1;
            for (int i = tilde ? 1 : 0; i <= top; ++i)
              hom[std::to_string(i)] =
                  mwkt::complex_homology(R, n, i, tilde).grp.structure_json();
            return json{{"ring", R.spec},
                        {"n", n},
                        {"variant", tilde ? "general-position" : "plain"},
                        {"dims", dims},
                        {"homology", hom}};
          },
          [&](const mwkt::LocalRing& R, const json& j) {
            return j.dump() + "\n";
          });
    }
    if (smod_cmd->parsed()) {
      int n = deg_or(c, 2);
      if (c.as_csv) {
        for (const auto& rs : c.rings) {
          const mwkt::LocalRing& R = mwkt::parse_ring_spec(rs);
          const mwkt::SnModule& S = mwkt::s_module(R, n);
          const long U = static_cast<long>(R.units.size());
          auto tuple_of = [&](long flat) {
            std::vector<int> a(n);
            for (int i = n - 1; i >= 0; --i) {
              a[i] = R.units[flat % U];
              flat /= U;
            }
            return a;
          };
          std::string head;
          for (int i = 1; i <= n; ++i) head += "a_" + std::to_string(i) + ",";
          // symbol table: class coordinates in the computed presentation
          std::cout << head << "class\n";
          for (long f = 0; f < static_cast<long>(S.symbol_table.size()); ++f) {
            auto a = tuple_of(f);
            std::string coords;
            for (size_t i = 0; i < S.symbol_table[f].size(); ++i)
              coords += (i ? " " : "") + S.symbol_table[f][i].get_str();
            for (int x : a) std::cout << x << ",";
            std::cout << csv_field(coords) << "\n";
          }
          std::cout << "\n";
          // det table: the determinant expansion in the unit basis
          std::cout << head << "det\n";
          for (long f = 0; f < static_cast<long>(S.symbol_table.size()); ++f) {
            auto a = tuple_of(f);
            for (int x : a) std::cout << x << ",";
            std::cout << csv_field(
                             mwkt::terms_det(R, n, mwkt::symbol_terms(R, a)).str())
                      << "\n";
          }
        }
        return 0;
      }
      return emit_per_ring(
          c,
          [&](const mwkt::LocalRing& R) {
            const mwkt::SnModule& S = mwkt::s_module(R, n);
            return json{{"ring", R.spec},
                        {"n", n},
                        {"structure", S.S.grp.structure_json()},
                        {"cert", S.cert}};
          },
          [&](const mwkt::LocalRing& R, const json&) {
            return "S_" + std::to_string(n) + "(" + R.spec + ") = " +
                   mwkt::s_module(R, n).S.grp.structure_str() + "\n";
          });
    }
    if (verify_cmd->parsed()) return run_verify(suite_args, c);
  } catch (const mwkt::mwkt_error& e) {
    if (!e.cap.empty()) {
      std::cerr << "resource cap exceeded (" << e.cap << "): " << e.what() << "\n";
      return 3;
    }
    if (e.code == "UnknownSuite" || e.code == "MalformedSpec" ||
        e.code == "NotIrreducible" || e.code == "NotLocal") {
      std::cerr << "usage error (" << e.code << "): " << e.what() << "\n";
      return 2;
    }
    std::cerr << "error (" << e.code << "): " << e.what() << "\n";
    return 1;
  }
  return 0;
}
