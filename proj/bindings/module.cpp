// Python surface: thin wrappers returning plain dicts/lists; exact integers
// arrive as Python ints (GMP values are converted through decimal strings).
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mwkt/gp.hpp"
#include "mwkt/gw.hpp"
#include "mwkt/kmw.hpp"
#include "mwkt/suites.hpp"

namespace py = pybind11;
using mwkt::json;

namespace {

py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null:
      return py::none();
    case json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case json::value_t::number_float:
      return py::float_(j.get<double>());
    case json::value_t::string:
      return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list l;
      for (const auto& e : j) l.append(to_py(e));
      return l;
    }
    case json::value_t::object: {
      py::dict d;
      for (auto it = j.begin(); it != j.end(); ++it)
        d[py::str(it.key())] = to_py(it.value());
      return d;
    }
    default:
      return py::none();
  }
}

py::object structure_of(const mwkt::FpGroup& g) { return to_py(g.structure_json()); }

py::object suite_report_py(const mwkt::SuiteReport& r) {
  json j = r.to_json();
  j["seconds"] = r.seconds;  // timing is advisory; canonical JSON omits it
  return to_py(j);
}

}  // namespace

PYBIND11_MODULE(_mwkt, m) {
  m.doc() =
      "exact presentations of Grothendieck-Witt rings, Milnor-Witt K-groups, "
      "and general-position symbol modules over finite commutative local rings";

  static py::exception<mwkt::mwkt_error> exc(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const mwkt::mwkt_error& e) {
      std::string msg = e.code + ": " + e.what();
      if (!e.cap.empty()) msg += " [cap: " + e.cap + "]";
      exc(msg.c_str());
    }
  });

  m.def("ring_info",
        [](const std::string& spec) { return to_py(mwkt::parse_ring_spec(spec).info_json()); },
        py::arg("ring"));

  m.def("gw",
        [](const std::string& spec) {
          const mwkt::GwRing& G = mwkt::gw_ring(mwkt::parse_ring_spec(spec));
          py::dict d;
          d["structure"] = structure_of(G.grp);
          d["cert"] = to_py(G.cert);
          return d;
        },
        py::arg("ring"));

  m.def("km",
        [](const std::string& spec, int n) {
          return structure_of(mwkt::milnor_k(mwkt::parse_ring_spec(spec), n).grp);
        },
        py::arg("ring"), py::arg("degree"));

  m.def("kmw",
        [](const std::string& spec, int n) {
          return structure_of(mwkt::kmw_n(mwkt::parse_ring_spec(spec), n).grp);
        },
        py::arg("ring"), py::arg("degree"));

  m.def("khat",
        [](const std::string& spec, int n) {
          return structure_of(mwkt::khat_n(mwkt::parse_ring_spec(spec), n).grp);
        },
        py::arg("ring"), py::arg("degree"));

  m.def("vmod",
        [](const std::string& spec) {
          return structure_of(mwkt::v_module(mwkt::parse_ring_spec(spec)).grp);
        },
        py::arg("ring"));

  m.def("witt",
        [](const std::string& spec, int n_max) {
          return to_py(mwkt::witt_tower(mwkt::parse_ring_spec(spec), n_max).info_json());
        },
        py::arg("ring"), py::arg("n_max") = 4);

  m.def("khat_to_kmw",
        [](const std::string& spec, int n) {
          mwkt::HomReport h = mwkt::khat_to_kmw_report(mwkt::parse_ring_spec(spec), n);
          py::dict d;
          d["well_defined"] = h.well_defined;
          d["injective"] = h.injective;
          d["surjective"] = h.surjective;
          return d;
        },
        py::arg("ring"), py::arg("degree"));

  m.def("fiber",
        [](const std::string& spec, int n) {
          mwkt::FiberModel F = mwkt::fiber_model(mwkt::parse_ring_spec(spec), n);
          py::dict d;
          d["pullback_structure"] = structure_of(F.P.grp);
          d["comparison_iso"] = F.comparison.is_iso();
          d["detail"] = to_py(F.detail);
          return d;
        },
        py::arg("ring"), py::arg("degree"));

  m.def("complex_homology",
        [](const std::string& spec, int n, int i, bool tilde) {
          return structure_of(
              mwkt::complex_homology(mwkt::parse_ring_spec(spec), n, i, tilde).grp);
        },
        py::arg("ring"), py::arg("n"), py::arg("i"), py::arg("tilde") = false);

  m.def("smodule",
        [](const std::string& spec, int n) {
          const mwkt::SnModule& S = mwkt::s_module(mwkt::parse_ring_spec(spec), n);
          py::dict d;
          d["structure"] = structure_of(S.S.grp);
          d["cert"] = to_py(S.cert);
          return d;
        },
        py::arg("ring"), py::arg("degree"));

  m.def("suite_names", [] { return mwkt::suite_names(); });

  m.def("verify",
        [](const std::vector<std::string>& suites, const std::vector<std::string>& rings,
           int degree, int max_eta, bool heavy, int jobs) {
          mwkt::SuiteOptions opt;
          opt.rings = rings;
          opt.degree = degree;
          if (max_eta >= 0) opt.max_eta = max_eta;
          opt.heavy = heavy;
          py::list out;
          for (const auto& r : mwkt::run_suites(suites, opt, jobs))
            out.append(suite_report_py(r));
          return out;
        },
        py::arg("suites") = std::vector<std::string>{},
        py::arg("rings") = std::vector<std::string>{}, py::arg("degree") = -1,
        py::arg("max_eta") = -1, py::arg("heavy") = false, py::arg("jobs") = 1);
}
