// Python bindings for the femtodl core: configuration, coverage geometry,
// per-zone SIR CDFs, tier throughput, shared-access optimization, and the
// Monte Carlo oracle.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "femtodl/errors.hpp"
#include "femtodl/geometry.hpp"
#include "femtodl/montecarlo.hpp"
#include "femtodl/shared_access.hpp"
#include "femtodl/sir.hpp"
#include "femtodl/specfun.hpp"
#include "femtodl/throughput.hpp"
#include "femtodl/validation.hpp"

#include <complex>

namespace py = pybind11;
using namespace femtodl;

namespace {

SystemParams params_from_dict(const py::dict& d) {
    // route through the JSON loader so validation and defaults stay in one place
    std::string json = "{";
    bool first = true;
    for (auto item : d) {
        if (!first) json += ",";
        first = false;
        json += "\"" + py::cast<std::string>(item.first) +
                "\":" + py::cast<std::string>(py::str(item.second));
    }
    json += "}";
    return load_params(json);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Two-tier femtocell downlink analysis (C++ core)";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ZoneUndefinedError>(m, "ZoneUndefinedError", PyExc_ValueError);
    py::register_exception<ModelValidityError>(m, "ModelValidityError", PyExc_ValueError);

    py::enum_<ZoneId>(m, "Zone")
        .value("Fa", ZoneId::Fa)
        .value("Fb", ZoneId::Fb)
        .value("Fi", ZoneId::Fi)
        .value("Fo", ZoneId::Fo)
        .value("MacroOnly", ZoneId::MacroOnly);

    py::enum_<Access>(m, "Access")
        .value("Closed", Access::Closed)
        .value("Open", Access::Open);

    py::enum_<CdfBackend>(m, "Backend")
        .value("Auto", CdfBackend::Auto)
        .value("ClosedForm", CdfBackend::ClosedForm)
        .value("Quadrature", CdfBackend::Quadrature);

    py::class_<SystemParams>(m, "SystemParams")
        .def_readonly("p_macro_mw", &SystemParams::p_macro_mw)
        .def_readonly("p_femto_mw", &SystemParams::p_femto_mw)
        .def_readonly("wall_loss", &SystemParams::wall_loss)
        .def_readonly("alpha", &SystemParams::alpha)
        .def_readonly("beta", &SystemParams::beta)
        .def_readonly("radius_macro_m", &SystemParams::radius_macro_m)
        .def_readonly("radius_indoor_m", &SystemParams::radius_indoor_m)
        .def_readonly("num_femtocells", &SystemParams::n_femto)
        .def_readonly("num_cellular_users", &SystemParams::n_cellular)
        .def_readonly("num_home_users", &SystemParams::n_home)
        .def_readonly("shannon_gap", &SystemParams::shannon_gap)
        .def_readonly("num_mod_levels", &SystemParams::n_mod_levels)
        .def("__repr__", [](const SystemParams& p) {
            return "<SystemParams " + params_metadata(p) + ">";
        });

    py::class_<DerivedConstants>(m, "DerivedConstants")
        .def_readonly("kappa", &DerivedConstants::kappa)
        .def_readonly("density", &DerivedConstants::density)
        .def_readonly("c_alpha", &DerivedConstants::c_alpha)
        .def_readonly("d_th_m", &DerivedConstants::d_th_m)
        .def_readonly("n_f_inner", &DerivedConstants::n_f_inner)
        .def_readonly("n_f_outer", &DerivedConstants::n_f_outer)
        .def_readonly("k_geom", &DerivedConstants::k_geom);

    py::class_<UserCounts>(m, "UserCounts")
        .def_readonly("u_a", &UserCounts::u_a)
        .def_readonly("u_b", &UserCounts::u_b)
        .def_readonly("u_i", &UserCounts::u_i)
        .def_readonly("u_o", &UserCounts::u_o)
        .def_readonly("ubar_b", &UserCounts::ubar_b)
        .def_readonly("ubar_o", &UserCounts::ubar_o);

    m.def("load_params", &params_from_dict, py::arg("config"),
          "Validate a configuration dict (same keys as the JSON config file)");
    m.def("load_params_file", &load_params_file, py::arg("path"));
    m.def("derive_constants", &derive_constants, py::arg("params"));
    m.def("coverage_radius", &coverage_radius, py::arg("params"), py::arg("d_m"));
    m.def("classify_zone", &classify_zone, py::arg("params"), py::arg("d_m"),
          py::arg("r_from_fap_m"), py::arg("indoor"));
    m.def("user_counts", &user_counts, py::arg("params"), py::arg("d_m"));

    py::class_<SirCdf>(m, "SirCdf")
        .def(py::init<const SystemParams&, ZoneId, Access, double, CdfBackend>(),
             py::arg("params"), py::arg("zone"), py::arg("access"), py::arg("d_m"),
             py::arg("backend") = CdfBackend::Auto)
        .def("__call__", &SirCdf::operator(), py::arg("gamma"))
        .def_property_readonly("zone", &SirCdf::zone)
        .def_property_readonly("distance_m", &SirCdf::distance_m);

    m.def("zone_throughput", &zone_throughput, py::arg("params"), py::arg("d_m"),
          py::arg("zone"), py::arg("access") = Access::Closed,
          py::arg("backend") = CdfBackend::Auto);

    py::class_<TierThroughput>(m, "TierThroughput")
        .def_readonly("home_sum", &TierThroughput::home_sum)
        .def_readonly("cellular_sum", &TierThroughput::cellular_sum)
        .def_readonly("cellular_per_user", &TierThroughput::cellular_per_user)
        .def_readonly("rho_b", &TierThroughput::rho_b)
        .def_readonly("rho_o", &TierThroughput::rho_o)
        .def_readonly("rho_i", &TierThroughput::rho_i);

    m.def("tier_throughput_closed", &tier_throughput_closed, py::arg("params"),
          py::arg("d_m"));
    m.def("tier_throughput_open", &tier_throughput_open, py::arg("params"),
          py::arg("d_m"));
    m.def("network_throughput",
          [](const SystemParams& p, double d_m, const std::string& scheme) {
              return network_throughput(p, d_m,
                                        scheme == "open" ? AccessScheme::Open
                                                         : AccessScheme::Closed);
          },
          py::arg("params"), py::arg("d_m"), py::arg("scheme"));

    py::class_<SharedAccessResult>(m, "SharedAccessResult")
        .def_readonly("eta_star", &SharedAccessResult::eta_star)
        .def_readonly("feasible", &SharedAccessResult::feasible)
        .def_readonly("network_throughput", &SharedAccessResult::network_throughput)
        .def_readonly("avg_home", &SharedAccessResult::avg_home)
        .def_readonly("avg_cellular", &SharedAccessResult::avg_cellular)
        .def_readonly("premise_violated", &SharedAccessResult::premise_violated)
        .def_property_readonly("binding", [](const SharedAccessResult& r) {
            return std::string(binding_name(r.binding));
        });

    m.def("optimal_eta", &optimal_eta, py::arg("params"), py::arg("d_m"));
    m.def("grid_search_eta", &grid_search_eta, py::arg("params"), py::arg("d_m"),
          py::arg("resolution") = 1e-3);

    py::class_<McConfig>(m, "McConfig")
        .def(py::init<>())
        .def_readwrite("seed", &McConfig::seed)
        .def_readwrite("n_drops", &McConfig::n_drops)
        .def_readwrite("n_fading", &McConfig::n_fading)
        .def_readwrite("window_radius_m", &McConfig::window_radius_m)
        .def_readwrite("gamma_grid", &McConfig::gamma_grid)
        .def_readwrite("threads", &McConfig::threads);

    py::class_<EmpiricalCdf>(m, "EmpiricalCdf")
        .def_readonly("gamma_grid", &EmpiricalCdf::gamma_grid)
        .def_readonly("cdf", &EmpiricalCdf::cdf)
        .def_readonly("n_samples", &EmpiricalCdf::n_samples)
        .def_readonly("throughput_bps_hz", &EmpiricalCdf::throughput_bps_hz);

    m.def("empirical_cdf", &empirical_cdf, py::arg("params"), py::arg("mc"),
          py::arg("zone"), py::arg("access"), py::arg("d_m"),
          py::arg("fixed_user_radius") = std::nullopt,
          py::call_guard<py::gil_scoped_release>());
    m.def("default_gamma_grid", &default_gamma_grid);

    m.def("hyp2f1_neg", &specfun::hyp2f1_neg, py::arg("s"), py::arg("x"));
    m.def("expint_ei",
          [](std::complex<double> z) { return specfun::expint_ei(z); }, py::arg("z"));

    m.def("run_validation",
          [](const SystemParams& p, uint64_t seed, uint32_t drops, uint32_t fading,
             bool quick) {
              validation::Options o;
              o.seed = seed;
              o.mc_drops = drops;
              o.mc_fading = fading;
              o.quick = quick;
              std::vector<validation::CheckResult> results;
              {
                  py::gil_scoped_release release;
                  results = validation::run_all(p, o);
              }
              py::list out;
              for (const auto& r : results) {
                  py::dict d;
                  d["name"] = r.name;
                  d["pass"] = r.pass;
                  d["deviation"] = r.deviation;
                  d["tolerance"] = r.tolerance;
                  d["detail"] = r.detail;
                  out.append(d);
              }
              return out;
          },
          py::arg("params"), py::arg("seed") = 20260810ULL, py::arg("drops") = 2000,
          py::arg("fading") = 5, py::arg("quick") = true);
}
