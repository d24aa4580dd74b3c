// femtodl: two-tier femtocell downlink analysis tool.
//
// Subcommands:
//   sweep     parameter sweeps -> CSV datasets (throughput/CDF/shared access)
//   cdf       per-zone SIR CDF export, optionally with an empirical overlay
//   eta       shared-access time-slot optimum at one distance
//   validate  oracle suite (analytic vs MC, closed form vs quadrature, ...)
//
// Exit codes: 0 success, 1 validation failure, 2 usage/config error.

#include "femtodl/errors.hpp"
#include "femtodl/geometry.hpp"
#include "femtodl/montecarlo.hpp"
#include "femtodl/shared_access.hpp"
#include "femtodl/sir.hpp"
#include "femtodl/specfun.hpp"
#include "femtodl/throughput.hpp"
#include "femtodl/validation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

namespace {

using namespace femtodl;

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct RangeSpec {
    double start = 0.0, stop = 0.0;
    int count = 0;
};

RangeSpec parse_range(const std::string& text) {
    RangeSpec r;
    char c1, c2;
    std::istringstream in(text);
    if (!(in >> r.start >> c1 >> r.stop >> c2 >> r.count) || c1 != ':' || c2 != ':') {
        throw ConfigError("range must be start:stop:count, got '" + text + "'");
    }
    if (r.count < 2) throw ConfigError("range count must be >= 2");
    return r;
}

nlohmann::json load_config_json(const std::string& path,
                                const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    for (const auto& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("override must be key=value, got '" + ov + "'");
        }
        const std::string key = ov.substr(0, eq);
        try {
            j[key] = std::stod(ov.substr(eq + 1));
        } catch (const std::exception&) {
            throw ConfigError("override value is not a number: '" + ov + "'");
        }
    }
    return j;
}

SystemParams params_from_json(const nlohmann::json& j) {
    return load_params(j.dump());
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // '\n' line endings on all platforms
    if (!out) throw ConfigError("cannot open output file: " + path);
    return out;
}

void write_metadata(std::ofstream& out, const SystemParams& p, uint64_t seed,
                    const std::string& extra) {
    out << "# femtodl dataset\n";
    out << "# " << params_metadata(p) << "\n";
    out << "# seed=" << seed << (extra.empty() ? "" : " " + extra) << "\n";
}

double db10(double linear) { return 10.0 * std::log10(linear); }

// ---- sweep ----

struct SweepRow {
    double var = 0.0;
    std::vector<std::pair<std::string, double>> values; // label -> value
};

int run_sweep(const std::string& config_path, const std::vector<std::string>& overrides,
              const std::string& var, const RangeSpec& range,
              const std::vector<std::string>& outputs, const std::string& out_prefix,
              double at_d, uint64_t seed, uint32_t drops, uint32_t fading,
              double window, unsigned threads, bool quick) {
    const nlohmann::json base = load_config_json(config_path, overrides);
    {
        SystemParams p0 = params_from_json(base); // validate before sweeping
        if (var == "D" &&
            (!(range.start > 0.0) || range.stop > p0.radius_macro_m || range.start > range.stop)) {
            throw ConfigError("D range must lie in (0, R_c]");
        }
    }

    static const std::map<std::string, std::string> kVarKeys = {
        {"N_f", "num_femtocells"}, {"U_c", "num_cellular_users"}, {"epsilon", "qos_epsilon"}};
    if (var != "D" && kVarKeys.find(var) == kVarKeys.end()) {
        throw ConfigError("unknown sweep variable: " + var);
    }

    std::vector<double> grid;
    for (int i = 0; i < range.count; ++i) {
        grid.push_back(range.start +
                       (range.stop - range.start) * i / double(range.count - 1));
    }

    auto point_params = [&](double v) {
        nlohmann::json j = base;
        if (var != "D") j[kVarKeys.at(var)] = v;
        return params_from_json(j);
    };
    auto point_distance = [&](double v) { return var == "D" ? v : at_d; };

    const std::string var_col = var == "D" ? "D_m" : var;
    int exit_code = 0;

    for (const std::string& kind : outputs) {
        if (kind == "validate") continue; // handled after the sweeps
        std::vector<SweepRow> rows(grid.size());

        auto eval_point = [&](size_t i) {
            const double v = grid[i];
            const SystemParams p = point_params(v);
            const DerivedConstants dc = derive_constants(p);
            const double d_m = point_distance(v);
            SweepRow& row = rows[i];
            row.var = v;
            const bool outer = d_m > dc.d_th_m;
            if (kind == "zone-throughput") {
                if (outer) {
                    row.values.emplace_back("T_i", zone_throughput(p, d_m, ZoneId::Fi));
                    row.values.emplace_back("T_o_CA",
                                            zone_throughput(p, d_m, ZoneId::Fo, Access::Closed));
                    row.values.emplace_back("T_o_OA",
                                            zone_throughput(p, d_m, ZoneId::Fo, Access::Open));
                } else {
                    row.values.emplace_back("T_a", zone_throughput(p, d_m, ZoneId::Fa));
                    row.values.emplace_back("T_b", zone_throughput(p, d_m, ZoneId::Fb));
                }
            } else if (kind == "tier-throughput") {
                const TierThroughput ca = tier_throughput_closed(p, d_m);
                const TierThroughput oa = tier_throughput_open(p, d_m);
                row.values.emplace_back("T_h_CA", ca.home_sum);
                if (ca.cellular_sum) row.values.emplace_back("T_c_CA", *ca.cellular_sum);
                if (ca.cellular_per_user) {
                    row.values.emplace_back("T_c_CA_per_user", *ca.cellular_per_user);
                }
                row.values.emplace_back("T_h_OA", oa.home_sum);
                if (oa.cellular_sum) row.values.emplace_back("T_c_OA", *oa.cellular_sum);
                if (oa.cellular_per_user) {
                    row.values.emplace_back("T_c_OA_per_user", *oa.cellular_per_user);
                }
            } else if (kind == "network-throughput") {
                row.values.emplace_back("T_CA",
                                        network_throughput(p, d_m, AccessScheme::Closed));
                row.values.emplace_back("T_OA",
                                        network_throughput(p, d_m, AccessScheme::Open));
            } else if (kind == "shared-access") {
                const SharedAccessResult r = optimal_eta(p, d_m);
                row.values.emplace_back("T_SA", r.network_throughput);
                if (r.eta_star) row.values.emplace_back("eta_star", *r.eta_star);
                row.values.emplace_back("feasible", r.feasible ? 1.0 : 0.0);
                if (r.avg_home) row.values.emplace_back("Tbar_h", *r.avg_home);
                if (r.avg_cellular) row.values.emplace_back("Tbar_c", *r.avg_cellular);
            } else if (kind != "zone-cdf") {
                throw ConfigError("unknown output kind: " + kind);
            }
        };

        if (kind != "zone-cdf") {
            // points are independent; evaluate them concurrently
            const unsigned hw = std::thread::hardware_concurrency();
            const unsigned nt = std::max(1u, std::min<unsigned>(hw ? hw : 1,
                                                                (unsigned)grid.size()));
            std::exception_ptr error;
            std::vector<std::thread> pool;
            std::atomic<size_t> next{0};
            std::mutex err_mutex;
            for (unsigned t = 0; t < nt; ++t) {
                pool.emplace_back([&] {
                    for (size_t i = next.fetch_add(1); i < grid.size();
                         i = next.fetch_add(1)) {
                        try {
                            eval_point(i);
                        } catch (...) {
                            std::scoped_lock lk(err_mutex);
                            if (!error) error = std::current_exception();
                        }
                    }
                });
            }
            for (auto& t : pool) t.join();
            if (error) std::rethrow_exception(error);
        }

        const std::string path = out_prefix + "_" + kind + ".csv";
        std::ofstream out = open_output(path);
        const SystemParams p0 = params_from_json(base);
        write_metadata(out, p0, seed,
                       "sweep_var=" + var + " at_d=" + format_value(at_d));

        if (kind == "zone-cdf") {
            out << var_col << ",gamma_db,cdf,zone,access\n";
            const std::vector<double> gg = default_gamma_grid();
            for (double v : grid) {
                const SystemParams p = point_params(v);
                const DerivedConstants dc = derive_constants(p);
                const double d_m = point_distance(v);
                const bool outer = d_m > dc.d_th_m;
                struct Curve { ZoneId z; Access a; };
                std::vector<Curve> curves;
                if (outer) {
                    curves = {{ZoneId::Fo, Access::Closed},
                              {ZoneId::Fo, Access::Open},
                              {ZoneId::Fi, Access::Closed}};
                } else {
                    curves = {{ZoneId::Fa, Access::Closed}, {ZoneId::Fb, Access::Closed}};
                }
                for (const auto& c : curves) {
                    const SirCdf cdf(p, c.z, c.a, d_m);
                    for (double g : gg) {
                        out << format_value(v) << ',' << format_value(db10(g)) << ','
                            << format_value(cdf(g)) << ',' << zone_name(c.z) << ','
                            << (c.z == ZoneId::Fo ? access_name(c.a) : "na") << "\n";
                    }
                }
            }
        } else {
            out << var_col << ",value,series_label,units\n";
            for (const auto& row : rows) {
                for (const auto& [label, value] : row.values) {
                    const char* units =
                        (label == "eta_star" || label == "feasible") ? "fraction"
                                                                     : "bps/Hz";
                    out << format_value(row.var) << ',' << format_value(value) << ','
                        << label << ',' << units << "\n";
                }
            }
        }
        std::cerr << "wrote " << path << "\n";
    }

    for (const std::string& kind : outputs) {
        if (kind != "validate") continue;
        validation::Options vo;
        vo.seed = seed;
        vo.mc_drops = drops;
        vo.mc_fading = fading;
        vo.mc_window_m = window;
        vo.threads = threads;
        vo.quick = quick;
        const SystemParams p0 = params_from_json(base);
        const auto results = validation::run_all(p0, vo);
        for (const auto& r : results) {
            std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
                      << " | deviation=" << format_value(r.deviation)
                      << " tol=" << format_value(r.tolerance) << " | " << r.detail
                      << "\n";
            if (!r.pass) exit_code = 1;
        }
    }
    return exit_code;
}

// ---- cdf ----

int run_cdf(const std::string& config_path, const std::vector<std::string>& overrides,
            const std::string& zone_arg, const std::string& access_arg, double d_m,
            const std::string& backend_arg, bool with_mc, uint64_t seed,
            uint32_t drops, uint32_t fading, double window, unsigned threads,
            const std::string& out_path) {
    const SystemParams p = params_from_json(load_config_json(config_path, overrides));

    static const std::map<std::string, ZoneId> kZones = {
        {"Fi", ZoneId::Fi}, {"Fo", ZoneId::Fo}, {"Fa", ZoneId::Fa}, {"Fb", ZoneId::Fb}};
    const auto zit = kZones.find(zone_arg);
    if (zit == kZones.end()) throw ConfigError("unknown zone: " + zone_arg);
    const Access access = access_arg == "open" ? Access::Open : Access::Closed;
    CdfBackend backend = CdfBackend::Auto;
    if (backend_arg == "closed") backend = CdfBackend::ClosedForm;
    else if (backend_arg == "quadrature") backend = CdfBackend::Quadrature;
    else if (backend_arg != "auto") throw ConfigError("unknown backend: " + backend_arg);

    const SirCdf cdf(p, zit->second, access, d_m, backend);
    const std::vector<double> gg = default_gamma_grid();

    std::optional<EmpiricalCdf> emp;
    std::string extra = "D_m=" + format_value(d_m);
    if (with_mc) {
        McConfig mc;
        mc.seed = seed;
        mc.n_drops = drops;
        mc.n_fading = fading;
        mc.window_radius_m = window;
        mc.threads = threads;
        emp = empirical_cdf(p, mc, zit->second, access, d_m);
        extra += " drops=" + std::to_string(drops) + " fading=" + std::to_string(fading) +
                 " window_m=" +
                 format_value(window > 0.0 ? window : 10.0 * p.radius_macro_m);
    }

    std::ofstream out = open_output(out_path);
    write_metadata(out, p, seed, extra);
    out << "gamma_db,cdf,zone,access";
    if (emp) out << ",cdf_mc,n_samples";
    out << "\n";
    for (size_t i = 0; i < gg.size(); ++i) {
        out << format_value(db10(gg[i])) << ',' << format_value(cdf(gg[i])) << ','
            << zone_name(zit->second) << ','
            << (zit->second == ZoneId::Fo ? access_name(access) : "na");
        if (emp) out << ',' << format_value(emp->cdf[i]) << ',' << emp->n_samples;
        out << "\n";
    }
    std::cerr << "wrote " << out_path << "\n";
    return 0;
}

// ---- eta ----

int run_eta(const std::string& config_path, const std::vector<std::string>& overrides,
            double d_m, bool with_grid, double resolution) {
    const SystemParams p = params_from_json(load_config_json(config_path, overrides));
    const SharedAccessResult r = optimal_eta(p, d_m);
    std::cout << "D_m=" << format_value(d_m) << "\n";
    std::cout << "binding=" << binding_name(r.binding) << "\n";
    std::cout << "feasible=" << (r.feasible ? 1 : 0) << "\n";
    if (r.eta_star) std::cout << "eta_star=" << format_value(*r.eta_star) << "\n";
    std::cout << "T_SA=" << format_value(r.network_throughput) << "\n";
    if (r.avg_home) std::cout << "Tbar_h=" << format_value(*r.avg_home) << "\n";
    if (r.avg_cellular) std::cout << "Tbar_c=" << format_value(*r.avg_cellular) << "\n";
    if (r.premise_violated) std::cout << "premise_violated=1\n";
    if (with_grid) {
        const SharedAccessResult g = grid_search_eta(p, d_m, resolution);
        if (g.eta_star) std::cout << "eta_grid=" << format_value(*g.eta_star) << "\n";
        std::cout << "T_SA_grid=" << format_value(g.network_throughput) << "\n";
    }
    return 0;
}

// ---- validate ----

int run_validate(const std::string& config_path,
                 const std::vector<std::string>& overrides, uint64_t seed,
                 uint32_t drops, uint32_t fading, double window, unsigned threads,
                 bool quick, const std::string& out_path, bool corrupt_hyp2f1) {
    const SystemParams p = params_from_json(load_config_json(config_path, overrides));
    if (corrupt_hyp2f1) specfun::set_corrupt_hyp2f1_for_testing(true);

    validation::Options o;
    o.seed = seed;
    o.mc_drops = quick ? std::min(drops, 2000u) : drops;
    o.mc_fading = fading;
    o.mc_window_m = window;
    o.threads = threads;
    o.quick = quick;

    const auto results = validation::run_all(p, o);

    bool all_pass = true;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
                  << " | deviation=" << format_value(r.deviation)
                  << " tol=" << format_value(r.tolerance) << " | " << r.detail
                  << " (" << format_value(r.runtime_s) << " s)\n";
        checks.push_back({{"name", r.name},
                          {"pass", r.pass},
                          {"deviation", r.deviation},
                          {"tolerance", r.tolerance},
                          {"detail", r.detail}});
    }
    std::cout << (all_pass ? "ALL CHECKS PASSED" : "VALIDATION FAILED") << "\n";

    if (!out_path.empty()) {
        // no timings in the report: identical seeds must give identical bytes
        nlohmann::json report{{"all_pass", all_pass},
                              {"checks", checks},
                              {"config", params_metadata(p)},
                              {"seed", seed},
                              {"mc_drops", o.mc_drops},
                              {"mc_fading", o.mc_fading},
                              {"quick", quick}};
        std::ofstream out = open_output(out_path);
        out << report.dump(2) << "\n";
        std::cerr << "wrote " << out_path << "\n";
    }
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-tier femtocell downlink throughput analysis"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand name

    std::string config_path;
    std::vector<std::string> overrides;
    uint64_t seed = 20260810ULL;
    uint32_t drops = 20000, fading = 5;
    unsigned threads = 0;
    app.add_option("--config", config_path, "JSON configuration file")->required();
    app.add_option("--override", overrides, "override config key: key=value");
    app.add_option("--seed", seed, "RNG master seed");
    app.add_option("--drops", drops, "Monte Carlo drops");
    app.add_option("--fading", fading, "fading draws per drop");
    app.add_option("--threads", threads, "worker threads (0 = hardware)");
    double window = 0.0;
    app.add_option("--window", window, "Monte Carlo window radius, m (0 = 10 R_c)");

    auto* sweep = app.add_subcommand("sweep", "parameter sweep -> CSV");
    std::string var = "D", range_text = "10:500:50", out_prefix = "sweep";
    std::vector<std::string> outputs{"tier-throughput"};
    double at_d = 300.0;
    sweep->add_option("--var", var, "sweep variable: D | N_f | U_c | epsilon");
    sweep->add_option("--range", range_text, "start:stop:count");
    sweep->add_option("--outputs", outputs,
                      "zone-cdf zone-throughput tier-throughput network-throughput "
                      "shared-access validate")
        ->delimiter(',');
    sweep->add_option("--out", out_prefix, "output path prefix");
    sweep->add_option("--at-d", at_d, "FAP-MBS distance for non-D sweeps (m)");

    auto* cdf = app.add_subcommand("cdf", "zone SIR CDF export");
    std::string zone_arg = "Fo", access_arg = "closed", backend_arg = "auto";
    std::string cdf_out = "cdf.csv";
    double cdf_d = 300.0;
    bool with_mc = false;
    cdf->add_option("--zone", zone_arg, "Fa | Fb | Fi | Fo");
    cdf->add_option("--access", access_arg, "closed | open (zone Fo)");
    cdf->add_option("--D", cdf_d, "FAP-MBS distance (m)");
    cdf->add_option("--backend", backend_arg, "auto | closed | quadrature");
    cdf->add_flag("--mc", with_mc, "add an empirical CDF column");
    cdf->add_option("--out", cdf_out, "output CSV path");

    auto* eta = app.add_subcommand("eta", "shared-access optimum at one distance");
    double eta_d = 300.0, resolution = 1e-3;
    bool with_grid = false;
    eta->add_option("--D", eta_d, "FAP-MBS distance (m)");
    eta->add_flag("--grid", with_grid, "also run the grid-search oracle");
    eta->add_option("--resolution", resolution, "grid step (>= 1e-4)");

    auto* validate_cmd = app.add_subcommand("validate", "run the oracle suite");
    std::string report_out;
    bool quick = false, corrupt = false;
    validate_cmd->add_option("--out", report_out, "machine-readable JSON report");
    validate_cmd->add_flag("--quick", quick, "reduced Monte Carlo sample counts");
    validate_cmd->add_flag("--corrupt-hyp2f1", corrupt)->group(""); // test hook

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (sweep->parsed()) {
            return run_sweep(config_path, overrides, var, parse_range(range_text),
                             outputs, out_prefix, at_d, seed, drops, fading, window,
                             threads, quick);
        }
        if (cdf->parsed()) {
            return run_cdf(config_path, overrides, zone_arg, access_arg, cdf_d,
                           backend_arg, with_mc, seed, drops, fading, window, threads,
                           cdf_out);
        }
        if (eta->parsed()) {
            return run_eta(config_path, overrides, eta_d, with_grid, resolution);
        }
        if (validate_cmd->parsed()) {
            return run_validate(config_path, overrides, seed, drops, fading, window,
                                threads, quick, report_out, corrupt);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
