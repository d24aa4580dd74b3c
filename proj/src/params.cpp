#include "femtodl/params.hpp"
#include "femtodl/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace femtodl {

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

namespace {

double require_number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) {
        throw ConfigError(std::string("missing config key: ") + key);
    }
    if (!j.at(key).is_number()) {
        throw ConfigError(std::string("config key is not a number: ") + key);
    }
    return j.at(key).get<double>();
}

} // namespace

void validate(const SystemParams& p) {
    if (!(p.p_macro_mw > 0.0) || !(p.p_femto_mw > 0.0)) {
        throw ConfigError("transmit powers must be positive");
    }
    if (!(p.wall_loss > 0.0) || p.wall_loss > 1.0) {
        throw ConfigError("wall loss must be linear in (0, 1]");
    }
    if (!(p.alpha > 2.0)) {
        throw ConfigError("outdoor pathloss exponent alpha must be > 2");
    }
    if (!(p.beta >= 2.0)) {
        throw ConfigError("indoor pathloss exponent beta must be >= 2");
    }
    if (!(p.radius_indoor_m > 0.0) || !(p.radius_macro_m > p.radius_indoor_m)) {
        throw ConfigError("radii must satisfy 0 < R_i < R_c");
    }
    if (!(p.n_femto >= 0.0)) {
        throw ConfigError("mean femtocell count must be >= 0");
    }
    if (!(p.n_cellular > 0.0) || !(p.n_home > 0.0)) {
        throw ConfigError("user counts must be positive");
    }
    if (!(p.shannon_gap > 0.0)) {
        throw ConfigError("Shannon gap must be positive");
    }
    if (p.n_mod_levels < 1) {
        throw ConfigError("need at least one modulation level");
    }
    if (!(p.qos_omega_c >= 0.0) || !(p.qos_omega_h >= 0.0)) {
        throw ConfigError("QoS minimum throughputs must be >= 0");
    }
    if (!(p.qos_epsilon >= 0.0) || p.qos_epsilon > 1.0) {
        throw ConfigError("QoS fairness weight must lie in [0, 1]");
    }
    const double kappa = p.p_macro_mw / (p.p_femto_mw * p.wall_loss);
    if (!(kappa > 1.0)) {
        throw ConfigError("kappa = P_c/(P_f L) must exceed 1");
    }
}

SystemParams load_params(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }

    SystemParams p;
    p.p_macro_mw = dbm_to_mw(require_number(j, "power_macro_dbm"));
    p.p_femto_mw = dbm_to_mw(require_number(j, "power_femto_dbm"));
    p.wall_loss = require_number(j, "wall_loss_linear");
    p.alpha = require_number(j, "alpha");
    p.beta = require_number(j, "beta");
    p.radius_macro_m = require_number(j, "radius_macro_m");
    p.radius_indoor_m = require_number(j, "radius_indoor_m");
    p.n_femto = require_number(j, "num_femtocells");
    p.n_cellular = require_number(j, "num_cellular_users");
    // Not part of the published parameter table; defaults to the minimal
    // nondegenerate choice and is echoed in all output metadata.
    p.n_home = j.contains("num_home_users") ? require_number(j, "num_home_users") : 1.0;
    p.shannon_gap = db_to_linear(require_number(j, "shannon_gap_db"));
    p.n_mod_levels = static_cast<int>(require_number(j, "num_mod_levels"));
    p.qos_omega_c = require_number(j, "qos_omega_c");
    p.qos_omega_h = require_number(j, "qos_omega_h");
    p.qos_epsilon = require_number(j, "qos_epsilon");

    validate(p);
    return p;
}

SystemParams load_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_params(buf.str());
}

DerivedConstants derive_constants(const SystemParams& p) {
    validate(p);
    DerivedConstants d;
    d.kappa = p.p_macro_mw / (p.p_femto_mw * p.wall_loss);
    d.density = p.n_femto / (std::numbers::pi * p.radius_macro_m * p.radius_macro_m);
    d.c_alpha = (2.0 * std::numbers::pi * std::numbers::pi / p.alpha) /
                std::sin(2.0 * std::numbers::pi / p.alpha);

    const double k2a = std::pow(d.kappa, 2.0 / p.alpha);
    const double k1a = std::pow(d.kappa, 1.0 / p.alpha);
    d.d_th_m = p.radius_indoor_m * std::abs(k2a - 1.0) / k1a;

    const double inner_frac = (d.d_th_m / p.radius_macro_m) * (d.d_th_m / p.radius_macro_m);
    d.n_f_inner = p.n_femto * inner_frac;
    d.n_f_outer = p.n_femto - d.n_f_inner;

    const double ri2 = p.radius_indoor_m * p.radius_indoor_m;
    d.k_geom = k2a / (2.0 * ri2 * (k2a - 1.0) * (k2a - 1.0));
    return d;
}

std::string params_metadata(const SystemParams& p) {
    char buf[640];
    std::snprintf(buf, sizeof(buf),
                  "power_macro_mw=%.17g power_femto_mw=%.17g wall_loss=%.17g "
                  "alpha=%.17g beta=%.17g radius_macro_m=%.17g radius_indoor_m=%.17g "
                  "num_femtocells=%.17g num_cellular_users=%.17g num_home_users=%.17g "
                  "shannon_gap=%.17g num_mod_levels=%d qos_omega_c=%.17g "
                  "qos_omega_h=%.17g qos_epsilon=%.17g",
                  p.p_macro_mw, p.p_femto_mw, p.wall_loss, p.alpha, p.beta,
                  p.radius_macro_m, p.radius_indoor_m, p.n_femto, p.n_cellular,
                  p.n_home, p.shannon_gap, p.n_mod_levels, p.qos_omega_c,
                  p.qos_omega_h, p.qos_epsilon);
    return buf;
}

} // namespace femtodl
