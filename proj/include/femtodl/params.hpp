#pragma once

#include <iosfwd>
#include <string>

namespace femtodl {

// Validated system configuration. Powers are stored linear (mW); the config
// document takes them in dBm. Immutable after construction, safe to share
// across threads.
struct SystemParams {
    double p_macro_mw = 0.0;      // macrocell transmit power, linear mW
    double p_femto_mw = 0.0;      // femtocell transmit power, linear mW
    double wall_loss = 1.0;       // wall penetration loss L, linear in (0,1]
    double alpha = 4.0;           // outdoor pathloss exponent, > 2
    double beta = 4.0;            // indoor pathloss exponent, >= 2
    double radius_macro_m = 0.0;  // macrocell radius R_c
    double radius_indoor_m = 0.0; // indoor (home) radius R_i
    double n_femto = 0.0;         // mean femtocells per cell site, >= 0
    double n_cellular = 0.0;      // outdoor cellular users per cell U_c
    double n_home = 1.0;          // home users per femtocell U_h
    double shannon_gap = 1.0;     // Shannon gap G, linear
    int n_mod_levels = 8;         // number of modulation levels N
    double qos_omega_c = 0.0;     // minimum per-user throughput, cellular (bps/Hz)
    double qos_omega_h = 0.0;     // minimum per-user throughput, home (bps/Hz)
    double qos_epsilon = 0.0;     // fairness weight in [0,1]
};

// Constants derived once from SystemParams and consumed everywhere else.
struct DerivedConstants {
    double kappa = 0.0;       // P_c / (P_f L), linear, > 1
    double density = 0.0;     // FAP density per m^2
    double c_alpha = 0.0;     // (2 pi^2 / alpha) csc(2 pi / alpha)
    double d_th_m = 0.0;      // threshold distance: coverage radius == R_i
    double n_f_inner = 0.0;   // mean femtocell count with D <= D_th
    double n_f_outer = 0.0;   // mean femtocell count with D > D_th
    double k_geom = 0.0;      // kappa^{2/a} / (2 R_i^2 (kappa^{2/a}-1)^2), per m^2
};

double dbm_to_mw(double dbm);
double db_to_linear(double db);

// Throws ConfigError on missing keys or invariant violations.
SystemParams load_params(const std::string& json_text);
SystemParams load_params_file(const std::string& path);

// Re-checks the invariants on an already-populated struct.
void validate(const SystemParams& p);

DerivedConstants derive_constants(const SystemParams& p);

// Config echo used in CSV/JSON output metadata (deterministic key order).
std::string params_metadata(const SystemParams& p);

} // namespace femtodl
