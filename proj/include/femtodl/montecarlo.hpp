#pragma once

#include "femtodl/sir.hpp"
#include "femtodl/throughput.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace femtodl {

// First-principles simulator configuration. (seed, config) fully determines
// every output; the thread count does not affect results.
struct McConfig {
    uint64_t seed = 1;
    uint32_t n_drops = 20000;    // independent PPP/user-position realizations
    uint32_t n_fading = 5;       // channel-power draws per drop
    double window_radius_m = 0.0; // 0 => 10 * R_c simulation disk
    std::vector<double> gamma_grid; // empty => default_gamma_grid()
    unsigned threads = 0;        // 0 => hardware concurrency
};

// Geometric grid spanning -40..+60 dB in 0.5 dB steps (201 points).
std::vector<double> default_gamma_grid();

struct EmpiricalCdf {
    std::vector<double> gamma_grid;  // linear SIR values
    std::vector<double> cdf;         // P[SIR <= gamma_grid[k]]
    uint64_t n_samples = 0;
    double throughput_bps_hz = 0.0;  // samples mapped through the rate table
};

// Empirical SIR distribution for one zone/access at distance D. The user
// radius is redrawn per drop with the in-zone radial density 2r/(r2-r1);
// interfering FAPs form a PPP on a disk centered at the user; all channel
// powers are unit-mean exponentials redrawn per sample. fixed_user_radius
// pins R instead (for pointwise CCDF checks).
EmpiricalCdf empirical_cdf(const SystemParams& p, const McConfig& mc, ZoneId zone,
                           Access access, double d_m,
                           std::optional<double> fixed_user_radius = {});

double empirical_zone_throughput(const SystemParams& p, const McConfig& mc,
                                 ZoneId zone, Access access, double d_m);

// Per-drop point counts inside a radial sub-region of the simulation window,
// using the same count and placement sampling as the simulator. Under a
// correct PPP these are Poisson with mean density * pi * sub_radius^2
// (exposed for the goodness-of-fit test of the spatial field).
std::vector<uint64_t> ppp_counts_in_disk(const SystemParams& p, uint64_t seed,
                                         uint32_t n_drops, double sub_radius_m,
                                         double window_radius_m = 0.0);

} // namespace femtodl
