#pragma once

#include "femtodl/sir.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace femtodl {

// Multi-level modulation ladder: thresholds Gamma_n = G (2^n - 1) give the
// integer rates r_n = log2(1 + Gamma_n/G) = n bps/Hz; below Gamma_1 a user is
// in outage and contributes zero rate.
struct RateTable {
    std::vector<double> thresholds; // Gamma_1..Gamma_N, strictly increasing
    std::vector<double> rates;      // r_1..r_N
};

RateTable build_rate_table(double shannon_gap_linear, int n_levels);

// Instantaneous rate for one SIR sample (0 below the lowest threshold).
double rate_for_sir(const RateTable& t, double gamma);

// T = sum_n r_n [S(Gamma_{n+1}) - S(Gamma_n)] with S(Gamma_{N+1}) = 1.
double throughput_from_cdf(const RateTable& t,
                           const std::function<double(double)>& cdf);

// Spatially averaged throughput of one zone (bps/Hz).
double zone_throughput(const SystemParams& p, double d_m, ZoneId zone,
                       Access access = Access::Closed,
                       CdfBackend backend = CdfBackend::Auto);

enum class AccessScheme { Closed, Open };

struct TierThroughput {
    AccessScheme scheme;
    double home_sum = 0.0;                  // T_h, bps/Hz
    std::optional<double> cellular_sum;     // T_c, defined for D > D_th only
    // T_c / U_o: what one neighboring user actually gets, the quantity that
    // decides outage against a per-service rate floor
    std::optional<double> cellular_per_user;
    std::optional<double> rho_b;            // MBS slot share of Fb home users
    std::optional<double> rho_o;            // MBS slot share of Fo cellular users
    std::optional<double> rho_i;            // FAP slot share of Fi home users
};

// Time-slot fractions (closed forms, cross-checkable against the count
// ratios from user_counts). rho_b_* and rho_o require the respective region.
double rho_b_closed(const SystemParams& p, double d_m);
double rho_b_open(const SystemParams& p, double d_m);
double rho_o(const SystemParams& p, double d_m);
double rho_i(const SystemParams& p, double d_m);

TierThroughput tier_throughput_closed(const SystemParams& p, double d_m);
TierThroughput tier_throughput_open(const SystemParams& p, double d_m);

// Sum of home and neighboring-cellular throughput for one scheme.
double network_throughput(const SystemParams& p, double d_m, AccessScheme s);

} // namespace femtodl
