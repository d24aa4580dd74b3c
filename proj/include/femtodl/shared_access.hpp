#pragma once

#include "femtodl/params.hpp"

#include <optional>
#include <string>

namespace femtodl {

// Which bound produced (or blocked) the reported time fraction.
enum class EtaBinding {
    CellularQos,  // eta = 1 - Omega_c U_o / T_o^OA binds
    Fairness,     // eta = (1 + eps U_o T_i / (U_i T_o^OA))^-1 binds
    UnitBound,    // both bounds slack, eta = 1 (closed access)
    HomeQosViolated,     // infeasible: even the best eta starves home users
    CellularQosViolated, // infeasible: cellular QoS unreachable at any eta
    InnerRegion   // D <= D_th: sharing coincides with open access
};

const char* binding_name(EtaBinding b);

struct SharedAccessResult {
    std::optional<double> eta_star;     // home-user slot fraction (outer region)
    bool feasible = false;
    double network_throughput = 0.0;    // eta T_i + (1-eta) T_o^OA, bps/Hz
    std::optional<double> avg_home;     // per-user home throughput at eta
    std::optional<double> avg_cellular; // per-user cellular throughput at eta
    EtaBinding binding = EtaBinding::InnerRegion;
    bool premise_violated = false;      // T_i <= T_o^OA: closed form not valid
};

// Proposition-style closed form. For D <= D_th sharing degenerates to open
// access (reported, not an error). Falls back to grid search and flags
// premise_violated when T_i <= T_o^OA.
SharedAccessResult optimal_eta(const SystemParams& p, double d_m);

// Exhaustive scan over eta in [0,1] with the given step; the independent
// oracle for the closed form. resolution must be >= 1e-4.
SharedAccessResult grid_search_eta(const SystemParams& p, double d_m,
                                   double resolution = 1e-3);

} // namespace femtodl
