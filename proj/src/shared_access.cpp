#include "femtodl/shared_access.hpp"
#include "femtodl/errors.hpp"
#include "femtodl/geometry.hpp"
#include "femtodl/throughput.hpp"

#include <cmath>
#include <stdexcept>

namespace femtodl {

const char* binding_name(EtaBinding b) {
    switch (b) {
        case EtaBinding::CellularQos: return "cellular-qos";
        case EtaBinding::Fairness: return "fairness";
        case EtaBinding::UnitBound: return "unit-bound";
        case EtaBinding::HomeQosViolated: return "home-qos-violated";
        case EtaBinding::CellularQosViolated: return "cellular-qos-violated";
        case EtaBinding::InnerRegion: return "inner-region";
    }
    return "?";
}

namespace {

struct SharingSetup {
    double t_home;     // T_i
    double t_out;      // T_o^OA
    double u_home;     // U_i
    double u_out;      // U_o
};

SharingSetup sharing_setup(const SystemParams& p, double d_m) {
    const UserCounts u = user_counts(p, d_m);
    return {zone_throughput(p, d_m, ZoneId::Fi),
            zone_throughput(p, d_m, ZoneId::Fo, Access::Open), u.u_i, u.u_o};
}

SharedAccessResult inner_region_result(const SystemParams& p, double d_m) {
    SharedAccessResult r;
    r.binding = EtaBinding::InnerRegion;
    r.feasible = true;
    r.network_throughput = network_throughput(p, d_m, AccessScheme::Open);
    return r;
}

SharedAccessResult evaluate_eta(const SharingSetup& s, const SystemParams& p,
                                double eta) {
    SharedAccessResult r;
    r.eta_star = eta;
    r.network_throughput = eta * s.t_home + (1.0 - eta) * s.t_out;
    r.avg_home = eta * s.t_home / s.u_home;
    r.avg_cellular = (1.0 - eta) * s.t_out / s.u_out;
    const double slack = 1e-9;
    r.feasible = *r.avg_cellular >= p.qos_omega_c - slack &&
                 *r.avg_home >= p.qos_omega_h - slack &&
                 *r.avg_cellular >= p.qos_epsilon * *r.avg_home - slack;
    return r;
}

} // namespace

SharedAccessResult optimal_eta(const SystemParams& p, double d_m) {
    const DerivedConstants d = derive_constants(p);
    if (!(d_m > 0.0)) throw std::invalid_argument("optimal_eta: D must be > 0");
    if (d_m <= d.d_th_m) return inner_region_result(p, d_m);

    const SharingSetup s = sharing_setup(p, d_m);
    if (!(s.t_home > s.t_out) || !(s.t_out > 0.0)) {
        // The proof of the closed form needs T_i > T_o^OA > 0.
        SharedAccessResult r = grid_search_eta(p, d_m, 1e-4);
        r.premise_violated = true;
        return r;
    }

    const double q_cell = 1.0 - p.qos_omega_c * s.u_out / s.t_out;
    const double q_fair =
        1.0 / (1.0 + p.qos_epsilon * s.u_out * s.t_home / (s.u_home * s.t_out));
    const double eta = std::min(q_cell, q_fair);
    const double eta_min = p.qos_omega_h * s.u_home / s.t_home;

    if (eta < 0.0) {
        SharedAccessResult r = evaluate_eta(s, p, 0.0);
        r.eta_star = eta;
        r.feasible = false;
        r.binding = EtaBinding::CellularQosViolated;
        return r;
    }
    SharedAccessResult r = evaluate_eta(s, p, eta);
    if (eta + 1e-12 < eta_min) {
        r.feasible = false;
        r.binding = EtaBinding::HomeQosViolated;
        return r;
    }
    r.feasible = true;
    if (eta >= 1.0 - 1e-15) {
        r.binding = EtaBinding::UnitBound;
    } else {
        r.binding = q_cell <= q_fair ? EtaBinding::CellularQos : EtaBinding::Fairness;
    }
    return r;
}

SharedAccessResult grid_search_eta(const SystemParams& p, double d_m,
                                   double resolution) {
    if (!(resolution >= 1e-4)) {
        throw std::invalid_argument("grid_search_eta: resolution must be >= 1e-4");
    }
    const DerivedConstants d = derive_constants(p);
    if (d_m <= d.d_th_m) return inner_region_result(p, d_m);

    const SharingSetup s = sharing_setup(p, d_m);
    const long steps = std::lround(1.0 / resolution);
    SharedAccessResult best;
    best.feasible = false;
    bool found = false;
    for (long i = 0; i <= steps; ++i) {
        const double eta = static_cast<double>(i) / static_cast<double>(steps);
        SharedAccessResult cand = evaluate_eta(s, p, eta);
        if (!cand.feasible) continue;
        if (!found || cand.network_throughput > best.network_throughput) {
            best = cand;
            found = true;
        }
    }
    if (!found) {
        SharedAccessResult r;
        r.feasible = false;
        // Report which requirement closed the feasible set: if even eta = 0
        // cannot serve the cellular QoS the set is empty from that side.
        const double cell_at_zero = s.t_out / s.u_out;
        r.binding = cell_at_zero < p.qos_omega_c ? EtaBinding::CellularQosViolated
                                                 : EtaBinding::HomeQosViolated;
        r.network_throughput = 0.0;
        return r;
    }
    // Label the active constraint at the grid optimum by smallest slack.
    const double sc = *best.avg_cellular - p.qos_omega_c;
    const double sf = *best.avg_cellular - p.qos_epsilon * *best.avg_home;
    if (*best.eta_star >= 1.0) {
        best.binding = EtaBinding::UnitBound;
    } else {
        best.binding = sc <= sf ? EtaBinding::CellularQos : EtaBinding::Fairness;
    }
    return best;
}

} // namespace femtodl
