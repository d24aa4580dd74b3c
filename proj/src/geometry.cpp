#include "femtodl/geometry.hpp"
#include "femtodl/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace femtodl {

const char* zone_name(ZoneId z) {
    switch (z) {
        case ZoneId::Fa: return "Fa";
        case ZoneId::Fb: return "Fb";
        case ZoneId::Fi: return "Fi";
        case ZoneId::Fo: return "Fo";
        case ZoneId::MacroOnly: return "macro-only";
    }
    return "?";
}

double coverage_radius(const SystemParams& p, double d_m) {
    if (!(d_m >= 0.0)) throw std::invalid_argument("coverage_radius: D must be >= 0");
    const double kappa = p.p_macro_mw / (p.p_femto_mw * p.wall_loss);
    const double k2a = std::pow(kappa, 2.0 / p.alpha);
    const double k1a = std::pow(kappa, 1.0 / p.alpha);
    return k1a * d_m / std::abs(k2a - 1.0);
}

ZoneGeometry zone_geometry(const SystemParams& p, double d_m) {
    const double kappa = p.p_macro_mw / (p.p_femto_mw * p.wall_loss);
    const double k2a = std::pow(kappa, 2.0 / p.alpha);

    ZoneGeometry g;
    g.d_m = d_m;
    g.coverage_radius_m = coverage_radius(p, d_m);
    g.outer = g.coverage_radius_m > p.radius_indoor_m;
    g.center_offset_factor = k2a / (k2a - 1.0);
    if (g.outer) {
        g.annulus_inner_m = p.radius_indoor_m;   // Fo
        g.annulus_outer_m = g.coverage_radius_m;
    } else {
        g.annulus_inner_m = g.coverage_radius_m; // Fb
        g.annulus_outer_m = p.radius_indoor_m;
    }
    return g;
}

ZoneId classify_zone(const SystemParams& p, double d_m, double r_from_fap_m,
                     bool indoor) {
    if (!(r_from_fap_m >= 0.0)) {
        throw std::invalid_argument("classify_zone: negative radius");
    }
    const double rf = coverage_radius(p, d_m);
    const double ri = p.radius_indoor_m;
    if (indoor && r_from_fap_m > ri) {
        throw std::invalid_argument("classify_zone: indoor position beyond R_i");
    }
    if (!indoor && r_from_fap_m < ri) {
        throw std::invalid_argument("classify_zone: outdoor position inside R_i");
    }
    if (rf > ri) { // outer region
        if (indoor) return ZoneId::Fi;
        return r_from_fap_m <= rf ? ZoneId::Fo : ZoneId::MacroOnly;
    }
    if (indoor) return r_from_fap_m <= rf ? ZoneId::Fa : ZoneId::Fb;
    return ZoneId::MacroOnly;
}

UserCounts user_counts(const SystemParams& p, double d_m) {
    if (!(d_m >= 0.0)) throw std::invalid_argument("user_counts: D must be >= 0");
    const DerivedConstants d = derive_constants(p);
    const double ri2 = p.radius_indoor_m * p.radius_indoor_m;
    const double rc2 = p.radius_macro_m * p.radius_macro_m;
    const double outdoor_area_term = rc2 - p.n_femto * ri2;
    if (outdoor_area_term <= 0.0) {
        throw ModelValidityError("R_c^2 - N_f R_i^2 <= 0: femtocell density leaves "
                                 "no outdoor cellular-user area");
    }

    const double rf = coverage_radius(p, d_m);
    UserCounts u;
    u.u_i = p.n_home;
    if (rf <= p.radius_indoor_m) { // inner region
        const double frac = (rf * rf) / ri2;
        u.u_a = p.n_home * frac;
        u.u_b = p.n_home * (1.0 - frac);
    } else { // outer region
        u.u_o = p.n_cellular * (rf * rf - ri2) / outdoor_area_term;
    }

    // Position averages use E[D^2] = D_th^2/2 (inner) and (R_c^2+D_th^2)/2
    // (outer); note k_geom * D_th^2 == 1/2 identically.
    const double dth2 = d.d_th_m * d.d_th_m;
    u.ubar_b = p.n_home * (1.0 - d.k_geom * dth2);
    u.ubar_o = p.n_cellular * ri2 * (d.k_geom * (dth2 + rc2) - 1.0) / outdoor_area_term;
    return u;
}

} // namespace femtodl
