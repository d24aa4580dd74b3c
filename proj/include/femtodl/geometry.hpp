#pragma once

#include "femtodl/params.hpp"

namespace femtodl {

// The four user zones around a reference femtocell plus the area outside its
// coverage. Fi/Fo exist beyond the threshold distance, Fa/Fb inside it.
enum class ZoneId {
    Fa,       // indoor, femto-served, inner region (disc radius R_f)
    Fb,       // indoor, macro-served, inner region (annulus R_f..R_i)
    Fi,       // indoor, femto-served, outer region (disc radius R_i)
    Fo,       // outdoor femto coverage, outer region (annulus R_i..R_f)
    MacroOnly // outside femtocell coverage
};

const char* zone_name(ZoneId z);

// Lemma-level coverage geometry for a FAP at distance D from the macro BS.
struct ZoneGeometry {
    double d_m = 0.0;                 // FAP-MBS distance
    double coverage_radius_m = 0.0;   // femtocell coverage radius R_f
    bool outer = false;               // outer region <=> R_f > R_i
    double center_offset_factor = 0.0;// exact circle center = factor * D
    // Radii of the annular zone in whichever region applies
    // (Fo: R_i..R_f in the outer region, Fb: R_f..R_i in the inner region).
    double annulus_inner_m = 0.0;
    double annulus_outer_m = 0.0;
};

// Expected user populations per zone (real-valued expectations, not integers;
// the throughput theorems use them inside time-fraction ratios).
struct UserCounts {
    double u_a = 0.0;     // home users in Fa (inner region)
    double u_b = 0.0;     // home users in Fb (inner region)
    double u_i = 0.0;     // home users in Fi (= U_h, outer region)
    double u_o = 0.0;     // neighboring cellular users in Fo (outer region)
    double ubar_b = 0.0;  // E[U_b] over FAP position in the inner region
    double ubar_o = 0.0;  // E[U_o] over FAP position in the outer region
};

// Coverage radius R_f(D) = kappa^{1/alpha} D / |kappa^{2/alpha} - 1|.
double coverage_radius(const SystemParams& p, double d_m);

ZoneGeometry zone_geometry(const SystemParams& p, double d_m);

// Classifies a user by distance from the FAP and indoor/outdoor location.
// Rejects inconsistent inputs (indoor beyond R_i, outdoor inside R_i).
ZoneId classify_zone(const SystemParams& p, double d_m, double r_from_fap_m,
                     bool indoor);

// Throws ModelValidityError when R_c^2 - N_f R_i^2 <= 0.
UserCounts user_counts(const SystemParams& p, double d_m);

} // namespace femtodl
