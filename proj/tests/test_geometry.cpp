#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "femtodl/errors.hpp"
#include "femtodl/geometry.hpp"
#include "femtodl/rng.hpp"

#include <cmath>
#include <numbers>

using namespace femtodl;

namespace {

SystemParams table1() {
    SystemParams p;
    p.p_macro_mw = std::pow(10.0, 4.3);
    p.p_femto_mw = std::pow(10.0, 1.3);
    p.wall_loss = 0.5;
    p.alpha = 4.0;
    p.beta = 4.0;
    p.radius_macro_m = 500.0;
    p.radius_indoor_m = 20.0;
    p.n_femto = 20.0;
    p.n_cellular = 20.0;
    p.n_home = 1.0;
    p.shannon_gap = std::pow(10.0, 0.3);
    p.n_mod_levels = 8;
    p.qos_omega_c = 0.01;
    p.qos_omega_h = 0.1;
    p.qos_epsilon = 0.01;
    return p;
}

} // namespace

TEST_CASE("coverage radius: threshold round trip and linearity") {
    const SystemParams p = table1();
    const DerivedConstants d = derive_constants(p);

    // R_f(D_th) == R_i within 1e-9 relative
    CHECK(std::abs(coverage_radius(p, d.d_th_m) - p.radius_indoor_m) <
          1e-9 * p.radius_indoor_m);

    // linear in D: doubling the threshold doubles the radius
    CHECK(coverage_radius(p, 2.0 * d.d_th_m) ==
          doctest::Approx(2.0 * p.radius_indoor_m).epsilon(1e-12));
    // paper-rounded variant of the same statement
    CHECK(coverage_radius(p, 260.0) == doctest::Approx(40.0).epsilon(0.03));

    // strictly increasing
    double prev = 0.0;
    for (double dm : {10.0, 50.0, 130.0, 260.0, 499.0}) {
        const double rf = coverage_radius(p, dm);
        CHECK(rf > prev);
        prev = rf;
    }
}

TEST_CASE("center offset factor matches the published 1.02") {
    const SystemParams p = table1();
    const ZoneGeometry g = zone_geometry(p, 300.0);
    CHECK(std::abs(g.center_offset_factor - 1.02) < 0.005);
}

TEST_CASE("exact coverage circle is the 0 dB SIR contour") {
    const SystemParams p = table1();
    Xoshiro256pp rng(4711);
    for (double d_m : {40.0, 131.0, 300.0, 480.0}) {
        const ZoneGeometry g = zone_geometry(p, d_m);
        const double cx = g.center_offset_factor * d_m; // MBS at origin, FAP at (D,0)
        for (int i = 0; i < 200; ++i) {
            const double th = 2.0 * std::numbers::pi * rng.uniform();
            const double x = cx + g.coverage_radius_m * std::cos(th);
            const double y = g.coverage_radius_m * std::sin(th);
            const double dm2 = x * x + y * y;
            const double df2 = (x - d_m) * (x - d_m) + y * y;
            const double pr_macro = p.p_macro_mw * std::pow(dm2, -p.alpha / 2.0);
            const double pr_femto =
                p.p_femto_mw * p.wall_loss * std::pow(df2, -p.alpha / 2.0);
            CHECK(std::abs(pr_macro - pr_femto) / pr_macro < 1e-9);
        }
    }
}

TEST_CASE("zone classification follows the four-zone definitions") {
    const SystemParams p = table1();
    const DerivedConstants d = derive_constants(p);

    const double outer_d = 300.0; // R_f ~ 45.9 > R_i
    const double rf_outer = coverage_radius(p, outer_d);
    CHECK(classify_zone(p, outer_d, 10.0, true) == ZoneId::Fi);
    CHECK(classify_zone(p, outer_d, 0.5 * (p.radius_indoor_m + rf_outer), false) ==
          ZoneId::Fo);
    CHECK(classify_zone(p, outer_d, rf_outer + 5.0, false) == ZoneId::MacroOnly);

    const double inner_d = 100.0; // R_f ~ 15.3 < R_i
    const double rf_inner = coverage_radius(p, inner_d);
    CHECK(classify_zone(p, inner_d, 0.5 * rf_inner, true) == ZoneId::Fa);
    CHECK(classify_zone(p, inner_d, 0.5 * (rf_inner + p.radius_indoor_m), true) ==
          ZoneId::Fb);
    CHECK(classify_zone(p, inner_d, 30.0, false) == ZoneId::MacroOnly);

    CHECK(zone_geometry(p, outer_d).outer);
    CHECK(!zone_geometry(p, inner_d).outer);
    CHECK(zone_geometry(p, inner_d).annulus_inner_m == rf_inner);
    CHECK(zone_geometry(p, inner_d).annulus_outer_m == p.radius_indoor_m);

    // inconsistent indoor/outdoor flags
    CHECK_THROWS_AS((void)classify_zone(p, outer_d, 25.0, true), std::invalid_argument);
    CHECK_THROWS_AS((void)classify_zone(p, outer_d, 5.0, false), std::invalid_argument);

    // region boundary consistency: outer <=> R_f > R_i
    CHECK(coverage_radius(p, d.d_th_m + 1.0) > p.radius_indoor_m);
    CHECK(coverage_radius(p, d.d_th_m - 1.0) < p.radius_indoor_m);
}

TEST_CASE("zone areas match Monte Carlo fractions") {
    const SystemParams p = table1();
    Xoshiro256pp rng(4712);
    for (double d_m : {90.0, 320.0}) {
        const ZoneGeometry g = zone_geometry(p, d_m);
        const double box = 2.0 * std::max(g.coverage_radius_m, p.radius_indoor_m);
        const int n = 200000;
        int counts[5] = {0, 0, 0, 0, 0};
        for (int i = 0; i < n; ++i) {
            const double x = box * (2.0 * rng.uniform() - 1.0);
            const double y = box * (2.0 * rng.uniform() - 1.0);
            const double r = std::hypot(x, y);
            const bool indoor = r <= p.radius_indoor_m;
            ++counts[static_cast<int>(classify_zone(p, d_m, r, indoor))];
        }
        const double cell = 4.0 * box * box; // sampling square area
        auto expect_frac = [&](double area) { return area / cell; };
        const double pi = std::numbers::pi;
        double areas[4] = {0, 0, 0, 0};
        if (g.outer) {
            areas[static_cast<int>(ZoneId::Fi)] = pi * p.radius_indoor_m * p.radius_indoor_m;
            areas[static_cast<int>(ZoneId::Fo)] =
                pi * (g.coverage_radius_m * g.coverage_radius_m -
                      p.radius_indoor_m * p.radius_indoor_m);
        } else {
            areas[static_cast<int>(ZoneId::Fa)] =
                pi * g.coverage_radius_m * g.coverage_radius_m;
            areas[static_cast<int>(ZoneId::Fb)] =
                pi * (p.radius_indoor_m * p.radius_indoor_m -
                      g.coverage_radius_m * g.coverage_radius_m);
        }
        for (int z = 0; z < 4; ++z) {
            if (areas[z] == 0.0) {
                CHECK(counts[z] == 0);
                continue;
            }
            const double want = expect_frac(areas[z]);
            const double got = static_cast<double>(counts[z]) / n;
            const double sigma = std::sqrt(want * (1.0 - want) / n);
            CHECK(std::abs(got - want) < 3.0 * sigma + 1e-12);
        }
    }
}

TEST_CASE("user counts: boundary values and consistency") {
    const SystemParams p = table1();
    const DerivedConstants d = derive_constants(p);

    // both boundary zones vanish at the threshold
    const UserCounts at_th = user_counts(p, d.d_th_m);
    CHECK(std::abs(at_th.u_b) < 1e-9);
    CHECK(std::abs(at_th.u_o) < 1e-9);

    // all home users sit in Fb when the FAP is at the MBS
    const UserCounts at0 = user_counts(p, 0.0);
    CHECK(at0.u_b == doctest::Approx(p.n_home).epsilon(1e-12));
    CHECK(at0.u_a == doctest::Approx(0.0).epsilon(1e-12));

    // U_h = U_a + U_b in the inner region
    const UserCounts inner = user_counts(p, 70.0);
    CHECK(inner.u_a + inner.u_b == doctest::Approx(p.n_home).epsilon(1e-12));
    CHECK(inner.u_a >= 0.0);
    CHECK(inner.u_b >= 0.0);
    CHECK(inner.u_b <= p.n_home);

    // position averages: E[U_b] = U_h/2 exactly (k_geom D_th^2 == 1/2)
    CHECK(inner.ubar_b == doctest::Approx(0.5 * p.n_home).epsilon(1e-12));
    CHECK(inner.ubar_o > 0.0);

    // unphysical density rejected
    SystemParams dense = p;
    dense.n_femto = 700.0; // N_f R_i^2 > R_c^2
    CHECK_THROWS_AS((void)user_counts(dense, 300.0), ModelValidityError);
}

TEST_CASE("U_o matches a uniform-drop area-fraction oracle") {
    const SystemParams p = table1();
    const UserCounts u = user_counts(p, 300.0);
    const ZoneGeometry g = zone_geometry(p, 300.0);

    // 1e6 uniform points in the macrocell disc around the MBS; the reference
    // FAP sits at (300, 0) and its annulus lies fully inside the cell here.
    Xoshiro256pp rng(4713);
    const int n = 1000000;
    int in_annulus = 0;
    for (int i = 0; i < n; ++i) {
        const double r = p.radius_macro_m * std::sqrt(rng.uniform());
        const double th = 2.0 * std::numbers::pi * rng.uniform();
        const double x = r * std::cos(th) - 300.0;
        const double y = r * std::sin(th);
        const double rf = std::hypot(x, y);
        if (rf > p.radius_indoor_m && rf <= g.coverage_radius_m) ++in_annulus;
    }
    const double frac = static_cast<double>(in_annulus) / n;
    const double cell_area = std::numbers::pi * p.radius_macro_m * p.radius_macro_m;
    const double outdoor_area =
        cell_area - p.n_femto * std::numbers::pi * p.radius_indoor_m * p.radius_indoor_m;
    const double u_o_mc = p.n_cellular * frac * cell_area / outdoor_area;

    const double sigma = p.n_cellular * cell_area / outdoor_area *
                         std::sqrt(frac * (1.0 - frac) / n);
    CHECK(std::abs(u_o_mc - u.u_o) < 3.0 * sigma);
}
