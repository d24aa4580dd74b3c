#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "femtodl/errors.hpp"
#include "femtodl/montecarlo.hpp"
#include "femtodl/sir.hpp"
#include "femtodl/validation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

using namespace femtodl;

namespace {

SystemParams table1(double n_femto = 20.0) {
    SystemParams p;
    p.p_macro_mw = std::pow(10.0, 4.3);
    p.p_femto_mw = std::pow(10.0, 1.3);
    p.wall_loss = 0.5;
    p.alpha = 4.0;
    p.beta = 4.0;
    p.radius_macro_m = 500.0;
    p.radius_indoor_m = 20.0;
    p.n_femto = n_femto;
    p.n_cellular = 20.0;
    p.n_home = 1.0;
    p.shannon_gap = std::pow(10.0, 0.3);
    p.n_mod_levels = 8;
    p.qos_omega_c = 0.01;
    p.qos_omega_h = 0.1;
    p.qos_epsilon = 0.01;
    return p;
}

double sup_distance(const EmpiricalCdf& emp, const SirCdf& ana) {
    double sup = 0.0;
    for (size_t i = 0; i < emp.gamma_grid.size(); ++i) {
        sup = std::max(sup, std::abs(emp.cdf[i] - ana(emp.gamma_grid[i])));
    }
    return sup;
}

} // namespace

TEST_CASE("identical seed gives bit-identical results, any thread count") {
    const SystemParams p = table1();
    McConfig mc;
    mc.seed = 99;
    mc.n_drops = 500;
    mc.n_fading = 4;

    mc.threads = 1;
    const EmpiricalCdf serial = empirical_cdf(p, mc, ZoneId::Fo, Access::Closed, 300.0);
    mc.threads = 2;
    const EmpiricalCdf partwo = empirical_cdf(p, mc, ZoneId::Fo, Access::Closed, 300.0);
    mc.threads = 7;
    const EmpiricalCdf parmany = empirical_cdf(p, mc, ZoneId::Fo, Access::Closed, 300.0);

    REQUIRE(serial.cdf.size() == partwo.cdf.size());
    for (size_t i = 0; i < serial.cdf.size(); ++i) {
        CHECK(serial.cdf[i] == partwo.cdf[i]);
        CHECK(serial.cdf[i] == parmany.cdf[i]);
    }
    CHECK(serial.throughput_bps_hz == partwo.throughput_bps_hz);
    CHECK(serial.throughput_bps_hz == parmany.throughput_bps_hz);

    // and a different seed gives a different draw
    mc.seed = 100;
    const EmpiricalCdf other = empirical_cdf(p, mc, ZoneId::Fo, Access::Closed, 300.0);
    CHECK(other.cdf != serial.cdf);
}

TEST_CASE("PPP counts pass a chi-square goodness-of-fit test") {
    const SystemParams p = table1(); // lambda pi (R_c/2)^2 = 5 expected points
    int passes = 0;
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        const auto counts = ppp_counts_in_disk(p, seed, 400, 250.0);
        const double mean = 5.0;
        // expected frequencies, tails pooled to keep e_k >= 5
        std::map<int, int> observed;
        for (uint64_t c : counts) ++observed[static_cast<int>(std::min<uint64_t>(c, 12))];
        double stat = 0.0;
        int bins = 0;
        double pmf = std::exp(-mean); // k = 0
        double e_acc = 0.0;
        int o_acc = 0;
        for (int k = 0; k <= 12; ++k) {
            double e_k = 400.0 * pmf;
            if (k == 12) {
                // tail: everything at or above 12
                double tail = 1.0;
                double q = std::exp(-mean);
                for (int j = 0; j < 12; ++j) {
                    tail -= q;
                    q *= mean / (j + 1);
                }
                e_k = 400.0 * tail;
            }
            e_acc += e_k;
            o_acc += observed.count(k) ? observed[k] : 0;
            if (e_acc >= 5.0 || k == 12) {
                stat += (o_acc - e_acc) * (o_acc - e_acc) / e_acc;
                ++bins;
                e_acc = 0.0;
                o_acc = 0;
            }
            pmf *= mean / (k + 1);
        }
        const double p_value = validation::chi_square_sf(stat, bins - 1);
        if (p_value > 0.01) ++passes;
    }
    CHECK(passes >= 19);
}

TEST_CASE("window truncation beyond 10 R_c is immaterial") {
    SystemParams p = table1(5.0);
    McConfig mc;
    mc.seed = 7;
    mc.n_drops = 150000;
    mc.n_fading = 1;
    mc.gamma_grid = {0.25, 1.0, 4.0};

    const double fixed_r = 30.0;
    const EmpiricalCdf w10 =
        empirical_cdf(p, mc, ZoneId::Fo, Access::Closed, 300.0, fixed_r);
    mc.window_radius_m = 20.0 * p.radius_macro_m;
    const EmpiricalCdf w20 =
        empirical_cdf(p, mc, ZoneId::Fo, Access::Closed, 300.0, fixed_r);
    for (size_t i = 0; i < w10.cdf.size(); ++i) {
        CHECK(std::abs(w10.cdf[i] - w20.cdf[i]) < 0.005);
    }

    // shrinking the window below 10 R_c violates the config contract
    mc.window_radius_m = 2.0 * p.radius_macro_m;
    CHECK_THROWS_AS(
        (void)empirical_cdf(p, mc, ZoneId::Fo, Access::Closed, 300.0, fixed_r),
        std::invalid_argument);
}

TEST_CASE("no interferers, fixed radius: CCDF is the single Laplace term") {
    SystemParams p = table1(0.0);
    McConfig mc;
    mc.seed = 11;
    mc.n_drops = 20000;
    mc.n_fading = 5;
    mc.gamma_grid = {0.1, 0.5, 1.0, 3.0, 10.0};

    const double r = 18.0;
    const double k_const =
        p.p_femto_mw * std::pow(100.0, p.alpha) / (p.p_macro_mw * p.wall_loss);
    const EmpiricalCdf emp =
        empirical_cdf(p, mc, ZoneId::Fb, Access::Closed, 100.0, r);
    for (size_t i = 0; i < emp.gamma_grid.size(); ++i) {
        const double g = emp.gamma_grid[i];
        const double want_ccdf = 1.0 / (g * k_const * std::pow(r, -p.beta) + 1.0);
        const double got_ccdf = 1.0 - emp.cdf[i];
        const double sigma =
            std::sqrt(want_ccdf * (1.0 - want_ccdf) / double(emp.n_samples));
        CHECK(std::abs(got_ccdf - want_ccdf) < 3.0 * sigma + 1e-9);
    }
}

TEST_CASE("fixed radius with interference matches the Laplace product") {
    const SystemParams p = table1(20.0);
    McConfig mc;
    mc.seed = 13;
    mc.n_drops = 40000;
    mc.n_fading = 2;
    mc.gamma_grid = {0.2, 1.0, 5.0};

    const double r = 35.0;
    const EmpiricalCdf emp =
        empirical_cdf(p, mc, ZoneId::Fo, Access::Closed, 300.0, r);
    for (size_t i = 0; i < emp.gamma_grid.size(); ++i) {
        const double g = emp.gamma_grid[i];
        const double want = ccdf_at_radius(p, ZoneId::Fo, Access::Closed, 300.0, r, g);
        const double got = 1.0 - emp.cdf[i];
        const double sigma = std::sqrt(want * (1.0 - want) / double(emp.n_samples));
        // drops share interferer configurations; allow the correlation factor
        CHECK(std::abs(got - want) < 3.0 * sigma * std::sqrt(double(mc.n_fading)) + 1e-9);
    }
}

TEST_CASE("empirical CDF tracks the analytic CDF (reduced-sample smoke)") {
    // acceptance runs >= 1e5 samples at 0.02; here 2e4 samples with the
    // tolerance scaled by sqrt(1e5/2e4)
    const SystemParams p = table1(20.0);
    McConfig mc;
    mc.seed = 17;
    mc.n_drops = 4000;
    mc.n_fading = 5;
    const EmpiricalCdf emp = empirical_cdf(p, mc, ZoneId::Fi, Access::Closed, 300.0);
    const SirCdf ana(p, ZoneId::Fi, Access::Closed, 300.0);
    CHECK(sup_distance(emp, ana) < 0.045);
}

TEST_CASE("MC oracle holds across seeds") {
    const SystemParams p = table1(20.0);
    const SirCdf ana(p, ZoneId::Fo, Access::Closed, 300.0);
    int passes = 0;
    for (uint64_t seed = 100; seed < 120; ++seed) {
        McConfig mc;
        mc.seed = seed;
        mc.n_drops = 4000;
        mc.n_fading = 5;
        const EmpiricalCdf emp = empirical_cdf(p, mc, ZoneId::Fo, Access::Closed, 300.0);
        if (sup_distance(emp, ana) <= 0.045) ++passes;
    }
    CHECK(passes >= 19);
}

TEST_CASE("variance halves when the per-drop fading count doubles") {
    // iid regime (no interferers, pinned radius) where 1/n holds exactly
    SystemParams p = table1(0.0);
    const double r = 15.0;
    const double gamma = 1.0;

    auto estimate_var = [&](uint32_t fading) {
        std::vector<double> estimates;
        for (uint64_t seed = 500; seed < 540; ++seed) {
            McConfig mc;
            mc.seed = seed;
            mc.n_drops = 50;
            mc.n_fading = fading;
            mc.gamma_grid = {gamma};
            const EmpiricalCdf e =
                empirical_cdf(p, mc, ZoneId::Fb, Access::Closed, 100.0, r);
            estimates.push_back(e.cdf[0]);
        }
        double mean = 0.0;
        for (double v : estimates) mean += v;
        mean /= estimates.size();
        double var = 0.0;
        for (double v : estimates) var += (v - mean) * (v - mean);
        return var / (estimates.size() - 1);
    };

    const double v1 = estimate_var(20);
    const double v2 = estimate_var(40);
    CHECK(v1 / v2 > 1.3);
    CHECK(v1 / v2 < 3.1);
}

TEST_CASE("empirical throughput agrees with the analytic zone throughput") {
    const SystemParams p = table1(20.0);
    McConfig mc;
    mc.seed = 23;
    mc.n_drops = 20000;
    mc.n_fading = 5;
    const double got = empirical_zone_throughput(p, mc, ZoneId::Fi, Access::Closed, 300.0);
    const double want = zone_throughput(p, 300.0, ZoneId::Fi);
    CHECK(std::abs(got - want) < 0.05);
}

TEST_CASE("zone preconditions propagate") {
    const SystemParams p = table1();
    McConfig mc;
    mc.n_drops = 10;
    mc.n_fading = 1;
    CHECK_THROWS_AS((void)empirical_cdf(p, mc, ZoneId::Fo, Access::Closed, 50.0),
                    ZoneUndefinedError);
    CHECK_THROWS_AS((void)empirical_cdf(p, mc, ZoneId::Fa, Access::Closed, 300.0),
                    ZoneUndefinedError);
    CHECK_THROWS_AS(
        (void)empirical_cdf(p, mc, ZoneId::MacroOnly, Access::Closed, 300.0),
        std::invalid_argument);
}
