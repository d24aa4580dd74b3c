// PPP drop-based simulator. Per drop: one user radius (or a pinned one), one
// interferer configuration around the user, n_fading joint channel draws.
// Samples are binned with integer counts, so the merged result is identical
// for any thread count and matches a serial run bit for bit.

#include "femtodl/montecarlo.hpp"
#include "femtodl/errors.hpp"
#include "femtodl/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace femtodl {

std::vector<double> default_gamma_grid() {
    std::vector<double> g;
    g.reserve(201);
    for (int i = 0; i <= 200; ++i) {
        g.push_back(std::pow(10.0, (-40.0 + 0.5 * i) / 10.0));
    }
    return g;
}

namespace {

struct ZoneModel {
    double r_lo, r_hi;        // radial support of the user position
    double sig_coef;          // numerator coefficient (channel power excluded)
    double sig_exp;           // numerator distance exponent (applied to R)
    double cross_coef;        // first denominator term coefficient
    double cross_exp;         // its distance exponent (R or D already folded)
    bool cross_uses_radius;   // whether the first term varies with R
    double field_coef;        // PPP interference coefficient (P_f L or P_f L^2)
};

ZoneModel zone_model(const SystemParams& p, const DerivedConstants& dc,
                     ZoneId zone, Access access, double d_m) {
    const double rf = coverage_radius(p, d_m);
    const double ri = p.radius_indoor_m;
    const double d_alpha = std::pow(d_m, -p.alpha);
    ZoneModel m{};
    switch (zone) {
        case ZoneId::Fo:
            if (!(d_m > dc.d_th_m)) throw ZoneUndefinedError("zone Fo requires D > D_th");
            m.r_lo = ri;
            m.r_hi = rf;
            if (access == Access::Closed) {
                // macro signal, femto loud neighbor at distance R
                m.sig_coef = p.p_macro_mw * d_alpha;
                m.sig_exp = 0.0;
                m.cross_coef = p.p_femto_mw * p.wall_loss;
                m.cross_exp = p.alpha;
                m.cross_uses_radius = true;
            } else {
                m.sig_coef = p.p_femto_mw * p.wall_loss;
                m.sig_exp = p.alpha;
                m.cross_coef = p.p_macro_mw * d_alpha;
                m.cross_exp = 0.0;
                m.cross_uses_radius = false;
            }
            m.field_coef = p.p_femto_mw * p.wall_loss;
            break;
        case ZoneId::Fi:
        case ZoneId::Fa:
            if (zone == ZoneId::Fi && !(d_m > dc.d_th_m)) {
                throw ZoneUndefinedError("zone Fi requires D > D_th");
            }
            if (zone == ZoneId::Fa && d_m > dc.d_th_m) {
                throw ZoneUndefinedError("zone Fa requires D <= D_th");
            }
            m.r_lo = 0.0;
            m.r_hi = zone == ZoneId::Fi ? ri : rf;
            m.sig_coef = p.p_femto_mw;
            m.sig_exp = p.beta;
            m.cross_coef = p.p_macro_mw * p.wall_loss * d_alpha;
            m.cross_exp = 0.0;
            m.cross_uses_radius = false;
            m.field_coef = p.p_femto_mw * p.wall_loss * p.wall_loss;
            break;
        case ZoneId::Fb:
            if (d_m > dc.d_th_m) throw ZoneUndefinedError("zone Fb requires D <= D_th");
            m.r_lo = rf;
            m.r_hi = ri;
            m.sig_coef = p.p_macro_mw * p.wall_loss * d_alpha;
            m.sig_exp = 0.0;
            m.cross_coef = p.p_femto_mw;
            m.cross_exp = p.beta;
            m.cross_uses_radius = true;
            m.field_coef = p.p_femto_mw * p.wall_loss * p.wall_loss;
            break;
        default:
            throw std::invalid_argument("empirical_cdf: no SIR model outside coverage");
    }
    return m;
}

struct DropAccumulator {
    std::vector<uint64_t> grid_counts; // first grid index with gamma_grid >= SIR
    std::vector<uint64_t> rate_counts; // rate-table interval counts
    uint64_t overflow = 0;             // SIR above the last grid point
};

} // namespace

EmpiricalCdf empirical_cdf(const SystemParams& p, const McConfig& mc, ZoneId zone,
                           Access access, double d_m,
                           std::optional<double> fixed_user_radius) {
    validate(p);
    const DerivedConstants dc = derive_constants(p);
    if (static_cast<uint64_t>(mc.n_drops) * mc.n_fading < 1) {
        throw std::invalid_argument("empirical_cdf: need at least one sample");
    }
    const double window =
        mc.window_radius_m > 0.0 ? mc.window_radius_m : 10.0 * p.radius_macro_m;
    if (window < 10.0 * p.radius_macro_m) {
        throw std::invalid_argument("empirical_cdf: window must be >= 10 R_c");
    }

    const ZoneModel zm = zone_model(p, dc, zone, access, d_m);
    const std::vector<double> grid =
        mc.gamma_grid.empty() ? default_gamma_grid() : mc.gamma_grid;
    const RateTable table = build_rate_table(p.shannon_gap, p.n_mod_levels);

    const double lo2 = zm.r_lo * zm.r_lo;
    const double hi2 = zm.r_hi * zm.r_hi;
    if (!fixed_user_radius && !(hi2 - lo2 > 1e-9 * hi2)) {
        throw ZoneUndefinedError("zone has (numerically) zero area at this D");
    }
    const double mean_pts = dc.density * std::numbers::pi * window * window;
    const double window2 = window * window;
    const bool alpha_is_4 = p.alpha == 4.0;
    const double neg_half_alpha = -p.alpha / 2.0;

    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned n_threads =
        std::max(1u, std::min(mc.threads == 0 ? (hw ? hw : 1) : mc.threads,
                              mc.n_drops == 0 ? 1u : mc.n_drops));

    std::vector<DropAccumulator> acc(n_threads);
    for (auto& a : acc) {
        a.grid_counts.assign(grid.size(), 0);
        a.rate_counts.assign(table.thresholds.size() + 1, 0);
    }

    auto worker = [&](unsigned tid) {
        DropAccumulator& a = acc[tid];
        std::vector<double> falloff; // interferer distance^{-alpha} per drop
        for (uint64_t drop = tid; drop < mc.n_drops; drop += n_threads) {
            Xoshiro256pp rng = Xoshiro256pp::for_drop(mc.seed, drop);

            // user radius with density 2r/(r_hi^2 - r_lo^2)
            const double r_user =
                fixed_user_radius ? *fixed_user_radius
                                  : std::sqrt(lo2 + (hi2 - lo2) * rng.uniform());
            const double sig_dist = zm.sig_exp == 0.0
                                        ? 1.0
                                        : std::pow(r_user, -zm.sig_exp);
            const double cross_dist =
                zm.cross_uses_radius ? std::pow(r_user, -zm.cross_exp) : 1.0;

            // PPP interferers on the window disk centered at the user
            const uint64_t n_pts = rng.poisson(mean_pts);
            falloff.clear();
            falloff.reserve(n_pts);
            for (uint64_t j = 0; j < n_pts; ++j) {
                const double d2 = window2 * rng.uniform(); // distance^2
                falloff.push_back(alpha_is_4 ? 1.0 / (d2 * d2)
                                             : std::pow(d2, neg_half_alpha));
            }

            for (uint32_t f = 0; f < mc.n_fading; ++f) {
                const double g0 = rng.exponential();
                const double h0 = rng.exponential();
                double field = 0.0;
                for (const double fo : falloff) {
                    field += rng.exponential() * fo;
                }
                const double signal = zm.sig_coef * sig_dist * g0;
                const double cross = zm.cross_coef * cross_dist * h0;
                const double sir = signal / (cross + zm.field_coef * field);

                auto it = std::lower_bound(grid.begin(), grid.end(), sir);
                if (it == grid.end()) {
                    ++a.overflow;
                } else {
                    ++a.grid_counts[static_cast<size_t>(it - grid.begin())];
                }
                auto rt = std::upper_bound(table.thresholds.begin(),
                                           table.thresholds.end(), sir);
                ++a.rate_counts[static_cast<size_t>(rt - table.thresholds.begin())];
            }
        }
    };

    if (n_threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
        for (auto& t : pool) t.join();
    }

    // integer merges are order-independent
    std::vector<uint64_t> grid_counts(grid.size(), 0);
    std::vector<uint64_t> rate_counts(table.thresholds.size() + 1, 0);
    for (const auto& a : acc) {
        for (size_t i = 0; i < grid_counts.size(); ++i) grid_counts[i] += a.grid_counts[i];
        for (size_t i = 0; i < rate_counts.size(); ++i) rate_counts[i] += a.rate_counts[i];
    }

    EmpiricalCdf out;
    out.gamma_grid = grid;
    out.n_samples = static_cast<uint64_t>(mc.n_drops) * mc.n_fading;
    out.cdf.resize(grid.size());
    uint64_t below = 0;
    for (size_t i = 0; i < grid.size(); ++i) {
        below += grid_counts[i];
        out.cdf[i] = static_cast<double>(below) / static_cast<double>(out.n_samples);
    }
    double tput = 0.0;
    for (size_t i = 0; i < table.rates.size(); ++i) {
        tput += table.rates[i] * static_cast<double>(rate_counts[i + 1]);
    }
    out.throughput_bps_hz = tput / static_cast<double>(out.n_samples);
    return out;
}

double empirical_zone_throughput(const SystemParams& p, const McConfig& mc,
                                 ZoneId zone, Access access, double d_m) {
    return empirical_cdf(p, mc, zone, access, d_m).throughput_bps_hz;
}

std::vector<uint64_t> ppp_counts_in_disk(const SystemParams& p, uint64_t seed,
                                         uint32_t n_drops, double sub_radius_m,
                                         double window_radius_m) {
    const DerivedConstants dc = derive_constants(p);
    const double window =
        window_radius_m > 0.0 ? window_radius_m : 10.0 * p.radius_macro_m;
    if (!(sub_radius_m <= window)) {
        throw std::invalid_argument("ppp_counts_in_disk: sub-region exceeds window");
    }
    const double mean = dc.density * std::numbers::pi * window * window;
    const double sub2 = sub_radius_m * sub_radius_m;
    const double window2 = window * window;
    std::vector<uint64_t> counts;
    counts.reserve(n_drops);
    for (uint32_t i = 0; i < n_drops; ++i) {
        Xoshiro256pp rng = Xoshiro256pp::for_drop(seed, i);
        const uint64_t n_pts = rng.poisson(mean);
        uint64_t inside = 0;
        for (uint64_t j = 0; j < n_pts; ++j) {
            if (window2 * rng.uniform() <= sub2) ++inside; // distance^2 draw
        }
        counts.push_back(inside);
    }
    return counts;
}

} // namespace femtodl
