#include "femtodl/validation.hpp"

#include "femtodl/errors.hpp"
#include "femtodl/geometry.hpp"
#include "femtodl/montecarlo.hpp"
#include "femtodl/quadrature.hpp"
#include "femtodl/rng.hpp"
#include "femtodl/shared_access.hpp"
#include "femtodl/sir.hpp"
#include "femtodl/specfun.hpp"
#include "femtodl/throughput.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace femtodl {
namespace validation {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

} // namespace

double hyp2f1_reference(double s, double x) {
    if (x == 0.0) return 1.0;
    const double a = 2.0 / s;
    // t = v^{1/a} removes the endpoint singularity of t^{a-1}; for large x the
    // integrand drops from 1 near v ~ x^{-a}, so split there or the adaptive
    // rule never samples the knee.
    const auto f = [&](double v) { return 1.0 / (1.0 + x * std::pow(v, 1.0 / a)); };
    const double knee = std::pow(x, -a);
    if (knee >= 1e-3) {
        return integrate(f, 0.0, 1.0, 1e-16, 1e-13, nullptr, 20000);
    }
    // v = e^u turns the power-law tail into a well-behaved integrand
    return integrate(f, 0.0, knee, 1e-16, 1e-13, nullptr, 20000) +
           integrate([&](double u) { const double v = std::exp(u); return f(v) * v; },
                     std::log(knee), 0.0, 1e-16, 1e-13, nullptr, 20000);
}

std::complex<double> expint_ei_reference(std::complex<double> z) {
    const auto integral = integrate_complex(
        [&](double t) -> std::complex<double> {
            const std::complex<double> zt = z * t;
            if (std::abs(zt) < 1e-8) {
                return z * (1.0 + zt * 0.5 + zt * zt / 6.0);
            }
            return (std::exp(zt) - 1.0) / t;
        },
        0.0, 1.0, 1e-300, 1e-13, nullptr);
    constexpr double euler_gamma = 0.57721566490153286060651209008240243;
    return euler_gamma + std::log(z) + integral;
}

double chi_square_sf(double statistic, int dof) {
    // Regularized upper incomplete gamma Q(dof/2, x/2), series/CF split.
    const double a = 0.5 * dof;
    const double x = 0.5 * statistic;
    if (x <= 0.0) return 1.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        // P(a,x) by series, Q = 1 - P
        double term = 1.0 / a;
        double sum = term;
        double ai = a;
        for (int i = 0; i < 500; ++i) {
            ai += 1.0;
            term *= x / ai;
            sum += term;
            if (term < sum * 1e-15) break;
        }
        return 1.0 - sum * std::exp(-x + a * std::log(x) - lg);
    }
    // Q(a,x) by continued fraction (modified Lentz)
    const double tiny = 1e-290;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - lg) * h;
}

std::vector<CheckResult> check_threshold_distance(const SystemParams& p) {
    const auto t0 = Clock::now();
    const DerivedConstants d = derive_constants(p);
    const double rt = seconds_since(t0);
    CheckResult r;
    r.name = "threshold-distance";
    r.deviation = std::abs(d.d_th_m - 130.0);
    r.tolerance = 1.0;
    r.pass = r.deviation <= r.tolerance && rt < 1e-3;
    r.runtime_s = rt;
    r.detail = fmt("D_th=%.6f m (expected 130 +- 1 m)", d.d_th_m);
    return {r};
}

std::vector<CheckResult> check_center_offset(const SystemParams& p) {
    const auto t0 = Clock::now();
    const ZoneGeometry g = zone_geometry(p, 300.0);
    CheckResult r;
    r.name = "center-offset-factor";
    r.deviation = std::abs(g.center_offset_factor - 1.02);
    r.tolerance = 0.005;
    r.pass = r.deviation <= r.tolerance;
    r.runtime_s = seconds_since(t0);
    r.detail = fmt("kappa^{2/a}/(kappa^{2/a}-1)=%.6f", g.center_offset_factor);
    return {r};
}

namespace {

struct LemmaCase {
    const char* name;
    ZoneId zone;
    Access access;
    double beta;
    bool inner;
};

} // namespace

std::vector<CheckResult> check_backend_equivalence(const SystemParams& base,
                                                   const Options& o) {
    const LemmaCase cases[] = {
        {"lemma2-fo-closed a4b4", ZoneId::Fo, Access::Closed, 4.0, false},
        {"lemma2-fo-open a4b4", ZoneId::Fo, Access::Open, 4.0, false},
        {"lemma3-fi a4b4", ZoneId::Fi, Access::Closed, 4.0, false},
        {"lemma3-fi a4b2", ZoneId::Fi, Access::Closed, 2.0, false},
        {"corollary1-fa a4b4", ZoneId::Fa, Access::Closed, 4.0, true},
        {"corollary1-fa a4b2", ZoneId::Fa, Access::Closed, 2.0, true},
        {"lemma4-fb a4b4", ZoneId::Fb, Access::Closed, 4.0, true},
        {"lemma4-fb a4b2", ZoneId::Fb, Access::Closed, 2.0, true},
    };
    const int n_triples = 200;

    std::vector<CheckResult> out;
    Xoshiro256pp rng(o.seed ^ 0xBE11C0DEULL);
    for (const auto& c : cases) {
        const auto t0 = Clock::now();
        SystemParams p = base;
        p.alpha = 4.0;
        p.beta = c.beta;
        CheckResult r;
        r.name = std::string("closed-vs-quadrature ") + c.name;
        r.tolerance = 1e-8;
        double worst = 0.0;
        for (int i = 0; i < n_triples; ++i) {
            p.n_femto = 100.0 * rng.uniform();
            const DerivedConstants d = derive_constants(p);
            const double span = c.inner ? d.d_th_m - 2.0
                                        : p.radius_macro_m - d.d_th_m - 1.0;
            const double d_lo = c.inner ? 1.0 : d.d_th_m + 1.0;
            const double dist = d_lo + span * rng.uniform();
            const double gamma = std::pow(10.0, -4.0 + 10.0 * rng.uniform());
            const double closed =
                SirCdf(p, c.zone, c.access, dist, CdfBackend::ClosedForm)(gamma);
            const double quad =
                SirCdf(p, c.zone, c.access, dist, CdfBackend::Quadrature)(gamma);
            worst = std::max(worst, std::abs(closed - quad));
        }
        r.deviation = worst;
        r.pass = worst <= r.tolerance;
        r.runtime_s = seconds_since(t0);
        r.detail = fmt("max |closed - quadrature| over %g triples = %.3e",
                       double(n_triples), worst);
        out.push_back(r);
    }
    return out;
}

std::vector<CheckResult> check_mc_oracle(const SystemParams& base, const Options& o) {
    struct Combo {
        ZoneId zone;
        Access access;
        double d_m;
    };
    const Combo outer_combos[] = {
        {ZoneId::Fo, Access::Closed, 300.0}, {ZoneId::Fo, Access::Closed, 450.0},
        {ZoneId::Fo, Access::Open, 300.0},   {ZoneId::Fo, Access::Open, 450.0},
        {ZoneId::Fi, Access::Closed, 300.0}, {ZoneId::Fi, Access::Closed, 450.0},
    };
    const Combo inner_combos[] = {
        {ZoneId::Fa, Access::Closed, 100.0},
        {ZoneId::Fb, Access::Closed, 100.0},
    };

    McConfig mc;
    mc.seed = o.seed;
    mc.n_drops = o.quick ? std::min(o.mc_drops, 2000u) : o.mc_drops;
    mc.n_fading = o.mc_fading;
    mc.window_radius_m = o.mc_window_m;
    mc.threads = o.threads;

    std::vector<CheckResult> out;
    for (double n_f : {20.0, 80.0}) {
        SystemParams p = base;
        p.n_femto = n_f;
        auto run = [&](const Combo& c) {
            const auto t0 = Clock::now();
            const EmpiricalCdf emp = empirical_cdf(p, mc, c.zone, c.access, c.d_m);
            const SirCdf ana(p, c.zone, c.access, c.d_m);
            double sup = 0.0;
            for (size_t i = 0; i < emp.gamma_grid.size(); ++i) {
                sup = std::max(sup, std::abs(emp.cdf[i] - ana(emp.gamma_grid[i])));
            }
            CheckResult r;
            r.name = std::string("mc-vs-analytic ") + zone_name(c.zone) + "/" +
                     access_name(c.access) + fmt(" D=%g Nf=%g", c.d_m, n_f);
            // 0.02 is calibrated for >= 1e5 samples; reduced runs keep the
            // same z-score by scaling with the sample ratio
            const double n = static_cast<double>(emp.n_samples);
            r.tolerance = n >= 1e5 ? 0.02 : 0.02 * std::sqrt(1e5 / n);
            r.deviation = sup;
            r.pass = sup <= r.tolerance;
            r.runtime_s = seconds_since(t0);
            r.detail = fmt("sup|empirical-analytic| = %.4f at %g samples", sup,
                           double(emp.n_samples));
            out.push_back(r);
        };
        for (const auto& c : outer_combos) run(c);
        for (const auto& c : inner_combos) run(c);
    }
    return out;
}

namespace {

std::vector<double> grid_linspace(double lo, double hi, int n) {
    std::vector<double> g;
    g.reserve(n);
    for (int i = 0; i < n; ++i) {
        g.push_back(lo + (hi - lo) * (static_cast<double>(i) / (n - 1)));
    }
    return g;
}

// Strictness margin for shape comparisons on throughput curves.
constexpr double kShapeEps = 1e-9;

bool strictly_increasing(const std::vector<double>& v) {
    for (size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] > v[i - 1] + kShapeEps)) return false;
    }
    return true;
}

bool strictly_decreasing(const std::vector<double>& v) {
    for (size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] < v[i - 1] - kShapeEps)) return false;
    }
    return true;
}

bool unimodal_rise_fall(const std::vector<double>& v) {
    size_t peak = 0;
    for (size_t i = 1; i < v.size(); ++i) {
        if (v[i] > v[peak]) peak = i;
    }
    if (peak == 0 || peak + 1 == v.size()) return false;
    for (size_t i = 1; i <= peak; ++i) {
        if (!(v[i] >= v[i - 1] - kShapeEps)) return false;
    }
    for (size_t i = peak + 1; i < v.size(); ++i) {
        if (!(v[i] <= v[i - 1] + kShapeEps)) return false;
    }
    return true;
}

} // namespace

std::vector<CheckResult> check_figure_shapes(const SystemParams& base) {
    std::vector<CheckResult> out;
    const DerivedConstants dc = derive_constants(base);
    const auto inner = grid_linspace(10.0, dc.d_th_m, 50);
    const auto outer = grid_linspace(dc.d_th_m + 2.0, base.radius_macro_m, 50);

    auto push = [&](const std::string& name, bool ok, const std::string& detail,
                    double rt) {
        CheckResult r;
        r.name = "shape " + name;
        r.pass = ok;
        r.deviation = ok ? 0.0 : 1.0;
        r.tolerance = 0.0;
        r.runtime_s = rt;
        r.detail = detail;
        out.push_back(r);
    };

    { // T_i strictly increasing in D (both femtocell densities)
        for (double n_f : {20.0, 80.0}) {
            const auto t0 = Clock::now();
            SystemParams p = base;
            p.n_femto = n_f;
            std::vector<double> ti;
            for (double d : outer) ti.push_back(zone_throughput(p, d, ZoneId::Fi));
            push(fmt("T_i increasing (Nf=%g)", n_f), strictly_increasing(ti),
                 fmt("range %.4f..%.4f bps/Hz", ti.front(), ti.back()),
                 seconds_since(t0));
        }
    }
    {
        const auto t0 = Clock::now();
        // stop short of D_th where the Fb annulus degenerates to zero area
        const auto inner_fb = grid_linspace(10.0, dc.d_th_m - 1.0, 50);
        std::vector<double> tb;
        for (double d : inner_fb) {
            tb.push_back(zone_throughput(base, d, ZoneId::Fb));
        }
        push("T_b decreasing", strictly_decreasing(tb),
             fmt("range %.4f..%.4f bps/Hz", tb.front(), tb.back()),
             seconds_since(t0));
    }
    {
        const auto t0 = Clock::now();
        std::vector<double> toca;
        for (double d : outer) {
            toca.push_back(zone_throughput(base, d, ZoneId::Fo, Access::Closed));
        }
        push("T_o^CA decreasing", strictly_decreasing(toca),
             fmt("range %.4f..%.4f bps/Hz", toca.front(), toca.back()),
             seconds_since(t0));
    }
    {
        const auto t0 = Clock::now();
        std::vector<double> tooa;
        for (double d : outer) {
            tooa.push_back(zone_throughput(base, d, ZoneId::Fo, Access::Open));
        }
        push("T_o^OA unimodal", unimodal_rise_fall(tooa),
             fmt("max %.4f bps/Hz", *std::max_element(tooa.begin(), tooa.end())),
             seconds_since(t0));
    }
    {
        const auto t0 = Clock::now();
        std::vector<double> th_in, th_out;
        for (double d : inner) th_in.push_back(tier_throughput_closed(base, d).home_sum);
        for (double d : outer) th_out.push_back(tier_throughput_closed(base, d).home_sum);
        push("T_h^CA decreasing then increasing",
             strictly_decreasing(th_in) && strictly_increasing(th_out),
             fmt("inner %.4f->%.4f, outer rises to %.4f", th_in.front(),
                 th_in.back(), th_out.back()),
             seconds_since(t0));
    }
    {
        const auto t0 = Clock::now();
        bool ok = true;
        double worst = 0.0;
        for (double d : outer) {
            const double tca = network_throughput(base, d, AccessScheme::Closed);
            const double toa = network_throughput(base, d, AccessScheme::Open);
            worst = std::min(worst, tca - toa);
            if (tca < toa - 1e-12) ok = false;
        }
        push("T^CA >= T^OA (outer)", ok, fmt("min(T^CA - T^OA) = %.6f", worst),
             seconds_since(t0));
    }
    return out;
}

std::vector<CheckResult> check_starvation(const SystemParams& base) {
    std::vector<CheckResult> out;
    const DerivedConstants dc = derive_constants(base);
    const auto outer = grid_linspace(dc.d_th_m + 2.0, base.radius_macro_m, 50);
    for (double u_c : {20.0, 100.0}) {
        const auto t0 = Clock::now();
        SystemParams p = base;
        p.n_femto = 20.0;
        p.n_cellular = u_c;
        double worst = 0.0;
        for (double d : outer) {
            const TierThroughput t = tier_throughput_closed(p, d);
            worst = std::max(worst, t.cellular_sum.value_or(0.0));
        }
        CheckResult r;
        r.name = fmt("closed-access starvation (Uc=%g)", u_c);
        r.tolerance = 0.003;
        r.deviation = worst;
        r.pass = worst < r.tolerance;
        r.runtime_s = seconds_since(t0);
        r.detail = fmt("max_D T_c^CA = %.6f bps/Hz", worst);
        out.push_back(r);
    }
    return out;
}

std::vector<CheckResult> check_prop1_vs_grid(const SystemParams& base,
                                             const Options& o) {
    const auto t0 = Clock::now();
    Xoshiro256pp rng(o.seed ^ 0x0E7A0E7AULL);
    const double resolution = 1e-3;
    int tested = 0;
    double worst_eta = 0.0;
    double worst_obj = 0.0;
    int attempts = 0;
    while (tested < 100 && attempts < 10000) {
        ++attempts;
        SystemParams p = base;
        p.n_femto = 1.0 + 99.0 * rng.uniform();
        p.n_cellular = 1.0 + 299.0 * rng.uniform();
        p.n_home = 1.0 + std::floor(4.0 * rng.uniform());
        p.qos_omega_c = 0.05 * rng.uniform();
        p.qos_omega_h = 0.5 * rng.uniform();
        p.qos_epsilon = rng.uniform();
        const DerivedConstants d = derive_constants(p);
        const double dist =
            d.d_th_m + 2.0 + (p.radius_macro_m - d.d_th_m - 2.0) * rng.uniform();

        const SharedAccessResult closed = optimal_eta(p, dist);
        if (!closed.feasible || closed.premise_violated) continue;
        const SharedAccessResult grid = grid_search_eta(p, dist, resolution);
        if (!grid.feasible) continue;
        ++tested;
        worst_eta = std::max(worst_eta, std::abs(*closed.eta_star - *grid.eta_star));
        // closed-form optimum must dominate every feasible grid point
        worst_obj = std::max(worst_obj,
                             grid.network_throughput - closed.network_throughput);
    }
    CheckResult r;
    r.name = "prop1-vs-grid-search";
    r.tolerance = resolution;
    r.deviation = worst_eta;
    r.pass = tested == 100 && worst_eta <= resolution && worst_obj <= 1e-9;
    r.runtime_s = seconds_since(t0);
    r.detail = fmt("%g feasible draws, max|eta gap|=%.2e, max obj gap=%.2e",
                   double(tested), worst_eta, worst_obj);
    return {r};
}

std::vector<CheckResult> check_shared_ordering(const SystemParams& base) {
    std::vector<CheckResult> out;
    SystemParams p = base;
    p.n_femto = 80.0;
    p.n_cellular = 100.0;
    p.qos_omega_c = 0.01;
    p.qos_omega_h = 0.1;
    const DerivedConstants dc = derive_constants(p);
    const auto outer = grid_linspace(dc.d_th_m + 2.0, p.radius_macro_m, 50);

    {
        const auto t0 = Clock::now();
        SystemParams ps = p;
        ps.qos_epsilon = 0.01;
        bool ok = true;
        double worst = 0.0;
        int feasible_points = 0;
        for (double d : outer) {
            const SharedAccessResult r = optimal_eta(ps, d);
            if (!r.feasible) continue;
            ++feasible_points;
            const double toa = network_throughput(ps, d, AccessScheme::Open);
            worst = std::min(worst, r.network_throughput - toa);
            if (r.network_throughput < toa - 1e-9) ok = false;
        }
        CheckResult r;
        r.name = "shared>=open (eps=0.01)";
        r.pass = ok && feasible_points > 0;
        r.deviation = -worst;
        r.tolerance = 1e-9;
        r.runtime_s = seconds_since(t0);
        r.detail = fmt("min(T^SA-T^OA)=%.6f over %g feasible D", worst,
                       double(feasible_points));
        out.push_back(r);
    }
    {
        const auto t0 = Clock::now();
        SystemParams ps = p;
        ps.qos_epsilon = 0.1;
        bool found_below = false;
        double gap = 0.0;
        for (double d : outer) {
            const SharedAccessResult r = optimal_eta(ps, d);
            if (!r.feasible) continue;
            const double toa = network_throughput(ps, d, AccessScheme::Open);
            if (r.network_throughput < toa - 1e-9) {
                found_below = true;
                gap = std::min(gap, r.network_throughput - toa);
            }
        }
        CheckResult r;
        r.name = "shared<open somewhere (eps=0.1)";
        r.pass = found_below;
        r.deviation = found_below ? -gap : 0.0;
        r.tolerance = 0.0;
        r.runtime_s = seconds_since(t0);
        r.detail = fmt("largest shortfall %.6f bps/Hz", -gap);
        out.push_back(r);
    }
    {
        const auto t0 = Clock::now();
        SystemParams ps = p;
        ps.qos_epsilon = 0.01;
        const SharedAccessResult r450 = optimal_eta(ps, 450.0);
        const double toa = network_throughput(ps, 450.0, AccessScheme::Open);
        const double ratio = r450.network_throughput / toa;
        CheckResult r;
        r.name = "cell-edge shared/open ratio";
        r.pass = r450.feasible && ratio > 1.5;
        r.deviation = ratio;
        r.tolerance = 1.5;
        r.runtime_s = seconds_since(t0);
        r.detail = fmt("T^SA/T^OA at 450 m = %.3f", ratio);
        out.push_back(r);
    }
    return out;
}

std::vector<CheckResult> check_specfun(const Options& o) {
    std::vector<CheckResult> out;
    {
        const auto t0 = Clock::now();
        Xoshiro256pp rng(o.seed ^ 0x2F1F2F1ULL);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double s = 2.0 + 6.0 * rng.uniform();
            const double x = std::pow(10.0, -6.0 + 14.0 * rng.uniform());
            const double got = specfun::hyp2f1_neg(s, x);
            const double ref = hyp2f1_reference(s, x);
            worst = std::max(worst, std::abs(got - ref) / std::abs(ref));
        }
        CheckResult r;
        r.name = "hyp2f1 vs quadrature oracle";
        r.tolerance = 1e-9;
        r.deviation = worst;
        r.pass = worst <= r.tolerance;
        r.runtime_s = seconds_since(t0);
        r.detail = fmt("max rel err over 1000 draws = %.2e", worst);
        out.push_back(r);
    }
    {
        const auto t0 = Clock::now();
        Xoshiro256pp rng(o.seed ^ 0xE1E1E1ULL);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double mag = std::pow(10.0, -3.0 + 4.5 * rng.uniform()); // up to ~30
            const double arg = (2.0 * rng.uniform() - 1.0) * 3.1;
            const std::complex<double> z = std::polar(mag, arg);
            const std::complex<double> got = specfun::expint_ei(z);
            const std::complex<double> ref = expint_ei_reference(z);
            worst = std::max(worst, std::abs(got - ref) / std::abs(ref));
        }
        const double ei1 = specfun::expint_ei_real(1.0);
        const double ei1_dev = std::abs(ei1 - 1.8951178163559368);
        CheckResult r;
        r.name = "expint-ei vs contour oracle";
        r.tolerance = 1e-9;
        r.deviation = std::max(worst, ei1_dev);
        r.pass = r.deviation <= r.tolerance;
        r.runtime_s = seconds_since(t0);
        r.detail = fmt("max rel err = %.2e, |Ei(1)-ref| = %.2e", worst, ei1_dev);
        out.push_back(r);
    }
    return out;
}

std::vector<CheckResult> run_all(const SystemParams& p, const Options& o) {
    std::vector<CheckResult> all;
    auto absorb = [&](std::vector<CheckResult> v) {
        for (auto& r : v) all.push_back(std::move(r));
    };
    absorb(check_threshold_distance(p));
    absorb(check_center_offset(p));
    absorb(check_backend_equivalence(p, o));
    absorb(check_mc_oracle(p, o));
    absorb(check_figure_shapes(p));
    absorb(check_starvation(p));
    absorb(check_prop1_vs_grid(p, o));
    absorb(check_shared_ordering(p));
    absorb(check_specfun(o));
    return all;
}

} // namespace validation
} // namespace femtodl
