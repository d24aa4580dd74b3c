#include "femtodl/throughput.hpp"
#include "femtodl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace femtodl {

RateTable build_rate_table(double shannon_gap_linear, int n_levels) {
    if (!(shannon_gap_linear > 0.0) || n_levels < 1) {
        throw std::invalid_argument("build_rate_table: need G > 0 and N >= 1");
    }
    RateTable t;
    t.thresholds.reserve(n_levels);
    t.rates.reserve(n_levels);
    for (int n = 1; n <= n_levels; ++n) {
        const double gamma_n = shannon_gap_linear * (std::pow(2.0, n) - 1.0);
        t.thresholds.push_back(gamma_n);
        t.rates.push_back(std::log2(1.0 + gamma_n / shannon_gap_linear));
    }
    return t;
}

double rate_for_sir(const RateTable& t, double gamma) {
    // highest level whose threshold is still met; outage below Gamma_1
    auto it = std::upper_bound(t.thresholds.begin(), t.thresholds.end(), gamma);
    if (it == t.thresholds.begin()) return 0.0;
    return t.rates[static_cast<size_t>(it - t.thresholds.begin()) - 1];
}

double throughput_from_cdf(const RateTable& t,
                           const std::function<double(double)>& cdf) {
    const size_t n = t.thresholds.size();
    double sum = 0.0;
    double s_lo = cdf(t.thresholds[0]);
    for (size_t i = 0; i < n; ++i) {
        const double s_hi = (i + 1 < n) ? cdf(t.thresholds[i + 1]) : 1.0;
        sum += t.rates[i] * (s_hi - s_lo);
        s_lo = s_hi;
    }
    return sum;
}

double zone_throughput(const SystemParams& p, double d_m, ZoneId zone,
                       Access access, CdfBackend backend) {
    const RateTable t = build_rate_table(p.shannon_gap, p.n_mod_levels);
    const SirCdf cdf(p, zone, access, d_m, backend);
    return throughput_from_cdf(t, [&](double g) { return cdf(g); });
}

namespace {

// Shared denominator of Theorem 1: mean number of users on the MBS under
// closed access, U_c + N_f1 * E[U_b].
double mbs_load_closed(const SystemParams& p) {
    const DerivedConstants d = derive_constants(p);
    const double dth2 = d.d_th_m * d.d_th_m;
    return p.n_cellular + d.n_f_inner * p.n_home * (1.0 - d.k_geom * dth2);
}

// Theorem 2 denominator: open access hands the averaged outer-region
// neighboring users over to their FAPs.
double mbs_load_open(const SystemParams& p) {
    const DerivedConstants d = derive_constants(p);
    const UserCounts u = user_counts(p, d.d_th_m); // averages are D-independent
    return p.n_cellular + d.n_f_inner * u.ubar_b - d.n_f_outer * u.ubar_o;
}

} // namespace

double rho_b_closed(const SystemParams& p, double d_m) {
    const DerivedConstants d = derive_constants(p);
    if (d_m > d.d_th_m) throw ZoneUndefinedError("rho_b requires D <= D_th");
    // 1 - 2 K D^2 >= 0 on D <= D_th; shave off rounding at the boundary.
    const double num = p.n_home * std::max(0.0, 1.0 - 2.0 * d.k_geom * d_m * d_m);
    return num / mbs_load_closed(p);
}

double rho_b_open(const SystemParams& p, double d_m) {
    const DerivedConstants d = derive_constants(p);
    if (d_m > d.d_th_m) throw ZoneUndefinedError("rho_b requires D <= D_th");
    const double denom = mbs_load_open(p);
    if (!(denom > 0.0)) {
        throw ModelValidityError(
            "open-access MBS load is nonpositive; the mean-field user counts "
            "(which ignore femtocell coverage overlap) left their validity region");
    }
    return p.n_home * std::max(0.0, 1.0 - 2.0 * d.k_geom * d_m * d_m) / denom;
}

double rho_o(const SystemParams& p, double d_m) {
    const DerivedConstants d = derive_constants(p);
    if (!(d_m > d.d_th_m)) throw ZoneUndefinedError("rho_o requires D > D_th");
    const double ri2 = p.radius_indoor_m * p.radius_indoor_m;
    const double rc2 = p.radius_macro_m * p.radius_macro_m;
    const double num =
        p.n_cellular * ri2 * std::max(0.0, 2.0 * d.k_geom * d_m * d_m - 1.0);
    return num / ((rc2 - p.n_femto * ri2) * mbs_load_closed(p));
}

double rho_i(const SystemParams& p, double d_m) {
    const DerivedConstants d = derive_constants(p);
    if (!(d_m > d.d_th_m)) throw ZoneUndefinedError("rho_i requires D > D_th");
    const UserCounts u = user_counts(p, d_m);
    return u.u_i / (u.u_i + u.u_o);
}

TierThroughput tier_throughput_closed(const SystemParams& p, double d_m) {
    const DerivedConstants d = derive_constants(p);
    TierThroughput out;
    out.scheme = AccessScheme::Closed;
    if (d_m <= d.d_th_m) {
        const double rb = rho_b_closed(p, d_m);
        out.rho_b = rb;
        out.home_sum = zone_throughput(p, d_m, ZoneId::Fa);
        if (rb > 1e-9) {
            out.home_sum += rb * zone_throughput(p, d_m, ZoneId::Fb);
        }
        return out; // T_c undefined: zone Fo does not exist here
    }
    out.home_sum = zone_throughput(p, d_m, ZoneId::Fi);
    const double ro = rho_o(p, d_m);
    out.rho_o = ro;
    out.cellular_sum = ro * zone_throughput(p, d_m, ZoneId::Fo, Access::Closed);
    const double u_o = user_counts(p, d_m).u_o;
    if (u_o > 0.0) out.cellular_per_user = *out.cellular_sum / u_o;
    return out;
}

TierThroughput tier_throughput_open(const SystemParams& p, double d_m) {
    const DerivedConstants d = derive_constants(p);
    TierThroughput out;
    out.scheme = AccessScheme::Open;
    if (d_m <= d.d_th_m) {
        const double rb = rho_b_open(p, d_m);
        out.rho_b = rb;
        out.home_sum = zone_throughput(p, d_m, ZoneId::Fa);
        if (rb > 1e-9) {
            out.home_sum += rb * zone_throughput(p, d_m, ZoneId::Fb);
        }
        return out;
    }
    const double ri = rho_i(p, d_m);
    out.rho_i = ri;
    out.home_sum = ri * zone_throughput(p, d_m, ZoneId::Fi);
    out.cellular_sum = (1.0 - ri) * zone_throughput(p, d_m, ZoneId::Fo, Access::Open);
    const double u_o = user_counts(p, d_m).u_o;
    if (u_o > 0.0) out.cellular_per_user = *out.cellular_sum / u_o;
    return out;
}

double network_throughput(const SystemParams& p, double d_m, AccessScheme s) {
    const TierThroughput t = s == AccessScheme::Closed ? tier_throughput_closed(p, d_m)
                                                       : tier_throughput_open(p, d_m);
    return t.home_sum + t.cellular_sum.value_or(0.0);
}

} // namespace femtodl
