// Spatially averaged SIR distributions per zone (closed forms and radial
// quadrature). Radial integrals run over r = R^2, which removes the square
// root from the annulus density and tames the integrand.

#include "femtodl/sir.hpp"
#include "femtodl/errors.hpp"
#include "femtodl/quadrature.hpp"
#include "femtodl/specfun.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace femtodl {

namespace {

using std::complex;

// The Ei connection formulas for B and H amplify round-off by 1/sqrt(z) and
// 1/z. With u = t/x both integrals depend on p1 = xy and p2 = z x^2 only, and
// for small p1, p2 the double Taylor expansion is exact arithmetic territory.

// sum_k (-p2)^k sum_j p1^j / (j! (2k + j + off))
double bh_series(double p1, double p2, int off) {
    double outer = 0.0;
    double p2k = 1.0;
    for (int k = 0; k < 200; ++k) {
        double term = 1.0;
        double inner = 1.0 / (2.0 * k + off);
        for (int j = 1; j < 80; ++j) {
            term *= p1 / j;
            const double add = term / (2.0 * k + j + off);
            inner += add;
            if (std::abs(add) < 1e-18 * std::abs(inner)) break;
        }
        const double kterm = p2k * inner;
        outer += kterm;
        if (std::abs(kterm) < 1e-18 * std::abs(outer)) break;
        p2k *= -p2;
    }
    return outer;
}

// B(x) = int_0^x e^{yt} / (z t^2 + 1) dt via Ei; w = y/sqrt(z).
double ei_b(double x, double y, double z, double w) {
    const double p1 = x * y;
    const double p2 = z * x * x;
    if (std::abs(p1) <= 0.5 && p2 <= 0.5) {
        return x * bh_series(p1, p2, 1);
    }
    const double sz = std::sqrt(z);
    if (y == 0.0) return std::atan(sz * x) / sz;
    const complex<double> e = specfun::expint_ei({p1, w});
    const complex<double> a = specfun::expint_ei({0.0, w});
    const double fr = e.real() - a.real();
    const double fi = e.imag() - a.imag();
    return (fr * std::sin(w) - fi * std::cos(w)) / sz;
}

// H(x) = int_0^x 2 t e^{yt} / (z t^2 + 1) dt; w = y/sqrt(z).
double ei_h(double x, double y, double z, double w) {
    const double p1 = x * y;
    const double p2 = z * x * x;
    if (std::abs(p1) <= 0.5 && p2 <= 0.5) {
        return 2.0 * x * x * bh_series(p1, p2, 2);
    }
    if (y == 0.0) return std::log1p(p2) / z;
    const complex<double> e = specfun::expint_ei({p1, w});
    const complex<double> a = specfun::expint_ei({0.0, w});
    const double fr = e.real() - a.real();
    const double fi = e.imag() - a.imag();
    return 2.0 * (fr * std::cos(w) + fi * std::sin(w)) / z;
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

} // namespace

const char* access_name(Access a) {
    return a == Access::Closed ? "closed" : "open";
}

bool has_closed_form(const SystemParams& p, ZoneId zone, Access access) {
    switch (zone) {
        case ZoneId::Fo:
            return access == Access::Closed ? true : p.alpha == 4.0;
        case ZoneId::Fi:
        case ZoneId::Fa:
            return p.alpha == 4.0 && (p.beta == 2.0 || p.beta == 4.0);
        case ZoneId::Fb:
            return true; // 2F1 in beta, any exponents
        default:
            return false;
    }
}

SirCdf::SirCdf(const SystemParams& p, ZoneId zone, Access access, double d_m,
               CdfBackend backend)
    : p_(p), dc_(derive_constants(p)), zone_(zone), access_(access), d_m_(d_m),
      backend_(backend) {
    if (!(d_m > 0.0)) throw std::invalid_argument("SirCdf: D must be > 0");
    if (zone == ZoneId::MacroOnly) {
        throw std::invalid_argument("SirCdf: no femtocell SIR model outside coverage");
    }

    const double rf = coverage_radius(p_, d_m);
    const double ri = p_.radius_indoor_m;
    const double da = std::pow(d_m, p_.alpha);

    switch (zone) {
        case ZoneId::Fo:
            if (!(d_m > dc_.d_th_m)) {
                throw ZoneUndefinedError("zone Fo requires D > D_th");
            }
            k_const_ = p_.p_femto_mw * p_.wall_loss * da / p_.p_macro_mw;
            r_lo_ = ri;
            r_hi_ = rf;
            break;
        case ZoneId::Fi:
            if (!(d_m > dc_.d_th_m)) {
                throw ZoneUndefinedError("zone Fi requires D > D_th");
            }
            k_const_ = p_.p_macro_mw * p_.wall_loss / (p_.p_femto_mw * da);
            r_lo_ = 0.0;
            r_hi_ = ri;
            break;
        case ZoneId::Fa:
            if (d_m > dc_.d_th_m) {
                throw ZoneUndefinedError("zone Fa requires D <= D_th");
            }
            k_const_ = p_.p_macro_mw * p_.wall_loss / (p_.p_femto_mw * da);
            r_lo_ = 0.0;
            r_hi_ = rf;
            break;
        case ZoneId::Fb:
            if (d_m > dc_.d_th_m) {
                throw ZoneUndefinedError("zone Fb requires D <= D_th");
            }
            k_const_ = p_.p_femto_mw * da / (p_.p_macro_mw * p_.wall_loss);
            r_lo_ = rf;
            r_hi_ = ri;
            break;
        default:
            break;
    }

    const double lo2 = r_lo_ * r_lo_, hi2 = r_hi_ * r_hi_;
    if (!(hi2 - lo2 > 1e-9 * hi2)) {
        throw ZoneUndefinedError("zone has (numerically) zero area at this D");
    }
    if (backend_ == CdfBackend::ClosedForm && !has_closed_form(p_, zone_, access_)) {
        throw std::invalid_argument("no closed form for these pathloss exponents");
    }
    if (backend_ == CdfBackend::Auto) {
        backend_ = has_closed_form(p_, zone_, access_) ? CdfBackend::ClosedForm
                                                       : CdfBackend::Quadrature;
    }
}

double SirCdf::operator()(double gamma) const {
    if (!(gamma > 0.0)) return 0.0;
    if (std::isinf(gamma)) return 1.0;

    const double lam = dc_.density;
    const double ca = dc_.c_alpha;
    const double alpha = p_.alpha;
    const double beta = p_.beta;
    const double L = p_.wall_loss;
    const double K = k_const_;
    const double lo2 = r_lo_ * r_lo_, hi2 = r_hi_ * r_hi_;
    const double area2 = hi2 - lo2;

    switch (zone_) {
        case ZoneId::Fo: {
            if (access_ == Access::Closed) {
                const double shot = std::exp(-lam * ca * std::pow(K * gamma, 2.0 / alpha));
                if (backend_ == CdfBackend::ClosedForm) {
                    const double fl = specfun::hyp2f1_neg(alpha, std::pow(r_lo_, alpha) / (K * gamma));
                    const double fh = specfun::hyp2f1_neg(alpha, std::pow(r_hi_, alpha) / (K * gamma));
                    return clamp01(1.0 - shot / area2 * (area2 + lo2 * fl - hi2 * fh));
                }
                const double integral = integrate(
                    [&](double r) { return 1.0 / (gamma * K * std::pow(r, -alpha / 2.0) + 1.0); },
                    lo2, hi2, kRadialQuadTol);
                return clamp01(1.0 - shot * integral / area2);
            }
            // Open access
            if (backend_ == CdfBackend::ClosedForm) { // alpha == 4
                const double y = -lam * ca * std::sqrt(gamma);
                const double z = gamma / K;
                const double w = -lam * ca * std::sqrt(K);
                return clamp01(1.0 - (ei_b(hi2, y, z, w) - ei_b(lo2, y, z, w)) / area2);
            }
            const double g2a = std::pow(gamma, 2.0 / alpha);
            const double integral = integrate(
                [&](double r) {
                    return std::exp(-r * lam * ca * g2a) /
                           (gamma / K * std::pow(r, alpha / 2.0) + 1.0);
                },
                lo2, hi2, kRadialQuadTol);
            return clamp01(1.0 - integral / area2);
        }
        case ZoneId::Fi:
        case ZoneId::Fa: {
            if (backend_ == CdfBackend::ClosedForm) { // alpha == 4, beta in {2,4}
                const double y = -lam * ca * L * std::sqrt(gamma);
                const double z = K * gamma;
                const double w = y / std::sqrt(z);
                if (beta == 2.0) {
                    return clamp01(1.0 - ei_h(r_hi_, y, z, w) / hi2);
                }
                return clamp01(1.0 - ei_b(hi2, y, z, w) / hi2);
            }
            const double shot_coef = lam * ca * std::pow(L * L * gamma, 2.0 / alpha);
            const double integral = integrate(
                [&](double r) {
                    return std::exp(-shot_coef * std::pow(r, beta / alpha)) /
                           (K * gamma * std::pow(r, beta / 2.0) + 1.0);
                },
                0.0, hi2, kRadialQuadTol);
            return clamp01(1.0 - integral / hi2);
        }
        case ZoneId::Fb: {
            const double shot =
                std::exp(-lam * ca * std::pow(L * L * K * gamma, 2.0 / alpha));
            if (backend_ == CdfBackend::ClosedForm) {
                const double fl = specfun::hyp2f1_neg(beta, std::pow(r_lo_, beta) / (K * gamma));
                const double fh = specfun::hyp2f1_neg(beta, std::pow(r_hi_, beta) / (K * gamma));
                return clamp01(1.0 - shot / area2 * (area2 + lo2 * fl - hi2 * fh));
            }
            const double integral = integrate(
                [&](double r) { return 1.0 / (gamma * K * std::pow(r, -beta / 2.0) + 1.0); },
                lo2, hi2, kRadialQuadTol);
            return clamp01(1.0 - shot * integral / area2);
        }
        default:
            return 0.0;
    }
}

namespace {

double cdf_value(const SystemParams& p, ZoneId zone, Access access, double d_m,
                 double gamma, CdfBackend backend) {
    return SirCdf(p, zone, access, d_m, backend)(gamma);
}

} // namespace

double cdf_fo_closed(const SystemParams& p, double d_m, double gamma, CdfBackend b) {
    return cdf_value(p, ZoneId::Fo, Access::Closed, d_m, gamma, b);
}
double cdf_fo_open(const SystemParams& p, double d_m, double gamma, CdfBackend b) {
    return cdf_value(p, ZoneId::Fo, Access::Open, d_m, gamma, b);
}
double cdf_fi(const SystemParams& p, double d_m, double gamma, CdfBackend b) {
    return cdf_value(p, ZoneId::Fi, Access::Closed, d_m, gamma, b);
}
double cdf_fa(const SystemParams& p, double d_m, double gamma, CdfBackend b) {
    return cdf_value(p, ZoneId::Fa, Access::Closed, d_m, gamma, b);
}
double cdf_fb(const SystemParams& p, double d_m, double gamma, CdfBackend b) {
    return cdf_value(p, ZoneId::Fb, Access::Closed, d_m, gamma, b);
}

double ccdf_at_radius(const SystemParams& p, ZoneId zone, Access access,
                      double d_m, double r_m, double gamma) {
    if (!(gamma > 0.0)) return 1.0;
    const DerivedConstants dc = derive_constants(p);
    const double lam = dc.density;
    const double ca = dc.c_alpha;
    const double da = std::pow(d_m, p.alpha);
    const double L = p.wall_loss;

    switch (zone) {
        case ZoneId::Fo: {
            const double K = p.p_femto_mw * L * da / p.p_macro_mw;
            if (access == Access::Closed) {
                return std::exp(-lam * ca * std::pow(K * gamma, 2.0 / p.alpha)) /
                       (gamma * K * std::pow(r_m, -p.alpha) + 1.0);
            }
            return std::exp(-lam * ca * std::pow(gamma, 2.0 / p.alpha) * r_m * r_m) /
                   (gamma / K * std::pow(r_m, p.alpha) + 1.0);
        }
        case ZoneId::Fi:
        case ZoneId::Fa: {
            const double K = p.p_macro_mw * L / (p.p_femto_mw * da);
            return std::exp(-lam * ca * std::pow(L * L * gamma, 2.0 / p.alpha) *
                            std::pow(r_m, 2.0 * p.beta / p.alpha)) /
                   (K * gamma * std::pow(r_m, p.beta) + 1.0);
        }
        case ZoneId::Fb: {
            const double K = p.p_femto_mw * da / (p.p_macro_mw * L);
            return std::exp(-lam * ca * std::pow(L * L * K * gamma, 2.0 / p.alpha)) /
                   (gamma * K * std::pow(r_m, -p.beta) + 1.0);
        }
        default:
            throw std::invalid_argument("ccdf_at_radius: no SIR model outside coverage");
    }
}

} // namespace femtodl
