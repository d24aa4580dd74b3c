#pragma once

#include "femtodl/geometry.hpp"
#include "femtodl/params.hpp"

namespace femtodl {

enum class Access { Closed, Open };

enum class CdfBackend {
    Auto,       // closed form when available for (zone, alpha, beta), else quadrature
    ClosedForm, // special-function form; throws if none exists for the exponents
    Quadrature  // adaptive Gauss-Kronrod on the radial integral
};

const char* access_name(Access a);

// Spatially averaged SIR CDF for one zone/access combination at FAP-MBS
// distance D. Immutable after construction; evaluation is pure.
class SirCdf {
public:
    SirCdf(const SystemParams& p, ZoneId zone, Access access, double d_m,
           CdfBackend backend = CdfBackend::Auto);

    // P[SIR <= gamma] (gamma linear). Returns 0 for gamma <= 0.
    double operator()(double gamma) const;

    ZoneId zone() const { return zone_; }
    Access access() const { return access_; }
    double distance_m() const { return d_m_; }
    CdfBackend backend() const { return backend_; }

private:
    SystemParams p_;
    DerivedConstants dc_;
    ZoneId zone_;
    Access access_;
    double d_m_;
    CdfBackend backend_;
    double k_const_;   // lemma constant K for this zone
    double r_lo_, r_hi_; // radial support of the zone
};

// True when the paper supplies a special-function form for this combination.
bool has_closed_form(const SystemParams& p, ZoneId zone, Access access);

// Per-operation convenience wrappers; each throws ZoneUndefinedError when the
// zone does not exist at D.
double cdf_fo_closed(const SystemParams& p, double d_m, double gamma,
                     CdfBackend backend = CdfBackend::Auto);
double cdf_fo_open(const SystemParams& p, double d_m, double gamma,
                   CdfBackend backend = CdfBackend::Auto);
double cdf_fi(const SystemParams& p, double d_m, double gamma,
              CdfBackend backend = CdfBackend::Auto);
double cdf_fa(const SystemParams& p, double d_m, double gamma,
              CdfBackend backend = CdfBackend::Auto);
double cdf_fb(const SystemParams& p, double d_m, double gamma,
              CdfBackend backend = CdfBackend::Auto);

// Pointwise CCDF at fixed user radius R: the product of the two Laplace
// transforms (single serving/interfering term times the PPP shot noise).
double ccdf_at_radius(const SystemParams& p, ZoneId zone, Access access,
                      double d_m, double r_m, double gamma);

// Quadrature abs tolerance used for the radial integrals.
inline constexpr double kRadialQuadTol = 1e-10;

} // namespace femtodl
