#pragma once

#include <cmath>
#include <complex>
#include <queue>
#include <vector>

namespace femtodl {

// Adaptive Gauss-Kronrod (G7/K15) quadrature on a finite interval. Intervals
// are refined worst-first until the accumulated error estimate drops below
// max(abs_tol, rel_tol * |result|). Works for double and complex<double>
// integrand values.

namespace detail {

// K15 abscissae (positive half) and weights; rows 0..3 carry the G7 weights.
inline constexpr double kGk15Nodes[8] = {
    0.000000000000000, 0.405845151377397, 0.741531185599394, 0.949107912342759,
    0.207784955007898, 0.586087235467691, 0.864864423359769, 0.991455371120813};
inline constexpr double kG7Weights[4] = {
    0.417959183673469, 0.381830050505119, 0.279705391489277, 0.129484966168870};
inline constexpr double kK15Weights[8] = {
    0.209482141084728, 0.190350578064785, 0.140653259715525, 0.063092092629979,
    0.204432940075298, 0.169004726639267, 0.104790010322250, 0.022935322010529};

inline double value_norm(double v) { return std::abs(v); }
inline double value_norm(const std::complex<double>& v) { return std::abs(v); }

template <class F, class V>
void gk15(const F& f, double a, double b, V& integral, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    V f0 = f(mid);
    V g7 = kG7Weights[0] * f0;
    V k15 = kK15Weights[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kGk15Nodes[i];
        V fi = f(mid + dx) + f(mid - dx);
        k15 += kK15Weights[i] * fi;
        if (i < 4) g7 += kG7Weights[i] * fi;
    }
    integral = k15 * half;
    // The raw G7-K15 gap; overestimates the K15 error, which only costs a few
    // extra subdivisions.
    err = value_norm((k15 - g7) * half);
}

} // namespace detail

struct QuadratureResult {
    double error = 0.0;
    bool converged = true;
    int intervals = 0;
};

template <class F, class V = double>
V integrate(const F& f, double a, double b, double abs_tol = 1e-10,
            double rel_tol = 1e-12, QuadratureResult* info = nullptr,
            int max_intervals = 4000) {
    struct Seg {
        double a, b, err;
        V val;
        bool operator<(const Seg& o) const { return err < o.err; }
    };

    if (a == b) {
        if (info) *info = {};
        return V{};
    }

    std::priority_queue<Seg> segs;
    V total;
    double err0;
    detail::gk15(f, a, b, total, err0);
    segs.push({a, b, err0, total});
    double total_err = err0;
    int n = 1;

    while (total_err > std::max(abs_tol, rel_tol * detail::value_norm(total)) &&
           n < max_intervals && !segs.empty()) {
        Seg worst = segs.top();
        segs.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) break; // interval exhausted

        V lv, rv;
        double le, re;
        detail::gk15(f, worst.a, mid, lv, le);
        detail::gk15(f, mid, worst.b, rv, re);
        total += (lv + rv) - worst.val;
        total_err += (le + re) - worst.err;
        segs.push({worst.a, mid, le, lv});
        segs.push({mid, worst.b, re, rv});
        ++n;
    }

    if (info) {
        info->error = total_err;
        info->converged =
            total_err <= std::max(abs_tol, rel_tol * detail::value_norm(total));
        info->intervals = n;
    }
    return total;
}

template <class F>
std::complex<double> integrate_complex(const F& f, double a, double b,
                                       double abs_tol = 1e-12,
                                       double rel_tol = 1e-12,
                                       QuadratureResult* info = nullptr) {
    return integrate<F, std::complex<double>>(f, a, b, abs_tol, rel_tol, info);
}

} // namespace femtodl
