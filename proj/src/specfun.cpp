// Special functions for the coverage CDF closed forms.
//
// hyp2f1_neg sums the Gauss series after a Pfaff transformation for small
// arguments and switches to the x -> infinity connection formula for large
// ones; the connection formula is rewritten so the a -> 1 (s -> 2) pole
// cancels analytically and s = 2 reduces to log(1+x)/x.
//
// expint_ei combines the entire power series, the contracted continued
// fraction of E1 (modified Lentz), and the large-|z| asymptotic series with
// the branch fixed so real-axis values match the Cauchy principal value.

#include "femtodl/specfun.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace femtodl {
namespace specfun {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

std::atomic<bool> g_corrupt_hyp2f1{false};

// 2F1(a, 1; 1+a; -x) via Pfaff: (1+x)^{-1} 2F1(1, 1; 1+a; x/(1+x)).
// The transformed series has positive terms, no cancellation.
double hyp_series_pfaff(double a, double x) {
    const double u = x / (1.0 + x);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < 4000; ++k) {
        term *= (k + 1.0) / (1.0 + a + k) * u;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum / (1.0 + x);
}

// pi*d - sin(pi*d), accurate for small d.
double pi_d_minus_sin(double d) {
    const double t = std::numbers::pi * d;
    if (std::abs(t) > 0.1) return t - std::sin(t);
    // odd series: t^3/3! - t^5/5! + t^7/7!
    const double t2 = t * t;
    return t * t2 * (1.0 / 6.0 - t2 * (1.0 / 120.0 - t2 / 5040.0));
}

// Connection formula for x > 1:
//   2F1(a,1;1+a;-x) = a x^{-1} t(x) + a sum_{m>=1} (-1)^{m+1} x^{-(m+1)}/(m+1-a)
// with t(x) = pi x^{1-a}/sin(pi(1-a)) - 1/(1-a), evaluated in a form that is
// stable as a -> 1 and exact at a == 1.
double hyp_large_x(double a, double x) {
    const double d = 1.0 - a; // in [0, 1)
    const double lx = std::log(x);
    double t;
    if (d == 0.0) {
        t = lx;
    } else {
        const double sd = std::sin(std::numbers::pi * d);
        // numerator pi*d*e^{d lx} - sin(pi d) split into stable pieces
        const double num = std::numbers::pi * d * std::expm1(d * lx) + pi_d_minus_sin(d);
        t = num / (d * sd);
    }
    double sum = 0.0;
    double xm = 1.0 / x; // x^{-m}
    for (int m = 1; m < 400; ++m) {
        xm /= x;
        const double term = (m % 2 ? xm : -xm) / (m + 1.0 - a);
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + t / x)) break;
    }
    return a * (t / x + sum);
}

// ---- exponential integral pieces ----

// Entire series: Ei(z) = gamma + log z + sum z^k/(k k!). Used where the
// cancellation penalty exp(|z| - max(Re z, 0)) stays harmless.
std::complex<double> ei_series(std::complex<double> z) {
    std::complex<double> term = 1.0;
    std::complex<double> sum = 0.0;
    for (int k = 1; k < 1000; ++k) {
        term *= z / static_cast<double>(k);
        const std::complex<double> add = term / static_cast<double>(k);
        sum += add;
        if (std::abs(add) < 1e-17 * (std::abs(sum) + 1.0) && k > 3) break;
    }
    return kEulerGamma + std::log(z) + sum;
}

// Contracted continued fraction for E1(w), |arg w| < pi:
//   E1(w) = e^{-w} / (w + 1 - 1^2/(w + 3 - 2^2/(w + 5 - ...)))
// evaluated with the modified Lentz algorithm.
std::complex<double> e1_continued_fraction(std::complex<double> w) {
    const double tiny = 1e-290;
    std::complex<double> b = w + 1.0;
    std::complex<double> c = 1.0 / tiny;
    std::complex<double> d = 1.0 / b;
    std::complex<double> h = d;
    for (int k = 1; k < 20000; ++k) {
        const double a = -static_cast<double>(k) * k;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        if (c == std::complex<double>(0.0)) c = tiny;
        const std::complex<double> delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-w) * h;
}

// Real E1(t), t > 0.
double e1_real(double t) {
    if (t <= 1.0) {
        // -gamma - ln t + sum (-1)^{k+1} t^k / (k k!)
        double term = 1.0;
        double sum = 0.0;
        for (int k = 1; k < 60; ++k) {
            term *= -t / k;
            const double add = -term / k;
            sum += add;
            if (std::abs(add) < 1e-18 * std::abs(sum)) break;
        }
        return -kEulerGamma - std::log(t) + sum;
    }
    return e1_continued_fraction(t).real();
}

// Asymptotic series with the exponentially subdominant branch term kept:
//   Ei(z) ~ e^z/z sum_k k!/z^k + i pi sign(Im z)
std::complex<double> ei_asymptotic(std::complex<double> z) {
    std::complex<double> term = 1.0;
    std::complex<double> sum = 1.0;
    double prev = 1.0;
    for (int k = 1; k < 400; ++k) {
        term *= static_cast<double>(k) / z;
        const double mag = std::abs(term);
        if (mag > prev) break; // divergence point of the asymptotic series
        sum += term;
        prev = mag;
        if (mag < 1e-18) break;
    }
    std::complex<double> out = std::exp(z) / z * sum;
    if (z.imag() > 0.0) {
        out += std::complex<double>(0.0, std::numbers::pi);
    } else if (z.imag() < 0.0) {
        out -= std::complex<double>(0.0, std::numbers::pi);
    }
    return out;
}

std::complex<double> ei_upper_half(std::complex<double> z) {
    const double r = std::abs(z);
    if (r >= 36.0) return ei_asymptotic(z);
    if (z.real() <= 0.0) {
        if (r <= 8.0) return ei_series(z);
        // Ei(z) = -E1(-z) + i pi for Im z > 0; Re(-z) >= 0 keeps the CF fast.
        return -e1_continued_fraction(-z) + std::complex<double>(0.0, std::numbers::pi);
    }
    // Right half plane: series unless the cancellation penalty is too large.
    if (r <= 8.0 || r - z.real() <= 10.0) return ei_series(z);
    return -e1_continued_fraction(-z) + std::complex<double>(0.0, std::numbers::pi);
}

} // namespace

void set_corrupt_hyp2f1_for_testing(bool enabled) {
    g_corrupt_hyp2f1.store(enabled, std::memory_order_relaxed);
}

double hyp2f1_neg(double s, double x) {
    if (!std::isfinite(s) || !std::isfinite(x)) {
        throw std::invalid_argument("hyp2f1_neg: non-finite input");
    }
    if (s < 2.0 || x < 0.0) {
        throw std::invalid_argument("hyp2f1_neg: need s >= 2 and x >= 0");
    }
    const double a = 2.0 / s;
    double v;
    if (x == 0.0) {
        v = 1.0;
    } else if (x <= 2.0) {
        v = hyp_series_pfaff(a, x);
    } else {
        v = hyp_large_x(a, x);
    }
    if (g_corrupt_hyp2f1.load(std::memory_order_relaxed)) {
        v *= 1.0 + 1e-6;
    }
    return v;
}

double expint_ei_real(double x) {
    if (x == 0.0) throw std::invalid_argument("expint_ei: z == 0");
    if (x < 0.0) return -e1_real(-x);
    if (x <= 40.0) {
        double term = 1.0;
        double sum = 0.0;
        for (int k = 1; k < 200; ++k) {
            term *= x / k;
            sum += term / k;
            if (term / k < 1e-18 * sum) break;
        }
        return kEulerGamma + std::log(x) + sum;
    }
    // Asymptotic e^x/x sum k!/x^k, truncated at the smallest term.
    double term = 1.0;
    double sum = 1.0;
    double prev = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= k / x;
        if (term > prev) break;
        sum += term;
        prev = term;
        if (term < 1e-18) break;
    }
    return std::exp(x) / x * sum;
}

std::complex<double> expint_ei(std::complex<double> z) {
    if (z == std::complex<double>(0.0, 0.0)) {
        throw std::invalid_argument("expint_ei: z == 0");
    }
    if (z.imag() == 0.0) {
        // Principal value on the real axis; keeps Im == 0 exactly for x > 0
        // and the conventional -E1(-x) on the cut.
        return {expint_ei_real(z.real()), 0.0};
    }
    if (z.imag() < 0.0) return std::conj(expint_ei(std::conj(z)));
    return ei_upper_half(z);
}

} // namespace specfun
} // namespace femtodl
