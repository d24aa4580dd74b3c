#pragma once

#include "femtodl/params.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace femtodl {
namespace validation {

// Reference implementations used as oracles. These never touch the
// closed-form code paths they are checked against.

// 2F1(2/s,1;1+2/s;-x) as the integral a * int_0^1 t^{a-1}/(1+xt) dt,
// regularized by t = v^{1/a} and evaluated with adaptive quadrature.
double hyp2f1_reference(double s, double x);

// Ei(z) = gamma + log z + int_0^z (e^t - 1)/t dt along the straight segment.
std::complex<double> expint_ei_reference(std::complex<double> z);

// Upper-tail probability of the chi-square distribution (for the PPP
// goodness-of-fit test).
double chi_square_sf(double statistic, int dof);

struct CheckResult {
    std::string name;
    bool pass = false;
    double deviation = 0.0; // measured worst-case quantity
    double tolerance = 0.0; // bound it was compared against
    double runtime_s = 0.0;
    std::string detail;
};

struct Options {
    uint64_t seed = 20260810;
    uint32_t mc_drops = 20000;
    uint32_t mc_fading = 5;
    double mc_window_m = 0.0; // 0 => 10 R_c
    unsigned threads = 0;
    bool quick = false; // reduce MC sample counts (for CI-speed runs)
};

// Individual check groups; each returns one or more results.
std::vector<CheckResult> check_threshold_distance(const SystemParams& p);
std::vector<CheckResult> check_center_offset(const SystemParams& p);
std::vector<CheckResult> check_backend_equivalence(const SystemParams& p, const Options& o);
std::vector<CheckResult> check_mc_oracle(const SystemParams& p, const Options& o);
std::vector<CheckResult> check_figure_shapes(const SystemParams& p);
std::vector<CheckResult> check_starvation(const SystemParams& p);
std::vector<CheckResult> check_prop1_vs_grid(const SystemParams& p, const Options& o);
std::vector<CheckResult> check_shared_ordering(const SystemParams& p);
std::vector<CheckResult> check_specfun(const Options& o);

// The full suite in a fixed order.
std::vector<CheckResult> run_all(const SystemParams& p, const Options& o);

} // namespace validation
} // namespace femtodl
