#pragma once

#include <complex>

namespace femtodl {
namespace specfun {

// Target accuracies, one decade tighter than the 1e-8 used by the
// backend-equivalence tests downstream.
inline constexpr double kHyp2f1RelTol = 1e-10;
inline constexpr double kExpintRelTol = 1e-9;

// Gauss hypergeometric 2F1(2/s, 1; 1+2/s; -x) for s >= 2 and x >= 0.
// This is the only family the coverage CDFs need. Strictly decreasing in x,
// value in (0, 1]. Throws std::invalid_argument on non-finite or out-of-range
// input.
double hyp2f1_neg(double s, double x);

// Exponential integral Ei(z), principal branch (cut along the negative real
// axis). Mirror symmetry Ei(conj z) == conj(Ei z) holds exactly by
// construction. Throws std::invalid_argument at z == 0.
std::complex<double> expint_ei(std::complex<double> z);

// Real-axis Ei (Cauchy principal value for x > 0).
double expint_ei_real(double x);

// Test hook: when enabled, hyp2f1_neg returns a slightly perturbed value so
// the backend-equivalence validation can demonstrate a detected fault.
void set_corrupt_hyp2f1_for_testing(bool enabled);

} // namespace specfun
} // namespace femtodl
