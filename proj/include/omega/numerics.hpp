#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace omega::numerics {

/// Default tolerances used throughout the library.
inline constexpr double kRootTol = 1e-12;
inline constexpr double kQuadTol = 1e-10;
inline constexpr int kMaxIterations = 200;

/// Closed interval carrying a strict sign change of the target function.
struct Bracket {
    double lo;
    double hi;
    double f_lo;
    double f_hi;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t subdivisions = 0;
};

using RealFn = std::function<double(double)>;

/// Evaluates f at both ends and returns a bracket (no sign check).
Bracket make_bracket(const RealFn& f, double lo, double hi);

/**
 * Bracketed root of f. Uses TOMS 748 (inverse cubic / quadratic steps with
 * bisection safeguard). Returns x in [lo, hi] with |f(x)| <= tol_abs or a
 * final bracket no wider than tol_abs.
 *
 * Throws NoSignChange if the bracket does not straddle a root and
 * MaxIterations after 200 iterations.
 */
double find_root(const RealFn& f, const Bracket& bracket, double tol_abs = kRootTol);

/// Convenience overload: builds the bracket itself.
double find_root(const RealFn& f, double lo, double hi, double tol_abs = kRootTol);

/**
 * Adaptive Gauss-Kronrod (61 point) quadrature on [a, b]. b may be +inf.
 * Throws NonConvergence when the error estimate stays above
 * max(tol_rel * L1, 1e-14).
 */
QuadratureResult integrate(const RealFn& f, double a, double b, double tol_rel = kQuadTol);

/// Same, splitting [a, b] at the given interior breakpoints (kinks of f).
QuadratureResult integrate(const RealFn& f, double a, double b, std::span<const double> breaks,
                           double tol_rel = kQuadTol);

/**
 * All complex roots of sum_k coeffs[k] x^(n-k) (highest degree first).
 * Companion matrix eigenvalues followed by Newton polishing; complex roots are
 * returned as exact conjugate pairs.
 */
std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs, double tol = 1e-10);

/// Horner evaluation, highest degree first.
std::complex<double> polyval(std::span<const double> coeffs, std::complex<double> x);

/// Coefficients of prod_k (x - roots[k]) (highest degree first, monic).
std::vector<std::complex<double>> poly_from_roots(std::span<const std::complex<double>> roots);

/// Product of two real polynomials (highest degree first).
std::vector<double> polymul(std::span<const double> a, std::span<const double> b);

/// Sum of two real polynomials (highest degree first, right aligned).
std::vector<double> polyadd(std::span<const double> a, std::span<const double> b);

/// Deterministic pairwise summation; result independent of thread count.
double pairwise_sum(std::span<const double> xs);

/// (e^z - 1)/z, accurate near z = 0.
double phi1(double z);
std::complex<double> phi1(std::complex<double> z);

struct Extremum {
    double x;
    double f;
};

/// Brent minimisation of f on [lo, hi] (Boost).
Extremum minimize(const RealFn& f, double lo, double hi, int bits = 50);

/// Golden-section maximisation of f on [lo, hi].
Extremum golden_max(const RealFn& f, double lo, double hi, double tol = 1e-10);

}  // namespace omega::numerics
