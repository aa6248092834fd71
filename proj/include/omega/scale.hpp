#pragma once

#include <complex>
#include <vector>

#include "omega/levy_model.hpp"

namespace omega {

using cplx = std::complex<double>;

/**
 * Finite exponential sum  t -> sum_k coef[k] exp(rate[k] t), real valued by
 * construction (complex terms come in conjugate pairs).
 */
struct ExpSum {
    std::vector<cplx> coef;
    std::vector<cplx> rate;

    void add(cplx c, cplx r) {
        coef.push_back(c);
        rate.push_back(r);
    }
    [[nodiscard]] double operator()(double t) const;
    /// Multiplies every term by exp(rate * shift) so that result(t) = this(t + shift).
    [[nodiscard]] ExpSum shifted(double shift) const;
    /// Derivative in t.
    [[nodiscard]] ExpSum derivative() const;
    /// s -> this(-s)
    [[nodiscard]] ExpSum reflected() const;
};

/// Integral over [0, L] of A(t) B(t) computed term by term.
double integrate_product(const ExpSum& a, const ExpSum& b, double L);

/// Integral over [0, L] of A(t).
double integrate(const ExpSum& a, double L);

/**
 * W^(rate)(x) = sum_j c_j exp(zeta_j x) for x >= 0 and 0 for x < 0.
 * Exponents are the roots of psi(beta) = rate, coefficients the residues
 * 1/psi'(zeta_j).
 */
class ExponentialSumScale {
public:
    ExponentialSumScale() = default;
    ExponentialSumScale(double rate, std::vector<cplx> coef, std::vector<cplx> zeta, double phi_r);

    [[nodiscard]] double rate() const noexcept { return rate_; }
    [[nodiscard]] double phi_r() const noexcept { return phi_r_; }
    [[nodiscard]] const std::vector<cplx>& coef() const noexcept { return coef_; }
    [[nodiscard]] const std::vector<cplx>& zeta() const noexcept { return zeta_; }
    [[nodiscard]] bool all_real() const noexcept { return all_real_; }

    /// d^order W / dx^order at x; 0 for x < 0, right limit at x = 0.
    [[nodiscard]] double operator()(double x, int order = 0) const;

    /// W restricted to [0, inf) as an exponential sum.
    [[nodiscard]] ExpSum as_expsum() const;

private:
    double rate_ = 0.0;
    double phi_r_ = 0.0;
    std::vector<cplx> coef_;
    std::vector<cplx> zeta_;
    bool all_real_ = true;
    std::vector<double> cr_;
    std::vector<double> zr_;
};

ExponentialSumScale build_scale(const LevyModel& model, double rate);

double eval_W(const ExponentialSumScale& scale, double x, int order);

/**
 * I^(r,q)(x) = int_0^inf exp(-Phi(r+q) u) W^(r)(u + x) du.
 * Closed form sum_j c_j exp(zeta_j x)/(Phi(r+q) - zeta_j) on x >= 0 and
 * exp(Phi(r+q) x)/q on x < 0.
 */
class OccupationKernel {
public:
    OccupationKernel() = default;
    OccupationKernel(const ExponentialSumScale& w, double q, double phi_rq);

    [[nodiscard]] double q() const noexcept { return q_; }
    [[nodiscard]] double phi_rq() const noexcept { return phi_rq_; }
    [[nodiscard]] double operator()(double x, int order = 0) const;
    /// Value of the x >= 0 closed form at x = 0.
    [[nodiscard]] double at_zero_closed_form() const;

private:
    double q_ = 0.0;
    double phi_rq_ = 0.0;
    ExponentialSumScale terms_;
};

OccupationKernel build_I(const LevyModel& model, double r, double q);

/// Lambda-bar(x) = Phi(r+q) - W^(r)(x)/I(x); Phi(r+q) for x < 0.
double hazard(const ExponentialSumScale& w, const OccupationKernel& I, double x);

/**
 * Two-parameter scale function W^(r,q)(x, a) for level y, a <= y.
 * W^(r)(x-a) + q int_(a,y) W^(r)(x-z) W^(r+q)(z-a) dz, convolution in closed form.
 */
double eval_Wrq(const ExponentialSumScale& w, const ExponentialSumScale& wq, double q, double y, double x,
                double a);

/// Same function via W^(r+q)(x-a) - q int_(y, x v y) W^(r)(x-z) W^(r+q)(z-a) dz.
double eval_Wrq_alt(const ExponentialSumScale& w, const ExponentialSumScale& wq, double q, double y, double x,
                    double a);

/// Same function with the convolution done by adaptive quadrature.
double eval_Wrq_quadrature(const ExponentialSumScale& w, const ExponentialSumScale& wq, double q, double y,
                           double x, double a);

/// d/dx W^(r,q)(x, a).
double eval_Wrq_dx(const ExponentialSumScale& w, const ExponentialSumScale& wq, double q, double y, double x,
                   double a);

/**
 * T^(r,q)(a) = e^{-a} + q int_(k_under, y) e^{-z} W^(r+q)(z-a) dz; e^{-a} for a >= y.
 * Only meaningful when Phi(r) = 1 (the caller checks the regime).
 */
double eval_Trq(const ExponentialSumScale& wq, double q, double y, double k_under, double a);

}  // namespace omega
