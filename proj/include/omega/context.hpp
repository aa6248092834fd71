#pragma once

#include "omega/levy_model.hpp"
#include "omega/scale.hpp"

namespace omega {

enum class MartingaleClass { SuperMartingale, Martingale, SubMartingale };

/// |r - psi(1)| at or below this is treated as the martingale case.
inline constexpr double kMartingaleTol = 1e-12;

/**
 * Everything derived once from (model, r, q, K): inverse exponents, the two
 * scale functions, the occupation kernel, the exercise levels of the
 * constant-rate calls and the exponential-sum data behind f and chi.
 */
struct Context {
    LevyModel model;
    double r;
    double q;
    double K;

    double psi1;
    MartingaleClass mclass;
    /// r - psi(1), forced to exactly 0 in the martingale case.
    double drift_gap;
    double phi_r;
    double phi_rq;
    double dphi_r;  ///< Phi'(r)

    ExponentialSumScale W;   ///< W^(r)
    ExponentialSumScale Wq;  ///< W^(r+q)
    OccupationKernel I;      ///< I^(r,q)

    double K_under;  ///< Phi(r+q) K / (Phi(r+q) - 1)
    double K_over;   ///< Phi(r) K / (Phi(r) - 1), +inf unless r > psi(1)
    double k_under;
    double k_over;

    /// f(x) = sum_i f_coef[i] exp(-eta_i (x - k_under)) for x >= k_under.
    std::vector<double> f_coef;
    /// chi(k_under + t) for t >= 0 as an exponential sum in t.
    ExpSum chi_hi;
    /// q v_under(k_under + t) - chi(k_under + t) for t >= 0.
    ExpSum qv_minus_chi_hi;
};

/// Throws InvalidModel / DomainError on bad inputs.
Context make_context(const LevyModel& model, double r, double q, double K);

}  // namespace omega
