#pragma once

#include <complex>
#include <string>
#include <vector>

namespace omega {

/// One exponential phase of the downward jump law: weight p, rate eta.
struct Phase {
    double p;
    double eta;
};

/// Hyper-exponential jump part: intensity lambda, mixture of exponential phases.
struct HyperExpJumps {
    double lambda = 0.0;
    std::vector<Phase> phases;
};

/**
 * Spectrally negative jump diffusion
 *   X_t = X_0 + gamma t + sigma B_t - sum of hyper-exponential jumps.
 *
 * The constructor validates the parameters and throws InvalidModel.
 */
class LevyModel {
public:
    LevyModel(double gamma, double sigma, HyperExpJumps jumps);

    [[nodiscard]] double gamma() const noexcept { return gamma_; }
    [[nodiscard]] double sigma() const noexcept { return sigma_; }
    [[nodiscard]] const HyperExpJumps& jumps() const noexcept { return jumps_; }

    /// Drift in the truncated (indicator on (-1,0)) Levy-Khintchine form.
    [[nodiscard]] double mu() const noexcept;

    [[nodiscard]] bool bounded_variation() const noexcept { return sigma_ == 0.0; }

    /// Laplace exponent and its first two derivatives; any beta > -min(eta).
    [[nodiscard]] double psi(double beta) const noexcept;
    [[nodiscard]] double dpsi(double beta) const noexcept;
    [[nodiscard]] double d2psi(double beta) const noexcept;
    [[nodiscard]] std::complex<double> psi(std::complex<double> beta) const noexcept;
    [[nodiscard]] std::complex<double> dpsi(std::complex<double> beta) const noexcept;

    /// Coefficients (highest degree first) of (psi(beta) - rate) * prod_i (eta_i + beta).
    [[nodiscard]] std::vector<double> cleared_polynomial(double rate) const;

    /// Jump density at z < 0.
    [[nodiscard]] double jump_density(double z) const noexcept;

private:
    double gamma_;
    double sigma_;
    HyperExpJumps jumps_;
};

/// psi(beta) with the beta >= 0 precondition enforced (throws InvalidBeta).
double laplace_exponent(const LevyModel& model, double beta);

/// Largest root of psi(beta) = rate, rate > 0 (throws BracketFailure).
double phi(const LevyModel& model, double rate);

/// Largest root of psi(beta) = 0.
double phi0(const LevyModel& model);

/// Phi'(rate) = 1 / psi'(Phi(rate)).
double phi_prime(const LevyModel& model, double rate);

}  // namespace omega
