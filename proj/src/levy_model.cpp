#include "omega/levy_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "omega/error.hpp"
#include "omega/numerics.hpp"

namespace omega {

LevyModel::LevyModel(double gamma, double sigma, HyperExpJumps jumps)
    : gamma_(gamma), sigma_(sigma), jumps_(std::move(jumps)) {
    auto bad = [](const std::string& m) { throw Error(ErrorKind::InvalidModel, m); };
    if (!std::isfinite(gamma_) || !std::isfinite(sigma_)) bad("non-finite drift or volatility");
    if (sigma_ < 0.0) bad("sigma must be >= 0");
    if (!(jumps_.lambda >= 0.0)) bad("lambda must be >= 0");
    if (jumps_.lambda > 0.0 && jumps_.phases.empty()) bad("lambda > 0 needs at least one phase");
    double total = 0.0;
    for (std::size_t i = 0; i < jumps_.phases.size(); ++i) {
        const auto& ph = jumps_.phases[i];
        if (!(ph.p > 0.0)) bad("phase weights must be positive");
        if (!(ph.eta > 0.0)) bad("phase rates must be positive");
        for (std::size_t j = 0; j < i; ++j) {
            if (jumps_.phases[j].eta == ph.eta) bad("phase rates must be distinct");
        }
        total += ph.p;
    }
    if (!jumps_.phases.empty() && std::abs(total - 1.0) > 1e-12) bad("phase weights must sum to 1");
    if (sigma_ == 0.0 && !(gamma_ > 0.0)) bad("bounded variation requires gamma > 0");
}

double LevyModel::mu() const noexcept {
    // gamma = mu + int_{(-1,0)} |x| Pi(dx)
    double small = 0.0;
    for (const auto& ph : jumps_.phases) {
        small += ph.p * (1.0 - std::exp(-ph.eta) * (1.0 + ph.eta)) / ph.eta;
    }
    return gamma_ - jumps_.lambda * small;
}

double LevyModel::psi(double b) const noexcept {
    double jump = 0.0;
    for (const auto& ph : jumps_.phases) jump += ph.p * (ph.eta / (ph.eta + b) - 1.0);
    return gamma_ * b + 0.5 * sigma_ * sigma_ * b * b + jumps_.lambda * jump;
}

double LevyModel::dpsi(double b) const noexcept {
    double jump = 0.0;
    for (const auto& ph : jumps_.phases) jump += ph.p * ph.eta / ((ph.eta + b) * (ph.eta + b));
    return gamma_ + sigma_ * sigma_ * b - jumps_.lambda * jump;
}

double LevyModel::d2psi(double b) const noexcept {
    double jump = 0.0;
    for (const auto& ph : jumps_.phases) jump += ph.p * ph.eta / std::pow(ph.eta + b, 3);
    return sigma_ * sigma_ + 2.0 * jumps_.lambda * jump;
}

std::complex<double> LevyModel::psi(std::complex<double> b) const noexcept {
    std::complex<double> jump = 0.0;
    for (const auto& ph : jumps_.phases) jump += ph.p * (ph.eta / (ph.eta + b) - 1.0);
    return gamma_ * b + 0.5 * sigma_ * sigma_ * b * b + jumps_.lambda * jump;
}

std::complex<double> LevyModel::dpsi(std::complex<double> b) const noexcept {
    std::complex<double> jump = 0.0;
    for (const auto& ph : jumps_.phases) jump += ph.p * ph.eta / ((ph.eta + b) * (ph.eta + b));
    return gamma_ + sigma_ * sigma_ * b - jumps_.lambda * jump;
}

std::vector<double> LevyModel::cleared_polynomial(double rate) const {
    const double lam = jumps_.lambda;
    std::vector<double> base{0.5 * sigma_ * sigma_, gamma_, -lam - rate};
    std::vector<double> prod_all{1.0};
    for (const auto& ph : jumps_.phases) {
        const double lin[2] = {1.0, ph.eta};
        prod_all = numerics::polymul(prod_all, lin);
    }
    auto out = numerics::polymul(base, prod_all);
    for (std::size_t i = 0; i < jumps_.phases.size(); ++i) {
        std::vector<double> others{lam * jumps_.phases[i].p * jumps_.phases[i].eta};
        for (std::size_t k = 0; k < jumps_.phases.size(); ++k) {
            if (k == i) continue;
            const double lin[2] = {1.0, jumps_.phases[k].eta};
            others = numerics::polymul(others, lin);
        }
        out = numerics::polyadd(out, others);
    }
    std::size_t first = 0;
    while (first + 1 < out.size() && out[first] == 0.0) ++first;
    return {out.begin() + static_cast<std::ptrdiff_t>(first), out.end()};
}

double LevyModel::jump_density(double z) const noexcept {
    if (z >= 0.0) return 0.0;
    double d = 0.0;
    for (const auto& ph : jumps_.phases) d += ph.p * ph.eta * std::exp(ph.eta * z);
    return jumps_.lambda * d;
}

double laplace_exponent(const LevyModel& model, double beta) {
    if (beta < 0.0) throw Error(ErrorKind::InvalidBeta, "beta must be >= 0");
    if (beta == 0.0) return 0.0;
    return model.psi(beta);
}

namespace {

double largest_root(const LevyModel& m, double rate, double lo) {
    // psi is convex on [0, inf) with psi(lo) <= rate, so doubling finds an upper bracket.
    double hi = std::max(1.0, 2.0 * lo + 1.0);
    while (m.psi(hi) <= rate) {
        hi *= 2.0;
        if (hi > 1e6) {
            std::ostringstream os;
            os << "no upper bracket for psi(beta) = " << rate << " below 1e6";
            throw Error(ErrorKind::BracketFailure, os.str());
        }
    }
    auto f = [&](double b) { return m.psi(b) - rate; };
    double x = numerics::find_root(f, lo, hi, 1e-15);
    // Two Newton polish steps.
    for (int i = 0; i < 2; ++i) {
        const double d = m.dpsi(x);
        if (d <= 0.0) break;
        const double nx = x - f(x) / d;
        if (nx >= lo && nx <= hi) x = nx;
    }
    return x;
}

}  // namespace

double phi0(const LevyModel& model) {
    if (model.dpsi(0.0) >= 0.0) return 0.0;
    // psi dips below zero first; locate its minimiser then the positive root.
    double lo = 0.0;
    double hi = 1.0;
    while (model.dpsi(hi) < 0.0) hi *= 2.0;
    auto dp = [&](double b) { return model.dpsi(b); };
    const double bmin = numerics::find_root(dp, lo, hi, 1e-14);
    return largest_root(model, 0.0, bmin);
}

double phi(const LevyModel& model, double rate) {
    if (!(rate > 0.0)) throw Error(ErrorKind::DomainError, "phi: rate must be positive");
    return largest_root(model, rate, phi0(model));
}

double phi_prime(const LevyModel& model, double rate) { return 1.0 / model.dpsi(phi(model, rate)); }

}  // namespace omega
