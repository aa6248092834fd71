#include "omega/context.hpp"

#include <cmath>
#include <limits>

#include "omega/error.hpp"

namespace omega {

Context make_context(const LevyModel& model, double r, double q, double K) {
    if (!(r > 0.0)) throw Error(ErrorKind::DomainError, "r must be positive");
    if (!(q > 0.0)) throw Error(ErrorKind::DomainError, "q must be positive");
    if (!(K > 0.0)) throw Error(ErrorKind::DomainError, "strike K must be positive");

    const double psi1 = model.psi(1.0);
    const double gap = r - psi1;
    MartingaleClass mc = MartingaleClass::SuperMartingale;
    if (std::abs(gap) <= kMartingaleTol) {
        mc = MartingaleClass::Martingale;
    } else if (gap < 0.0) {
        mc = MartingaleClass::SubMartingale;
    }

    auto W = build_scale(model, r);
    auto Wq = build_scale(model, r + q);
    const double phir = W.phi_r();
    const double phirq = Wq.phi_r();
    OccupationKernel I(W, q, phirq);

    const double inf = std::numeric_limits<double>::infinity();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double K_under = phirq > 1.0 ? phirq * K / (phirq - 1.0) : nan;
    const double K_over = mc == MartingaleClass::SuperMartingale ? phir * K / (phir - 1.0) : inf;

    Context ctx{model,
                r,
                q,
                K,
                psi1,
                mc,
                mc == MartingaleClass::Martingale ? 0.0 : gap,
                phir,
                phirq,
                1.0 / model.dpsi(phir),
                std::move(W),
                std::move(Wq),
                std::move(I),
                K_under,
                K_over,
                std::log(K_under),
                std::log(K_over),
                {},
                {},
                {}};

    if (std::isfinite(K_under)) {
        const auto& jumps = model.jumps();
        for (const auto& ph : jumps.phases) {
            const double eta = ph.eta;
            const double B = (K_under - K) / (phirq + eta) - K_under / (1.0 + eta) + K / eta;
            ctx.f_coef.push_back(jumps.lambda * ph.p * eta * B);
        }
        // chi(k + t) = r K - (r - psi1) K_under e^t + sum_i F_i e^{-eta_i t}
        ctx.chi_hi.add(r * K, 0.0);
        if (ctx.drift_gap != 0.0) ctx.chi_hi.add(-ctx.drift_gap * K_under, 1.0);
        // q v(k + t) - chi(k + t) = (q + r - psi1) K_under e^t - (q + r) K - sum_i F_i e^{-eta_i t}
        ctx.qv_minus_chi_hi.add((q + ctx.drift_gap) * K_under, 1.0);
        ctx.qv_minus_chi_hi.add(-(q + r) * K, 0.0);
        for (std::size_t i = 0; i < ctx.f_coef.size(); ++i) {
            const double eta = jumps.phases[i].eta;
            ctx.chi_hi.add(ctx.f_coef[i], -eta);
            ctx.qv_minus_chi_hi.add(-ctx.f_coef[i], -eta);
        }
    }
    return ctx;
}

}  // namespace omega
