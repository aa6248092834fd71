#include "omega/regime.hpp"

#include <limits>

#include "omega/thresholds.hpp"

namespace omega {

std::string to_string(MartingaleClass c) {
    switch (c) {
        case MartingaleClass::SuperMartingale: return "SuperMartingale";
        case MartingaleClass::Martingale: return "Martingale";
        case MartingaleClass::SubMartingale: return "SubMartingale";
    }
    return "Unknown";
}

std::string to_string(Variation v) { return v == Variation::Bounded ? "Bounded" : "Unbounded"; }

std::string to_string(Hypothesis1 h) {
    switch (h) {
        case Hypothesis1::Implied: return "Implied";
        case Hypothesis1::Assumed: return "Assumed";
        case Hypothesis1::Violated: return "Violated";
    }
    return "Unknown";
}

RegimeReport classify(const Context& ctx) {
    RegimeReport rep{};
    rep.martingale_class = ctx.mclass;
    rep.variation = ctx.model.bounded_variation() ? Variation::Bounded : Variation::Unbounded;
    rep.cond1_holds = cond1_holds(ctx);
    rep.u_bar = std::numeric_limits<double>::quiet_NaN();
    if (ctx.mclass == MartingaleClass::SuperMartingale) rep.u_bar = find_u_bar(ctx);
    rep.hypothesis1 = Hypothesis1::Implied;
    rep.psi_1 = ctx.psi1;
    rep.phi_r = ctx.phi_r;
    rep.phi_rq = ctx.phi_rq;
    rep.sigma_zero_flag = ctx.model.sigma() == 0.0;
    return rep;
}

RegimeReport classify(const LevyModel& model, double r, double q, double K) {
    return classify(make_context(model, r, q, K));
}

}  // namespace omega
