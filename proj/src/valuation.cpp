#include "omega/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "omega/error.hpp"
#include "omega/numerics.hpp"

namespace omega {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_martingale(const Context& ctx, const char* what) {
    if (ctx.mclass != MartingaleClass::Martingale) {
        throw Error(ErrorKind::RegimeError, std::string(what) + " needs r = psi(1)");
    }
}

void require_k_under(const Context& ctx) {
    if (!std::isfinite(ctx.k_under)) {
        throw Error(ErrorKind::RegimeError, "k_under undefined (Phi(r+q) <= 1)");
    }
}

/// W^(r,q)(x, y - s) for x > y as an exponential sum in s.
ExpSum wrq_in_s(const Context& ctx, double y, double x, bool dx) {
    const auto& c = ctx.W.coef();
    const auto& z = ctx.W.zeta();
    const auto& d = ctx.Wq.coef();
    const auto& xi = ctx.Wq.zeta();
    const double M = x - y;
    ExpSum out;
    std::vector<cplx> xi_coef(xi.size(), 0.0);
    for (std::size_t i = 0; i < z.size(); ++i) {
        cplx ci = c[i] * std::exp(z[i] * M);
        if (dx) ci *= z[i];
        cplx s = 0.0;
        for (std::size_t j = 0; j < xi.size(); ++j) {
            const cplx t = d[j] / (z[i] - xi[j]);
            s += t;
            xi_coef[j] -= ctx.q * ci * t;
        }
        out.add(ci * (1.0 + ctx.q * s), z[i]);
    }
    for (std::size_t j = 0; j < xi.size(); ++j) out.add(xi_coef[j], xi[j]);
    return out;
}

/// Delta without the a < y restriction (a = y gives an empty first integral).
double delta_core(const Context& ctx, double y, double a, double x) {
    if (x <= a) return 0.0;
    const double k = ctx.k_under;
    if (x <= y) {
        return integrate_product(ctx.Wq.as_expsum(), ctx.qv_minus_chi_hi.shifted(x - k).reflected(), x - a);
    }
    double A = 0.0;
    if (y > a) {
        A = integrate_product(wrq_in_s(ctx, y, x, false), ctx.qv_minus_chi_hi.shifted(y - k).reflected(), y - a);
    }
    const double B = integrate_product(ctx.W.as_expsum(), ctx.chi_hi.shifted(x - k).reflected(), x - y);
    return A - B;
}

double delta_dx_core(const Context& ctx, double y, double a, double x) {
    if (x < a) return 0.0;
    const double k = ctx.k_under;
    if (x <= y) {
        const ExpSum dphi = ctx.qv_minus_chi_hi.derivative();
        return ctx.Wq(x - a) * qv_minus_chi(ctx, a) +
               integrate_product(ctx.Wq.as_expsum(), dphi.shifted(x - k).reflected(), x - a);
    }
    double A = 0.0;
    if (y > a) {
        A = integrate_product(wrq_in_s(ctx, y, x, true), ctx.qv_minus_chi_hi.shifted(y - k).reflected(), y - a);
    }
    const ExpSum dchi = ctx.chi_hi.derivative();
    const double B = ctx.W(x - y) * chi_fn(ctx, y) +
                     integrate_product(ctx.W.as_expsum(), dchi.shifted(x - k).reflected(), x - y);
    return A - B;
}

void check_delta_args(const Context& ctx, double y, double a) {
    require_k_under(ctx);
    if (a < ctx.k_under - 1e-12) throw Error(ErrorKind::DomainError, "Delta: a < k_under");
    if (a >= y) throw Error(ErrorKind::DomainError, "Delta: a >= y");
}

}  // namespace

double v_under(const Context& ctx, double x) {
    require_k_under(ctx);
    if (x <= ctx.k_under) return std::exp(ctx.phi_rq * (x - ctx.k_under)) * (ctx.K_under - ctx.K);
    return std::exp(x) - ctx.K;
}

double v_over(const Context& ctx, double x) {
    switch (ctx.mclass) {
        case MartingaleClass::SubMartingale: return kInf;
        case MartingaleClass::Martingale: return std::exp(x);
        case MartingaleClass::SuperMartingale: break;
    }
    if (x <= ctx.k_over) return std::exp(ctx.phi_r * (x - ctx.k_over)) * (ctx.K_over - ctx.K);
    return std::exp(x) - ctx.K;
}

double h_fn(const Context& ctx, double x) {
    if (x >= ctx.k_under) return 0.0;
    return v_under(ctx, x) - (std::exp(x) - ctx.K);
}

double f_fn(const Context& ctx, double x) {
    require_k_under(ctx);
    if (x < ctx.k_under) throw Error(ErrorKind::DomainError, "f: x < k_under");
    double acc = 0.0;
    const auto& ph = ctx.model.jumps().phases;
    for (std::size_t i = 0; i < ctx.f_coef.size(); ++i) {
        acc += ctx.f_coef[i] * std::exp(-ph[i].eta * (x - ctx.k_under));
    }
    return acc;
}

double f_quadrature(const Context& ctx, double x) {
    require_k_under(ctx);
    const auto& jumps = ctx.model.jumps();
    if (jumps.lambda == 0.0) return 0.0;
    double eta_min = kInf;
    for (const auto& ph : jumps.phases) eta_min = std::min(eta_min, ph.eta);
    const double lo = ctx.k_under - 60.0 / eta_min;
    auto g = [&](double z) { return h_fn(ctx, z) * ctx.model.jump_density(z - x); };
    return numerics::integrate(g, lo, ctx.k_under, 1e-13).value;
}

double chi_fn(const Context& ctx, double x) {
    if (x < ctx.k_under) return ctx.q * v_under(ctx, x);
    return ctx.r * ctx.K - ctx.drift_gap * std::exp(x) + f_fn(ctx, x);
}

double qv_minus_chi(const Context& ctx, double w) { return ctx.q * v_under(ctx, w) - chi_fn(ctx, w); }

double U_fn(const Context& ctx, double y, double z, double x) {
    if (x >= z) return std::exp(x) - ctx.K;
    return std::max(std::exp(z) - ctx.K, 0.0) * ctx.I(x - y) / ctx.I(z - y);
}

double R_fn(const Context& ctx, double y, double z, double x) {
    return (std::exp(x) - ctx.K) / U_fn(ctx, y, z, x);
}

double Delta_fn(const Context& ctx, double y, double a, double x) {
    check_delta_args(ctx, y, a);
    return delta_core(ctx, y, a, x);
}

double Delta_dx(const Context& ctx, double y, double a, double x) {
    check_delta_args(ctx, y, a);
    return delta_dx_core(ctx, y, a, x);
}

double Delta_quadrature(const Context& ctx, double y, double a, double x) {
    check_delta_args(ctx, y, a);
    if (x <= a) return 0.0;
    constexpr double tol = 1e-13;
    auto fa = [&](double w) {
        return eval_Wrq_alt(ctx.W, ctx.Wq, ctx.q, y, x, w) * qv_minus_chi(ctx, w);
    };
    double A = numerics::integrate(fa, a, std::min(x, y), tol).value;
    double B = 0.0;
    if (x > y) {
        auto fb = [&](double w) { return ctx.W(x - w) * chi_fn(ctx, w); };
        B = numerics::integrate(fb, y, x, tol).value;
    }
    return A - B;
}

namespace {

void check_two_sided(const Context& ctx, double y, double a, double b, double x) {
    require_k_under(ctx);
    if (!(a >= ctx.k_under - 1e-12 && a <= y && y < b && x > a && x < b)) {
        throw Error(ErrorKind::DomainError, "two-sided value needs k_under <= a <= y < b and a < x < b");
    }
}

}  // namespace

double two_sided_value(const Context& ctx, double y, double a, double b, double x) {
    check_two_sided(ctx, y, a, b, x);
    const double ratio = eval_Wrq(ctx.W, ctx.Wq, ctx.q, y, x, a) / eval_Wrq(ctx.W, ctx.Wq, ctx.q, y, b, a);
    auto integrand = [&](double w) {
        if (w < y) {
            const double u = ratio * eval_Wrq(ctx.W, ctx.Wq, ctx.q, y, b, w) -
                             eval_Wrq(ctx.W, ctx.Wq, ctx.q, y, x, w);
            return -u * qv_minus_chi(ctx, w);
        }
        const double u = ratio * ctx.W(b - w) - ctx.W(x - w);
        return u * chi_fn(ctx, w);
    };
    const double breaks[] = {y, x};
    return v_under(ctx, x) + numerics::integrate(integrand, a, b, breaks, 1e-12).value;
}

double two_sided_value_closed(const Context& ctx, double y, double a, double b, double x) {
    check_two_sided(ctx, y, a, b, x);
    const double ratio = eval_Wrq(ctx.W, ctx.Wq, ctx.q, y, x, a) / eval_Wrq(ctx.W, ctx.Wq, ctx.q, y, b, a);
    return v_under(ctx, x) + delta_core(ctx, y, a, x) - ratio * delta_core(ctx, y, a, b);
}

double down_exit_value(const Context& ctx, double y, double a, double x) {
    require_martingale(ctx, "down_exit_value");
    check_delta_args(ctx, y, a);
    if (x <= a) return v_under(ctx, x);
    const double w = eval_Wrq(ctx.W, ctx.Wq, ctx.q, y, x, a);
    return v_under(ctx, x) + w / T_fn(ctx, y, a) * delta_infinity_fn(ctx, y, a) + delta_core(ctx, y, a, x);
}

double down_exit_expectation(const Context& ctx, double y, double a, double x) {
    require_martingale(ctx, "down_exit_expectation");
    check_delta_args(ctx, y, a);
    if (x <= a) return v_under(ctx, x);
    const double w = eval_Wrq(ctx.W, ctx.Wq, ctx.q, y, x, a);
    // psi'(1) = 1 / Phi'(r) when r = psi(1)
    return down_exit_value(ctx, y, a, x) - w / (ctx.dphi_r * T_fn(ctx, y, a));
}

double V_infinity_fn(const Context& ctx, double y, double x) {
    require_martingale(ctx, "V_infinity");
    return (ctx.phi_rq - 1.0) / ctx.dphi_r * std::exp(y) * ctx.I(x - y);
}

double T_fn(const Context& ctx, double y, double a) {
    require_martingale(ctx, "T^(r,q)");
    return eval_Trq(ctx.Wq, ctx.q, y, ctx.k_under, a);
}

double delta_infinity_fn(const Context& ctx, double y, double a) {
    require_martingale(ctx, "Delta_inf");
    if (a < ctx.k_under - 1e-12 || a > y) throw Error(ErrorKind::DomainError, "Delta_inf needs k_under <= a <= y");
    double first = 0.0;
    if (a < y) {
        auto g = [&](double w) { return -T_fn(ctx, y, w) * qv_minus_chi(ctx, w); };
        first = numerics::integrate(g, a, y, 1e-13).value;
    }
    // int_y^inf e^{-w} chi(w) dw with chi = r K + f in the martingale case.
    double tail = ctx.r * ctx.K * std::exp(-y);
    const auto& ph = ctx.model.jumps().phases;
    for (std::size_t i = 0; i < ctx.f_coef.size(); ++i) {
        tail += ctx.f_coef[i] * std::exp(-ph[i].eta * (y - ctx.k_under) - y) / (1.0 + ph[i].eta);
    }
    return first + tail;
}

std::string to_string(RegionShape s) {
    switch (s) {
        case RegionShape::Empty: return "Empty";
        case RegionShape::Ray: return "Ray";
        case RegionShape::PointPlusRay: return "PointPlusRay";
        case RegionShape::IntervalPlusRay: return "IntervalPlusRay";
        case RegionShape::Interval: return "Interval";
        case RegionShape::Point: return "Point";
    }
    return "Unknown";
}

bool StoppingRegion::contains(double x, double tol) const {
    return std::any_of(intervals.begin(), intervals.end(),
                       [&](const Interval& iv) { return x >= iv.lo - tol && x <= iv.hi + tol; });
}

void StoppingRegion::validate(double k_under) const {
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        const auto& iv = intervals[i];
        if (iv.lo > iv.hi) throw Error(ErrorKind::DomainError, "region interval with lo > hi");
        if (iv.lo < k_under - 1e-9) throw Error(ErrorKind::DomainError, "region starts below k_under");
        if (std::isinf(iv.hi) && i + 1 != intervals.size()) {
            throw Error(ErrorKind::DomainError, "unbounded ray must be last");
        }
        if (i > 0 && !(intervals[i - 1].hi < iv.lo)) {
            throw Error(ErrorKind::DomainError, "region intervals overlap or are unsorted");
        }
    }
}

}  // namespace omega
