#include "omega/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "omega/error.hpp"
#include "omega/numerics.hpp"
#include "omega/valuation.hpp"

namespace omega {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_super(const Context& ctx, const char* what) {
    if (ctx.mclass != MartingaleClass::SuperMartingale) {
        throw Error(ErrorKind::RegimeError, std::string(what) + " needs r > psi(1)");
    }
}

}  // namespace

double g_left_at_zero(const Context& ctx) { return (ctx.phi_rq - 1.0) / ctx.phi_rq; }

double g_fn(const Context& ctx, double u) {
    if (u < 0.0) return std::exp(u) * g_left_at_zero(ctx);
    return std::exp(u) * (1.0 - 1.0 / hazard(ctx.W, ctx.I, u));
}

double H_fn(const Context& ctx, double u) {
    const double pq = ctx.phi_rq;
    if (u < 0.0) return (pq - 1.0) * pq;
    return (pq - 1.0) * hazard(ctx.W, ctx.I, u) - ctx.W(u, 1) / ctx.I(u);
}

double g_deriv(const Context& ctx, double u) {
    const double lam = hazard(ctx.W, ctx.I, u);
    return std::exp(u) * H_fn(ctx, u) / (lam * lam);
}

bool cond1_holds(const Context& ctx) {
    const double pq = ctx.phi_rq;
    return (pq - 1.0) * (pq - ctx.q * ctx.W(0.0)) - ctx.q * ctx.W(0.0, 1) >= 0.0;
}

double find_u_bar(const Context& ctx) {
    require_super(ctx, "u_bar");
    if (cond1_holds(ctx)) return ctx.model.bounded_variation() ? 0.0 : -kInf;
    constexpr int n = 3000;
    const double lo = 1e-6;
    double hi = 50.0;
    for (int attempt = 0; attempt < 3; ++attempt, hi *= 4.0) {
        std::vector<double> us(n);
        std::vector<double> hs(n);
        for (int i = 0; i < n; ++i) {
            us[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
            hs[i] = H_fn(ctx, us[i]);
        }
        if (hs.back() < 0.0) continue;
        for (int i = n - 2; i >= 0; --i) {
            if (hs[i] < 0.0 && hs[i + 1] >= 0.0) {
                auto f = [&](double u) { return H_fn(ctx, u); };
                return numerics::find_root(f, us[i], us[i + 1], 1e-14);
            }
        }
        // H(0+) < 0 but no sign change on the grid: the root lies below the first node.
        auto f = [&](double u) { return H_fn(ctx, u); };
        return numerics::find_root(f, 0.0, us[0], 1e-14);
    }
    throw Error(ErrorKind::ConvergenceError, "H stays negative on the search grid");
}

double find_y_bar(const Context& ctx, double u_bar) {
    require_super(ctx, "y_bar");
    if (!std::isfinite(u_bar)) return kInf;
    return std::log(ctx.K / g_fn(ctx, u_bar));
}

double z_star(const Context& ctx, double u_bar, double y) {
    require_super(ctx, "z*");
    const double y_bar = find_y_bar(ctx, u_bar);
    if (y > y_bar + 1e-12) {
        std::ostringstream os;
        os << "z*(y) undefined for y = " << y << " > y_bar = " << y_bar;
        throw Error(ErrorKind::DomainError, os.str());
    }
    const double target = ctx.K * std::exp(-y);
    double lo = 0.0;
    if (!std::isfinite(u_bar)) {
        if (target <= g_left_at_zero(ctx)) return ctx.k_under;
        lo = std::max(0.0, ctx.k_under - y);
    } else {
        lo = std::max(u_bar, ctx.k_under - y);
    }
    auto F = [&](double u) { return std::exp(y) * g_fn(ctx, u) - ctx.K; };
    const double f_lo = F(lo);
    if (f_lo >= 0.0) return y + lo;
    double hi = std::max(ctx.k_over - y, lo + 1e-3);
    double f_hi = F(hi);
    for (int i = 0; f_hi <= 0.0 && i < 60; ++i) {
        hi += 0.5;
        f_hi = F(hi);
    }
    return y + numerics::find_root(F, {lo, hi, f_lo, f_hi}, 1e-13);
}

double find_y0(const Context& ctx, double u_bar) {
    require_super(ctx, "y0");
    if (!std::isfinite(u_bar)) throw Error(ErrorKind::RegimeError, "y0 undefined when u_bar = -inf");
    double sup = g_left_at_zero(ctx);
    if (u_bar > 0.0) {
        constexpr int n = 200;
        int best = 0;
        double best_g = -kInf;
        std::vector<double> us(n + 1);
        for (int i = 0; i <= n; ++i) {
            us[i] = u_bar * i / n;
            const double gi = g_fn(ctx, us[i]);
            if (gi > best_g) {
                best_g = gi;
                best = i;
            }
        }
        auto g = [&](double u) { return g_fn(ctx, u); };
        const auto ext = numerics::golden_max(g, us[std::max(best - 1, 0)], us[std::min(best + 1, n)], 1e-12);
        sup = std::max({sup, best_g, ext.f});
    } else {
        sup = std::max(sup, g_fn(ctx, 0.0));
    }
    return std::log(ctx.K / sup);
}

SupR sup_R(const Context& ctx, double u_bar, double y) {
    const double z = z_star(ctx, u_bar, y);
    const double k = ctx.k_under;
    const double upper = std::isfinite(u_bar) ? u_bar + y : z;
    const double lower = k - 5.0;
    std::vector<double> xs;
    constexpr int half = 200;
    const double left_end = std::min(k, upper);
    for (int i = 0; i <= half; ++i) {
        const double t = static_cast<double>(i) / half;
        xs.push_back(left_end - (left_end - lower) * t * t);
    }
    if (upper > k) {
        for (int i = 1; i <= half; ++i) {
            const double t = static_cast<double>(i) / half;
            xs.push_back(k + (upper - k) * t * t);
        }
    }
    std::sort(xs.begin(), xs.end());
    auto R = [&](double x) { return R_fn(ctx, y, z, x); };
    std::size_t best = 0;
    double best_r = -kInf;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double ri = R(xs[i]);
        if (ri > best_r) {
            best_r = ri;
            best = i;
        }
    }
    const double a = xs[best == 0 ? 0 : best - 1];
    const double b = xs[std::min(best + 1, xs.size() - 1)];
    const auto ext = numerics::golden_max(R, a, b, 1e-11);
    if (ext.f > best_r) return {ext.f, ext.x};
    return {best_r, xs[best]};
}

YTilde find_y_tilde(const Context& ctx, double u_bar, double y0, double y_bar) {
    require_super(ctx, "y_tilde");
    if (!std::isfinite(u_bar)) throw Error(ErrorKind::RegimeError, "y_tilde undefined when u_bar = -inf");
    auto S = [&](double y) { return sup_R(ctx, u_bar, y).value - 1.0; };
    const double s_lo = S(y0);
    const double s_hi = S(y_bar);
    if (!(s_lo < 0.0 && s_hi > 0.0)) {
        std::ostringstream os;
        os << "sup R - 1 not bracketed on [y0, y_bar]: " << s_lo << ", " << s_hi;
        throw Error(ErrorKind::ConvergenceError, os.str());
    }
    const double yt = numerics::find_root(S, {y0, y_bar, s_lo, s_hi}, 1e-12);
    return {yt, sup_R(ctx, u_bar, yt).argmax};
}

double find_y_m(const Context& ctx) {
    require_super(ctx, "y_m");
    auto chi = [&](double x) { return chi_fn(ctx, x); };
    double lo = ctx.k_under;
    const double f_lo = chi(lo);
    // chi already non-positive at k_under: no level where it changes sign above k_under
    if (f_lo <= 0.0) return lo;
    double hi = ctx.k_over;
    double f_hi = chi(hi);
    for (int i = 0; f_hi >= 0.0 && i < 50; ++i) {
        hi += 1.0;
        f_hi = chi(hi);
    }
    return numerics::find_root(chi, {lo, hi, f_lo, f_hi}, 1e-13);
}

namespace {

struct MinDelta {
    double value;
    double x;
};

MinDelta min_delta(const Context& ctx, double y, double a, double z_hi) {
    constexpr int n = 200;
    std::vector<double> xs(n);
    int best = 0;
    double best_v = kInf;
    for (int i = 0; i < n; ++i) {
        xs[i] = y + (z_hi - y) * (i + 1) / n;
        const double v = Delta_fn(ctx, y, a, xs[i]);
        if (v < best_v) {
            best_v = v;
            best = i;
        }
    }
    const double lo = best > 0 ? xs[best - 1] : y + 1e-12;
    const double hi = xs[std::min(best + 1, n - 1)];
    auto d = [&](double x) { return Delta_dx(ctx, y, a, x); };
    const double d_lo = d(lo);
    const double d_hi = d(hi);
    double x_min = xs[best];
    if (d_lo < 0.0 && d_hi > 0.0) {
        x_min = numerics::find_root(d, {lo, hi, d_lo, d_hi}, 1e-14);
    } else if (best + 1 < n) {
        auto f = [&](double x) { return Delta_fn(ctx, y, a, x); };
        x_min = numerics::minimize(f, lo, hi).x;
    }
    const double v = Delta_fn(ctx, y, a, x_min);
    if (v < best_v) return {v, x_min};
    return {best_v, xs[best]};
}

ExercisePair pair_raw(const Context& ctx, const PairInputs& in, double y) {
    const double z_hi = in.z_star_y_tilde;
    auto m = [&](double a) { return min_delta(ctx, y, a, z_hi).value; };
    const double lo = ctx.k_under;
    const double hi = y - 1e-10;
    const double m_lo = m(lo);
    const double m_hi = m(hi);
    if (!(m_lo > 0.0 && m_hi <= 0.0)) {
        std::ostringstream os;
        os << "min Delta not bracketed in a at y = " << y << ": " << m_lo << ", " << m_hi;
        throw Error(ErrorKind::ConvergenceError, os.str());
    }
    const double a = numerics::find_root(m, {lo, hi, m_lo, m_hi}, 1e-13);
    const auto md = min_delta(ctx, y, a, z_hi);
    return {a, md.x, y};
}

}  // namespace

ExercisePair find_pair(const Context& ctx, const PairInputs& in, double y, bool probe) {
    require_super(ctx, "find_pair");
    if (!std::isfinite(in.u_bar) || !(y > in.y_tilde && y < in.y_m)) {
        throw Error(ErrorKind::RegimeError, "find_pair needs u_bar >= 0 and y_tilde < y < y_m");
    }
    const auto pair = pair_raw(ctx, in, y);
    if (probe) {
        constexpr double h = 1e-3;
        constexpr double jump = 0.05;
        for (double dy : {h, -h}) {
            const double y2 = y + dy;
            if (!(y2 > in.y_tilde && y2 < in.y_m)) continue;
            const auto other = pair_raw(ctx, in, y2);
            if (std::abs(other.b_star - pair.b_star) > jump) {
                std::ostringstream os;
                os << "b*(y) jumps from " << pair.b_star << " to " << other.b_star << " between y = " << y
                   << " and " << y2;
                throw Error(ErrorKind::BranchingDetected, os.str());
            }
        }
    }
    return pair;
}

double find_y_infinity(const Context& ctx) {
    if (ctx.mclass != MartingaleClass::Martingale) {
        throw Error(ErrorKind::RegimeError, "y_inf needs r = psi(1)");
    }
    const double pq = ctx.phi_rq;
    return ctx.k_under + std::log(pq * (pq - 1.0) / (ctx.dphi_r * ctx.q)) / (pq - 1.0);
}

double find_a_infinity(const Context& ctx, double y) {
    if (ctx.mclass != MartingaleClass::Martingale) {
        throw Error(ErrorKind::RegimeError, "a_inf needs r = psi(1)");
    }
    auto D = [&](double a) { return delta_infinity_fn(ctx, y, a); };
    const double lo = ctx.k_under;
    if (!(y > lo)) throw Error(ErrorKind::NoRoot, "a_inf needs y > k_under");
    const double d_lo = D(lo);
    const double d_hi = D(y);
    if (!(d_lo < 0.0 && d_hi > 0.0)) {
        std::ostringstream os;
        os << "Delta_inf has no sign change on (k_under, y): " << d_lo << ", " << d_hi;
        throw Error(ErrorKind::NoRoot, os.str());
    }
    return numerics::find_root(D, {lo, y, d_lo, d_hi}, 1e-14);
}

PairInputs ThresholdSet::pair_inputs() const {
    return {u_bar, y_tilde.value_or(kInf), y_m.value_or(-kInf), z_star_y_tilde.value_or(kInf)};
}

ThresholdSet compute_thresholds(const Context& ctx) {
    ThresholdSet t{};
    t.mclass = ctx.mclass;
    t.k_under = ctx.k_under;
    t.k_over = ctx.k_over;
    switch (ctx.mclass) {
        case MartingaleClass::SubMartingale: return t;
        case MartingaleClass::Martingale: t.y_inf = find_y_infinity(ctx); return t;
        case MartingaleClass::SuperMartingale: break;
    }
    t.u_bar = find_u_bar(ctx);
    t.y_bar = find_y_bar(ctx, t.u_bar);
    t.y_m = find_y_m(ctx);
    if (std::isfinite(t.u_bar)) {
        t.y0 = find_y0(ctx, t.u_bar);
        const auto yt = find_y_tilde(ctx, t.u_bar, *t.y0, t.y_bar);
        t.y_tilde = yt.y_tilde;
        t.x0 = yt.x0;
        t.z_star_y_tilde = z_star(ctx, t.u_bar, yt.y_tilde);
    }
    return t;
}

}  // namespace omega
