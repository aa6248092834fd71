#include "omega/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "omega/error.hpp"

namespace omega::report {

using nlohmann::json;

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json log_price(double v) {
    if (!std::isfinite(v)) return nullptr;
    return {{"log", v}, {"price", std::exp(v)}};
}

namespace {

json opt(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

// Shortest round-trip text; "inf" for the flagged infinite value.
std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

}  // namespace

void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& rows) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows)
        out << fmt(r.x) << ',' << fmt(r.price) << ',' << fmt(r.v) << ',' << fmt(r.payoff) << ','
            << (r.in_region ? 1 : 0) << '\n';
}

json region_json(const ThresholdSet& th, const Solution& sol) {
    json ilog = json::array();
    json iprice = json::array();
    for (const auto& iv : sol.region.intervals) {
        ilog.push_back({num(iv.lo), num(iv.hi)});
        iprice.push_back({num(std::exp(iv.lo)), num(std::exp(iv.hi))});
    }
    json t = {
        {"k_under", num(th.k_under)},
        {"k_over", num(th.k_over)},
        {"u_bar", num(th.u_bar)},
        {"y_tilde", opt(th.y_tilde)},
        {"y_m", opt(th.y_m)},
        {"z_star", opt(sol.z_star)},
        {"a_star", opt(sol.a_star)},
        {"b_star", opt(sol.b_star)},
        {"y_inf", opt(th.y_inf)},
        {"a_inf", opt(sol.a_inf)},
    };
    return {{"y", sol.y},
            {"shape", to_string(sol.region.shape)},
            {"intervals_log", ilog},
            {"intervals_price", iprice},
            {"thresholds", t},
            {"infinite_value", sol.infinite_value}};
}

json regime_json(const RegimeReport& rep) {
    json u = num(rep.u_bar);
    return {{"martingale_class", to_string(rep.martingale_class)},
            {"variation", to_string(rep.variation)},
            {"cond1_holds", rep.cond1_holds},
            {"u_bar", u},
            {"u_bar_is_minus_infinity", std::isinf(rep.u_bar) && rep.u_bar < 0},
            {"hypothesis1", to_string(rep.hypothesis1)},
            {"psi_1", rep.psi_1},
            {"phi_r", num(rep.phi_r)},
            {"phi_rq", num(rep.phi_rq)},
            {"sigma_zero_flag", rep.sigma_zero_flag}};
}

json thresholds_json(const ThresholdSet& th) {
    auto lp = [](const std::optional<double>& v) { return v ? log_price(*v) : json(nullptr); };
    return {{"martingale_class", to_string(th.mclass)},
            {"k_under", log_price(th.k_under)},
            {"k_over", log_price(th.k_over)},
            {"u_bar", log_price(th.u_bar)},
            {"y_bar", log_price(th.y_bar)},
            {"y0", lp(th.y0)},
            {"y_tilde", lp(th.y_tilde)},
            {"x0", lp(th.x0)},
            {"z_star_y_tilde", lp(th.z_star_y_tilde)},
            {"y_m", lp(th.y_m)},
            {"y_inf", lp(th.y_inf)}};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::ConfigError, "cannot write " + path);
    out << text;
    if (!out) throw Error(ErrorKind::ConfigError, "write failed for " + path);
}

}  // namespace omega::report
