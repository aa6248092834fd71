#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <sstream>
#include <utility>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "omega/config.hpp"
#include "omega/error.hpp"
#include "omega/mc.hpp"
#include "omega/report.hpp"
#include "omega/solve.hpp"

namespace omega::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Options {
    std::string verb;
    std::string config_path;
    std::string out_dir = ".";
    std::string overrides;
    std::optional<std::uint64_t> seed;
    std::size_t grid = 600;
    std::size_t mc_paths = 100000;
    double dt = 1e-3;
};

struct Session {
    Options opt;
    ModelConfig cfg;
    Context ctx;
    std::ostream& out;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string emit(Session& s, const std::string& name, const std::string& text) {
    const auto path = (fs::path(s.opt.out_dir) / name).string();
    report::write_file(path, text);
    s.out << path << '\n';
    return path;
}

double level_y(const Session& s) {
    if (!s.cfg.level_y) throw Error(ErrorKind::ConfigError, "this verb needs level_y (config or --overrides level_y=...)");
    return *s.cfg.level_y;
}

json with_config(const Session& s, json j) {
    j["config"] = to_json(s.cfg);
    return j;
}

void write_profile(Session& s, const ThresholdSet& th, double y, const std::string& tag) {
    GridSpec grid;
    grid.n = s.opt.grid;
    const auto vp = solve(s.ctx, th, y, grid);
    std::ostringstream csv;
    report::write_profile_csv(csv, vp.rows);
    emit(s, "profile_" + tag + ".csv", csv.str());
    emit(s, "region_" + tag + ".json", dump(with_config(s, report::region_json(th, vp.solution))));
}

int do_classify(Session& s) {
    emit(s, "regime.json", dump(with_config(s, report::regime_json(classify(s.ctx)))));
    return kExitOk;
}

int do_thresholds(Session& s) {
    emit(s, "thresholds.json", dump(with_config(s, report::thresholds_json(compute_thresholds(s.ctx)))));
    return kExitOk;
}

int do_region(Session& s) {
    write_profile(s, compute_thresholds(s.ctx), level_y(s), "y");
    return kExitOk;
}

int do_figure1(Session& s) {
    const auto th = compute_thresholds(s.ctx);
    if (s.ctx.mclass != MartingaleClass::SuperMartingale || !th.y_tilde)
        throw Error(ErrorKind::RegimeError, "figure1 needs the super-martingale regime with a branching level");
    const double yt = *th.y_tilde;
    write_profile(s, th, 2.7, "y2.7");
    write_profile(s, th, yt, "ytilde");
    write_profile(s, th, 3.0, "y3");
    const auto r27 = solve_region(s.ctx, th, 2.7);
    const auto rt = solve_region(s.ctx, th, yt);
    const auto r3 = solve_region(s.ctx, th, 3.0);
    auto opt_lp = [](const std::optional<double>& v) { return v ? report::log_price(*v) : json(nullptr); };
    json summary = {
        {"psi_1", s.ctx.psi1},
        {"u_bar", report::log_price(th.u_bar)},
        {"y_tilde", report::log_price(yt)},
        {"y_m", opt_lp(th.y_m)},
        {"k_under", report::log_price(s.ctx.k_under)},
        {"k_over", report::log_price(s.ctx.k_over)},
        {"panels",
         {{{"y", report::log_price(2.7)}, {"shape", to_string(r27.region.shape)}, {"z_star", opt_lp(r27.z_star)}},
          {{"y", report::log_price(yt)},
           {"shape", to_string(rt.region.shape)},
           {"point", report::log_price(s.ctx.k_under)},
           {"z_star", opt_lp(rt.z_star)}},
          {{"y", report::log_price(3.0)},
           {"shape", to_string(r3.region.shape)},
           {"k_under", report::log_price(s.ctx.k_under)},
           {"a_star", opt_lp(r3.a_star)},
           {"b_star", opt_lp(r3.b_star)}}}},
    };
    emit(s, "figure1_summary.json", dump(with_config(s, summary)));
    return kExitOk;
}

struct CheckRow {
    std::string name;
    double x;
    double analytic;
    mc::McEstimate est;
    [[nodiscard]] double z() const {
        return est.std_error > 0.0 ? (est.mean - analytic) / est.std_error : (est.mean == analytic ? 0.0 : INFINITY);
    }
};

int do_verify_mc(Session& s) {
    const auto& ctx = s.ctx;
    if (ctx.mclass == MartingaleClass::SubMartingale)
        throw Error(ErrorKind::RegimeError, "value is infinite for r < psi(1); nothing to verify");
    const double y = level_y(s);
    const auto th = compute_thresholds(ctx);
    const auto sol = solve_region(ctx, th, y);

    mc::PathConfig pc;
    pc.dt = s.opt.dt;
    pc.n_paths = s.opt.mc_paths;
    if (s.opt.seed) pc.seed = *s.opt.seed;

    std::vector<CheckRow> rows;
    {
        const double x = y + 0.2;
        const double z = y + 0.9;
        rows.push_back({"upcross_discount", x, ctx.I(x - y) / ctx.I(z - y), mc::estimate_upcross_discount(ctx, x, z, y, pc)});
    }
    {
        const double a = y - 0.1;
        const double x = y + 0.2;
        const double b = y + 0.5;
        const double an = eval_Wrq(ctx.W, ctx.Wq, ctx.q, y, x, a) / eval_Wrq(ctx.W, ctx.Wq, ctx.q, y, b, a);
        rows.push_back({"uphit", x, an, mc::estimate_uphit(ctx, x, y, a, b, pc)});
    }
    if (ctx.mclass == MartingaleClass::Martingale) {
        const double x = ctx.k_under;
        rows.push_back({"never_stop", x, V_infinity_fn(ctx, y, x), mc::estimate_never_stop(ctx, x, y, pc)});
        if (sol.a_inf) {
            const double a = *sol.a_inf;
            const double x2 = 0.5 * (a + y);
            rows.push_back({"down_exit", x2, down_exit_expectation(ctx, y, a, x2),
                            mc::estimate_two_sided(ctx, x2, y, a, INFINITY, pc)});
        }
    } else {
        // three continuation points spread over [k_under - 1, upper edge of the continuation set]
        double hi = ctx.k_under;
        for (const auto& iv : sol.region.intervals) hi = std::max(hi, iv.lo);
        std::vector<double> xs;
        for (double x = ctx.k_under - 1.0; x < hi && xs.size() < 64; x += (hi - ctx.k_under + 1.0) / 64.0)
            if (!sol.region.contains(x, 1e-3)) xs.push_back(x);
        for (std::size_t k = 0; k < 3 && !xs.empty(); ++k) {
            const double x = xs[(xs.size() - 1) * (2 * k + 1) / 6];
            rows.push_back({"solve_value", x, value_at(ctx, sol, x), mc::estimate_region_strategy(ctx, x, y, sol.region, pc)});
        }
        if (sol.a_star && sol.b_star) {
            const double x = 0.5 * (*sol.a_star + *sol.b_star);
            rows.push_back({"two_sided", x, two_sided_value(ctx, y, *sol.a_star, *sol.b_star, x),
                            mc::estimate_two_sided(ctx, x, y, *sol.a_star, *sol.b_star, pc)});
        }
    }

    std::ostringstream csv;
    csv.precision(17);
    csv << "check,x,analytic,mc_mean,std_error,z_score\n";
    json table = json::array();
    bool bad = false;
    for (const auto& r : rows) {
        const double z = r.z();
        bad = bad || !(std::abs(z) <= kMcZLimit);
        csv << r.name << ',' << r.x << ',' << r.analytic << ',' << r.est.mean << ',' << r.est.std_error << ',' << z << '\n';
        table.push_back({{"check", r.name},
                         {"x", r.x},
                         {"analytic", r.analytic},
                         {"mc_mean", r.est.mean},
                         {"std_error", r.est.std_error},
                         {"z_score", report::num(z)},
                         {"n_paths", r.est.n},
                         {"n_killed", r.est.n_killed},
                         {"truncation_bound", r.est.truncation_bound}});
    }
    emit(s, "verify_mc.csv", csv.str());
    json doc = {{"y", y}, {"dt", pc.dt}, {"seed", pc.seed}, {"checks", table}, {"z_limit", kMcZLimit}};
    emit(s, "verify_mc.json", dump(with_config(s, doc)));
    return bad ? kExitMcMismatch : kExitOk;
}

void error_json(std::ostream& err, std::string_view kind, const std::string& msg) {
    err << json{{"error", kind}, {"message", msg}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Optimal stopping of a perpetual call under an occupation-time discount clock"};
    app.require_subcommand(1);
    app.add_option("--config", opt.config_path, "model config (.toml or .json)")->required();
    app.add_option("--out", opt.out_dir, "output directory");
    app.add_option("--seed", opt.seed, "Monte Carlo seed");
    app.add_option("--overrides", opt.overrides, "key=value,... applied over the config");
    app.add_option("--grid", opt.grid, "points in the output grid")->check(CLI::PositiveNumber);
    app.add_option("--mc-paths", opt.mc_paths, "Monte Carlo paths")->check(CLI::Range(2, 100000000));
    app.add_option("--dt", opt.dt, "Monte Carlo fine time step")->check(CLI::PositiveNumber);
    const std::pair<const char*, const char*> verbs[] = {
        {"classify", "regime report (regime.json)"},
        {"thresholds", "level-independent thresholds (thresholds.json)"},
        {"region", "value profile and stopping region at level_y"},
        {"value-table", "same output as region"},
        {"verify-mc", "analytic values against Monte Carlo (verify_mc.csv/json)"},
        {"figure1", "profiles and regions at y = 2.7, the branching level and 3"},
    };
    for (const auto& [verb, help] : verbs) app.add_subcommand(verb, help)->fallthrough();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        error_json(err, "UsageError", e.what());
        return kExitConfig;
    }
    opt.verb = app.get_subcommands().front()->get_name();

    try {
        auto cfg = load_config(opt.config_path, parse_overrides(opt.overrides));
        std::error_code ec;
        fs::create_directories(opt.out_dir, ec);
        if (ec) throw Error(ErrorKind::ConfigError, "cannot create output directory " + opt.out_dir);
        Session s{opt, cfg, make_context(cfg.model(), cfg.r, cfg.q, cfg.strike_K), out};
        if (opt.verb == "classify") return do_classify(s);
        if (opt.verb == "thresholds") return do_thresholds(s);
        if (opt.verb == "region" || opt.verb == "value-table") return do_region(s);
        if (opt.verb == "verify-mc") return do_verify_mc(s);
        return do_figure1(s);
    } catch (const Error& e) {
        error_json(err, to_string(e.kind()), e.what());
        switch (e.kind()) {
            case ErrorKind::ConfigError:
            case ErrorKind::InvalidModel: return kExitConfig;
            case ErrorKind::RegimeError:
            case ErrorKind::BranchingDetected: return kExitRegime;
            default: return kExitFailure;
        }
    } catch (const std::exception& e) {
        error_json(err, "Internal", e.what());
        return kExitFailure;
    }
}

}  // namespace omega::cli
