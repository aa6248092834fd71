#pragma once

#include <optional>
#include <vector>

#include "omega/context.hpp"
#include "omega/regime.hpp"
#include "omega/thresholds.hpp"
#include "omega/valuation.hpp"

namespace omega {

/// Level-specific solution: region plus the free boundaries that define it.
struct Solution {
    double y;
    StoppingRegion region;
    bool infinite_value = false;
    std::optional<double> z_star;
    std::optional<double> a_star;
    std::optional<double> b_star;
    std::optional<double> a_inf;
};

/// |y - y_tilde| at or below this is treated as the branching level itself.
inline constexpr double kYTildeTol = 1e-7;
/// |y - y_inf| at or below this is treated as y_inf.
inline constexpr double kYInfTol = 1e-9;

Solution solve_region(const Context& ctx, const ThresholdSet& th, double y);

/// v(x; y) for the given solution; +inf when the value is infinite.
double value_at(const Context& ctx, const Solution& sol, double x);

struct ValueProfile {
    double y;
    std::vector<ProfileRow> rows;
    Solution solution;
    RegimeReport regime;
};

/// Log-price grid used by default: n points over [k_under - 2, k_over + 0.5].
std::vector<double> default_grid(const Context& ctx, const GridSpec& spec, double y);

/// Row kernel; the parallel variant fills rows with OpenMP, results identical to serial.
std::vector<ProfileRow> evaluate_rows(const Context& ctx, const Solution& sol, const std::vector<double>& xs,
                                      bool parallel);

ValueProfile solve(const Context& ctx, const ThresholdSet& th, double y, const GridSpec& grid = {},
                   bool parallel = true);

ValueProfile solve(const Context& ctx, double y);

}  // namespace omega
