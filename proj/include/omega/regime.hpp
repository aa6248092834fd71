#pragma once

#include <string>

#include "omega/context.hpp"

namespace omega {

enum class Variation { Bounded, Unbounded };
enum class Hypothesis1 { Implied, Assumed, Violated };

struct RegimeReport {
    MartingaleClass martingale_class;
    Variation variation;
    bool cond1_holds;
    double u_bar;  ///< -inf when cond1 holds with unbounded variation, NaN outside r > psi(1)
    Hypothesis1 hypothesis1 = Hypothesis1::Implied;
    double psi_1;
    double phi_r;
    double phi_rq;
    /// sigma = 0: the smoothness assumption on W is not guaranteed.
    bool sigma_zero_flag = false;
};

std::string to_string(MartingaleClass c);
std::string to_string(Variation v);
std::string to_string(Hypothesis1 h);

RegimeReport classify(const Context& ctx);
RegimeReport classify(const LevyModel& model, double r, double q, double K);

}  // namespace omega
