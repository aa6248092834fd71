#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "omega/regime.hpp"
#include "omega/solve.hpp"
#include "omega/thresholds.hpp"

namespace omega::report {

/// Header of the value-profile CSV.
inline constexpr const char* kCsvHeader = "x,price,v,payoff,in_region";

/// Non-finite values become null.
nlohmann::json num(double v);

/// {"log": v, "price": e^v}, null when v is not finite.
nlohmann::json log_price(double v);

void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& rows);

/// {y, shape, intervals_log, intervals_price, thresholds{...}, infinite_value}.
nlohmann::json region_json(const ThresholdSet& th, const Solution& sol);

nlohmann::json regime_json(const RegimeReport& rep);

/// Threshold levels, each as a log/price pair.
nlohmann::json thresholds_json(const ThresholdSet& th);

/// Writes text to a file, throwing ConfigError if the path is unwritable.
void write_file(const std::string& path, const std::string& text);

}  // namespace omega::report
