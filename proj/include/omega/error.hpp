#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace omega {

enum class ErrorKind {
    NoSignChange,
    MaxIterations,
    NonConvergence,
    DegenerateInput,
    InvalidBeta,
    BracketFailure,
    RepeatedRoot,
    DomainError,
    RegimeError,
    ConvergenceError,
    BranchingDetected,
    NoRoot,
    InvalidModel,
    ConfigError,
};

constexpr std::string_view to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::NoSignChange: return "NoSignChange";
        case ErrorKind::MaxIterations: return "MaxIterations";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::DegenerateInput: return "DegenerateInput";
        case ErrorKind::InvalidBeta: return "InvalidBeta";
        case ErrorKind::BracketFailure: return "BracketFailure";
        case ErrorKind::RepeatedRoot: return "RepeatedRoot";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::RegimeError: return "RegimeError";
        case ErrorKind::ConvergenceError: return "ConvergenceError";
        case ErrorKind::BranchingDetected: return "BranchingDetected";
        case ErrorKind::NoRoot: return "NoRoot";
        case ErrorKind::InvalidModel: return "InvalidModel";
        case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

/// Single exception type for the library; the kind drives CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace omega
