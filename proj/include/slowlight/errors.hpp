// errors.hpp - exception types shared by the solver, analysis and CLI layers.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace slowlight {

/// One violated configuration invariant, keyed by the offending field.
struct ConfigIssue {
    std::string field;
    std::string message;
};

/// Invalid input: bad config values, malformed scenario files, unknown keys.
/// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<ConfigIssue> issues);
    ConfigError(std::string field, std::string message);

    const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<ConfigIssue> issues_;
};

/// Failure inside the integrators: accuracy guard tripped, stiffness,
/// non-finite field. The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what,
                            std::optional<double> z = std::nullopt,
                            std::optional<std::size_t> tau_index = std::nullopt);

    std::optional<double> z() const noexcept { return z_; }
    std::optional<std::size_t> tau_index() const noexcept { return tau_index_; }

private:
    std::optional<double> z_;
    std::optional<std::size_t> tau_index_;
};

/// An observable could not be extracted (no interior peak, bad fit, ...).
class AnalysisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace slowlight
