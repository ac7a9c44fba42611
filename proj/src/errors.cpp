#include "slowlight/errors.hpp"

#include <sstream>

namespace slowlight {
namespace {

std::string describe(const std::vector<ConfigIssue>& issues) {
    std::ostringstream os;
    for (std::size_t i = 0; i < issues.size(); ++i) {
        if (i) os << "; ";
        if (!issues[i].field.empty()) os << issues[i].field << ": ";
        os << issues[i].message;
    }
    return os.str();
}

std::string locate(const std::string& what, std::optional<double> z,
                   std::optional<std::size_t> tau_index) {
    if (!z && !tau_index) return what;
    std::ostringstream os;
    os << what << " (";
    if (z) os << "z = " << *z << " m";
    if (z && tau_index) os << ", ";
    if (tau_index) os << "tau index " << *tau_index;
    os << ")";
    return os.str();
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error(describe(issues)), issues_(std::move(issues)) {}

ConfigError::ConfigError(std::string field, std::string message)
    : ConfigError(std::vector<ConfigIssue>{{std::move(field), std::move(message)}}) {}

NumericalError::NumericalError(const std::string& what, std::optional<double> z,
                               std::optional<std::size_t> tau_index)
    : std::runtime_error(locate(what, z, tau_index)), z_(z), tau_index_(tau_index) {}

}  // namespace slowlight
