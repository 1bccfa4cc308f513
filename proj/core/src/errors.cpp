#include "bisim/errors.hpp"

namespace bisim {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::NonPhysicalParams: return "NonPhysicalParams";
    case ErrorKind::BranchCut: return "BranchCut";
    case ErrorKind::DivergentDelay: return "DivergentDelay";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::GridTooNarrow: return "GridTooNarrow";
    case ErrorKind::AliasingDetected: return "AliasingDetected";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::Config: return "ConfigError";
    }
    return "Unknown";
}

bool is_numeric_gate(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::BranchCut:
    case ErrorKind::DivergentDelay:
    case ErrorKind::Overflow:
    case ErrorKind::GridTooNarrow:
    case ErrorKind::AliasingDetected:
        return true;
    default:
        return false;
    }
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
{
}

ConfigError::ConfigError(std::string field, const std::string& what)
    : Error(ErrorKind::Config, field + ": " + what), field_(std::move(field))
{
}

}  // namespace bisim
