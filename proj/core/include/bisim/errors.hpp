#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bisim {

enum class ErrorKind {
    NonPhysicalParams,
    BranchCut,
    DivergentDelay,
    Overflow,
    GridTooNarrow,
    AliasingDetected,
    GridMismatch,
    Config,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Overflow, aliasing and grid-span failures are reported by the CLI with a
// dedicated exit code.
bool is_numeric_gate(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Configuration problems carry the dotted path of the offending field.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what);
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace bisim
