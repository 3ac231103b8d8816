#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mubent {

enum class ErrorKind {
    invalid_distribution,
    infeasible,
    range,
    unsupported_dimension,
    dimension_too_small,
    dimension_mismatch,
    invalid_state,
    not_applicable,
    inconclusive,
    io,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::invalid_distribution: return "invalid_distribution";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::range: return "range";
    case ErrorKind::unsupported_dimension: return "unsupported_dimension";
    case ErrorKind::dimension_too_small: return "dimension_too_small";
    case ErrorKind::dimension_mismatch: return "dimension_mismatch";
    case ErrorKind::invalid_state: return "invalid_state";
    case ErrorKind::not_applicable: return "not_applicable";
    case ErrorKind::inconclusive: return "inconclusive";
    case ErrorKind::io: return "io";
    }
    return "unknown";
}

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace mubent
