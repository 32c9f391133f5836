#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sphcap {

enum class ErrorKind {
    SelfIntersection,
    DegenerateRing,
    ZeroArea,
    TangencyUnresolved,
    MalformedProfile,
    RangeViolation,
    DegenerateOutput,
    InvalidParameter,
    InfeasibleParameters,
    Overlap,
    InvalidDimension,
    InvalidAlpha,
    MalformedInput,
    Io,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace sphcap
