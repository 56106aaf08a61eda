#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace abnormal {

enum class ErrorKind {
    Precondition,   // caller violated a documented precondition
    Budget,         // materialization / factorization / length budget exceeded
    Precision,      // certified enclosures did not separate at the precision cap
    Ambiguity,      // a digit window could not be certified (borrow chain at the boundary)
    Level,          // representation level not available for the requested accessor
    Parse,          // malformed textual input
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

inline void require(bool condition, const std::string& message) {
    if (!condition) fail(ErrorKind::Precondition, message);
}

} // namespace abnormal
