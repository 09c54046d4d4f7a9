#pragma once

#include <stdexcept>
#include <string>

namespace bjo {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when an operation requires a nonzero element and got zero.
struct DegenerateZero : Error {
    explicit DegenerateZero(const std::string& what = "zero element where a nonzero one is required")
        : Error(what) {}
};

struct BadExponent : Error {
    explicit BadExponent(const std::string& what = "exponent p must satisfy p > 1") : Error(what) {}
};

struct RoleError : Error {
    explicit RoleError(const std::string& what = "incompatible space roles") : Error(what) {}
};

struct ShapeError : Error {
    explicit ShapeError(const std::string& what = "shape mismatch") : Error(what) {}
};

struct Unsupported : Error {
    explicit Unsupported(const std::string& what = "unsupported space for this operation") : Error(what) {}
};

struct NoCertificate : Error {
    explicit NoCertificate(const std::string& what = "certificate construction failed within tolerance")
        : Error(what) {}
};

}  // namespace bjo
