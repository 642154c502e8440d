#pragma once

#include <stdexcept>
#include <string>

namespace geocycle {

// Malformed or out-of-contract input (bad JSON, unknown ids, broken preconditions).
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A disconnected pair was asked for a path.
struct NoPathError : InputError {
    explicit NoPathError(const std::string& what) : InputError(what) {}
};

// A certified bound could not be produced within the configured budget,
// or a certificate handed in by the caller turned out to be inconsistent.
struct CertificationError : std::runtime_error {
    explicit CertificationError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
[[noreturn]] inline void check_failed(const char* expr, const char* file, int line) {
    throw std::logic_error(std::string("internal invariant failed: ") + expr + " at " +
                           file + ":" + std::to_string(line));
}
}  // namespace detail

}  // namespace geocycle

#define GEOCYCLE_CHECK(expr) \
    do {                     \
        if (!(expr)) ::geocycle::detail::check_failed(#expr, __FILE__, __LINE__); \
    } while (0)
