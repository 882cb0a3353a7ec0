#pragma once

#include <stdexcept>
#include <string>

namespace daha {

// Parameter choices (or evaluation points) that hit a resonance, a pole, or a
// vanishing denominator.  The CLI maps this family to exit code 3.
struct non_generic_error : std::runtime_error {
    explicit non_generic_error(const std::string& what) : std::runtime_error(what) {}
};

// Exact Laurent division failed.  Either the operators are mis-assembled or
// the parameters are non-generic, so this derives from non_generic_error.
struct division_error : non_generic_error {
    explicit division_error(const std::string& what) : non_generic_error(what) {}
};

// A truncated product/series factor sits too close to a pole to certify.
struct pole_error : non_generic_error {
    explicit pole_error(const std::string& what) : non_generic_error(what) {}
};

// A requested cutoff cannot certify the result (shell ratio >= 1, a factor
// that does not contract, a sign that the tail cannot separate from zero).
// The CLI maps this to exit code 4.
struct insufficient_cutoff_error : std::runtime_error {
    explicit insufficient_cutoff_error(const std::string& what) : std::runtime_error(what) {}
};

// Contract violations (mismatched root systems, non-integral character
// exponents, unsupported type labels).
struct usage_error : std::invalid_argument {
    explicit usage_error(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace daha
