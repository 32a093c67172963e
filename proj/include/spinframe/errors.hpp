#pragma once

#include <stdexcept>
#include <string>

namespace spinframe {

struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct dimension_mismatch : invalid_input {
    using invalid_input::invalid_input;
};

struct unsupported_dimension : invalid_input {
    using invalid_input::invalid_input;
};

struct cap_exceeded : invalid_input {
    using invalid_input::invalid_input;
};

struct enumeration_too_large : invalid_input {
    enumeration_too_large(const std::string& msg, std::size_t count)
        : invalid_input(msg), pair_count(count) {}
    std::size_t pair_count;
};

struct incomparable_signatures : invalid_input {
    using invalid_input::invalid_input;
};

struct undefined_angle : invalid_input {
    using invalid_input::invalid_input;
};

// Raised when a computation that must be real carries too much imaginary
// residue, or an eigenvalue drops below the clamping threshold.
struct numerical_consistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct malformed_document_error : parse_error {
    using parse_error::parse_error;
};

struct amplitude_count_error : parse_error {
    using parse_error::parse_error;
};

struct norm_violation_error : parse_error {
    using parse_error::parse_error;
};

}  // namespace spinframe
