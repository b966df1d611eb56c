#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qent {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid argument values: non-finite amplitudes, non-unitary matrices,
/// non-normalized directions, states that are not unit-norm where required.
struct validation_error : error {
    using error::error;
};

/// Shape problems: dims/amps length mismatch, site or outcome out of range.
struct dimension_error : validation_error {
    using validation_error::validation_error;
};

/// A zero vector where a direction is required (normalize, factorize).
struct degenerate_state_error : error {
    using error::error;
};

/// Lexing, parsing, or expression-evaluation failure, with the byte offset
/// into the source text where it was detected.
struct parse_error : error {
    std::size_t position;

    parse_error(const std::string& message, std::size_t pos)
        : error(message + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

/// A measurement branch with probability below threshold.
struct unrealizable_branch_error : error {
    using error::error;
};

/// File read/write failure.
struct io_error : error {
    using error::error;
};

} // namespace qent
