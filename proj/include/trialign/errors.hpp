#pragma once

#include <stdexcept>
#include <string>

namespace trialign {

// Base class for everything thrown by this library.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text (edge lists, similarity files, truth files).
struct parse_error : error {
    explicit parse_error(const std::string& what) : error(what) {}
};

// Structurally valid input that violates a precondition: unknown labels,
// dimension mismatches, bad configuration values.
struct validation_error : error {
    explicit validation_error(const std::string& what) : error(what) {}
};

// Non-finite values or arithmetic that would overflow.
struct numeric_error : error {
    explicit numeric_error(const std::string& what) : error(what) {}
};

// A degenerate solver state: zero iterate, empty prior, or a constraint
// that leaves nothing to align.
struct degenerate_error : error {
    explicit degenerate_error(const std::string& what) : error(what) {}
};

}  // namespace trialign
