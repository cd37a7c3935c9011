#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace r31 {

inline constexpr double pi = std::numbers::pi;

// Thrown when inputs are outside the domain of an operation. The CLI maps
// this to exit code 1.
class Rejection : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when an internal consistency check fails (a bug or a tolerance
// mismatch, never bad user input).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// The two lines of the cylinder on which level curves start and end.
enum class Line { Zero, Pi };

inline const char* to_string(Line l) { return l == Line::Zero ? "0" : "pi"; }

}  // namespace r31
