#ifndef PERIODLAB_ERRORS_HPP
#define PERIODLAB_ERRORS_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace periodlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidTruncationError : Error { using Error::Error; };
struct UnsupportedWeightError : Error { using Error::Error; };
struct NotACuspError : Error { using Error::Error; };
struct WrongLevelError : Error { using Error::Error; };
struct LevelMismatchError : Error { using Error::Error; };
struct CalibrationFailureError : Error { using Error::Error; };
struct DegenerateLeadingCoefficientError : Error { using Error::Error; };
struct NonConvergenceError : Error { using Error::Error; };
struct UsageError : Error { using Error::Error; };

struct ParseError : Error {
    ParseError(const std::string& what, std::size_t line_no)
        : Error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
    std::size_t line;
};

// Invariant failures carry the index n at which the check failed.
struct InvariantViolationError : Error {
    InvariantViolationError(const std::string& what, std::int64_t at)
        : Error(what + " (n = " + std::to_string(at) + ")"), n(at) {}
    std::int64_t n;
};

struct InsufficientCoefficientsError : Error {
    InsufficientCoefficientsError(const std::string& what, std::size_t required_m)
        : Error(what + " (need M >= " + std::to_string(required_m) + ")"),
          required(required_m) {}
    std::size_t required;
};

}  // namespace periodlab

#endif
