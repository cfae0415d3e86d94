#pragma once

#include <stdexcept>
#include <string>

namespace vb {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct ConvergenceError : Error { using Error::Error; };
struct UnsupportedError : Error { using Error::Error; };
struct DegenerateError : Error { using Error::Error; };
struct NotBoundaryTrivialError : Error { using Error::Error; };
struct DimensionError : Error { using Error::Error; };
struct NumericError : Error { using Error::Error; };
struct SupportError : Error { using Error::Error; };
struct FlagError : Error { using Error::Error; };
struct StepError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct HarmonicCapError : Error { using Error::Error; };

}  // namespace vb
