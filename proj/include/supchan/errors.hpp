#pragma once

#include <stdexcept>
#include <string>

namespace supchan {

// Base for everything thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotSquare : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NotDensityMatrix : Error { using Error::Error; };
struct ProbabilityRange : Error { using Error::Error; };
struct NotUnitVector : Error { using Error::Error; };
struct NotNormalized : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct GammaRange : Error { using Error::Error; };
struct NoUnitEigenvalue : Error { using Error::Error; };
struct NoFixedPoint : Error { using Error::Error; };
struct NotStochastic : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct EmptyChain : Error { using Error::Error; };
struct InvalidConfig : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// Kraus set does not resolve the identity.
struct NotTracePreserving : Error { using Error::Error; };

}  // namespace supchan
