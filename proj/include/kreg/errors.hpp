#pragma once

#include <stdexcept>
#include <string>

namespace kreg {

// Estimator window [x-h, x+h] contains fewer than two design points; the
// trapezoidal estimate is undefined at this x.
struct EmptyWindowError : std::runtime_error {
    explicit EmptyWindowError(const std::string& msg) : std::runtime_error(msg) {}
};

// Boundary renormalization requested but the weight mass is (numerically) zero.
struct ZeroMassError : std::runtime_error {
    explicit ZeroMassError(const std::string& msg) : std::runtime_error(msg) {}
};

// Linear-algebra failure (e.g. a covariance matrix that is not PSD even
// after diagonal jitter).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation requested outside the domain where a closed form exists
// (e.g. the diagonal jump function of an unsupported covariance family).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// A generating density failed its positivity / normalization checks.
struct InvalidDensityError : std::runtime_error {
    explicit InvalidDensityError(const std::string& msg) : std::runtime_error(msg) {}
};

// The asymptotically optimal bandwidth formula is inapplicable because the
// curvature integral of the regression function vanishes.
struct DegenerateCurvatureError : std::runtime_error {
    explicit DegenerateCurvatureError(const std::string& msg) : std::runtime_error(msg) {}
};

// Empirical covariance needs at least two replicates.
struct InsufficientReplicatesError : std::runtime_error {
    explicit InsufficientReplicatesError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad experiment configuration (unresolvable names, out-of-range fields).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace kreg
