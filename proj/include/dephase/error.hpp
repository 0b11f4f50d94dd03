#pragma once

#include <stdexcept>
#include <string>

namespace dephase {

/// Root of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid scenario or parameter value; the message names the offending field.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A spectral density family that cannot be sampled pointwise (the single mode).
class NotPointwiseError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// A density-matrix or amplitude set that violates its normalization invariants.
class InvalidStateError : public Error {
public:
    using Error::Error;
};

/// Numerical failure while computing a result (quadrature, eigensolver).
class ComputeError : public Error {
public:
    using Error::Error;
};

class QuadratureFailure : public ComputeError {
public:
    QuadratureFailure(const std::string& what, double t)
        : ComputeError(what), t_(t) {}

    double t() const noexcept { return t_; }

private:
    double t_;
};

class EigenNonConvergence : public ComputeError {
public:
    using ComputeError::ComputeError;
};

/// File could not be opened, read, or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace dephase
