#pragma once

#include <stdexcept>
#include <string>

namespace mmo {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterate (or a jump on L4) landed on the discontinuity Z = 0.
class DiscontinuityHit : public Error {
public:
    explicit DiscontinuityHit(double z)
        : Error("orbit hit the discontinuity at Z = 0 (Z = " + std::to_string(z) + ")"), value(z) {}
    double value;
};

class NotPeriodic : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class QuadratureFailure : public Error {
public:
    using Error::Error;
};

class FoldPointEvaluation : public Error {
public:
    using Error::Error;
};

class GeometryFailure : public Error {
public:
    using Error::Error;
};

class MethodMismatch : public Error {
public:
    using Error::Error;
};

class SingularSystem : public Error {
public:
    using Error::Error;
};

class SynthesisVerificationFailure : public Error {
public:
    using Error::Error;
};

class StepSizeUnderflow : public Error {
public:
    using Error::Error;
};

class NonFiniteState : public Error {
public:
    using Error::Error;
};

class InvalidRho : public Error {
public:
    using Error::Error;
};

/// Malformed or unreadable JSON config.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace mmo
