#pragma once

#include <stdexcept>
#include <string>

namespace cavity {

// Raised when g = 0 and delta = 0 together, which leaves every Rabi
// frequency at zero.
class DegenerateParameters : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class InvalidParameters : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class StepSizeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyManifold : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Mandel's Q with <a^dag a> ~ 0.
class VacuumField : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ZeroDenominator : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Displacement pushes population past the basis edge.
class TruncationError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace cavity
