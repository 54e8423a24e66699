#pragma once

#include <stdexcept>
#include <string>

namespace sgscert {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed user input, reversed endpoints, unparsable literals.
class InputError : public Error {
public:
    using Error::Error;
};

// Operand outside the domain of an interval operation (sqrt of negatives, division by 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// lambda is not verifiably below the spectrum of the periodic operator.
class SpectralConditionFailure : public Error {
public:
    using Error::Error;
};

// A closed-form denominator or normalizing factor contains zero.
class DegenerateParameter : public Error {
public:
    using Error::Error;
};

class DegenerateEigenvector : public Error {
public:
    using Error::Error;
};

// Remainder validation failed; the caller should shrink the step.
class StepTooLarge : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

}  // namespace sgscert
