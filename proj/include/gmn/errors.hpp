// errors.hpp: exception types shared by every module

#pragma once

#include <stdexcept>
#include <string>

namespace gmn {

/// Base of every error raised by the library. The CLI maps these to exit code 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Eigenvector matrix too ill-conditioned to trust a numerical diagonalization.
class DefectiveMatrix : public Error {
public:
    using Error::Error;
};

class OscillatorySpectrum : public Error {
public:
    using Error::Error;
};

class SingularPoint : public Error {
public:
    using Error::Error;
};

class DeltaNotEvaluable : public Error {
public:
    using Error::Error;
};

class Unsupported : public Error {
public:
    using Error::Error;
};

// Root clustering falls inside the ambiguity band.
class IllConditioned : public Error {
public:
    using Error::Error;
};

class StepTooLarge : public Error {
public:
    using Error::Error;
};

class NonOscillatory : public Error {
public:
    using Error::Error;
};

class ComplexOmega : public Error {
public:
    using Error::Error;
};

// Malformed or schema-violating experiment configuration (CLI exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace gmn
