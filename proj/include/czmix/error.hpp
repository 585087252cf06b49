#pragma once

#include <stdexcept>
#include <string>

namespace czmix {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A sampled function produced a non-finite value.
class SamplingError : public Error {
public:
    using Error::Error;
};

/// A field or config file could not be parsed.
class FormatError : public Error {
public:
    using Error::Error;
};

/// A multiplier symbol evaluated to a non-finite value.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// The dyadic stopping-time construction could not be started.
class DecompositionError : public Error {
public:
    using Error::Error;
};

/// An experiment configuration is unusable (for example, a non-positive margin).
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace czmix
