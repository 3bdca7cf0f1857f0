#pragma once

#include <stdexcept>
#include <string>

namespace eigenflow {

// All domain failures derive from Error so the CLI can map them to exit codes
// in one place.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroFieldError : Error {
    ZeroFieldError() : Error("field is identically zero") {}
    explicit ZeroFieldError(const std::string& what) : Error(what) {}
};

struct OutOfRangeError : Error {
    using Error::Error;
};

struct NotTransverseError : Error {
    using Error::Error;
};

struct EmptyBandError : Error {
    using Error::Error;
};

struct BracketFailureError : Error {
    using Error::Error;
};

struct CflViolationError : Error {
    double time = 0.0;
    double cfl = 0.0;
    CflViolationError(double t, double cfl_number, const std::string& what)
        : Error(what), time(t), cfl(cfl_number) {}
};

struct IntegrationBlowupError : Error {
    double time = 0.0;
    IntegrationBlowupError(double t, const std::string& what) : Error(what), time(t) {}
};

struct FormatError : Error {
    using Error::Error;
};

// Config parse failures carry the offending line number (0 = whole file).
struct ConfigError : Error {
    int line = 0;
    ConfigError(int line_number, const std::string& what) : Error(what), line(line_number) {}
};

struct MissingKeyError : ConfigError {
    using ConfigError::ConfigError;
};

struct UnknownKeyError : ConfigError {
    using ConfigError::ConfigError;
};

struct ConfigRangeError : ConfigError {
    using ConfigError::ConfigError;
};

}  // namespace eigenflow
