#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace sensorlife {

// Six significant digits, for error messages.
inline std::string short_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter set violates a domain invariant.
struct ParameterError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

// No decision meets the delay bound (or the modulation cap).
struct InfeasibleError : Error {
    using Error::Error;
};

struct RootError : Error {
    using Error::Error;
};

struct NoSignChangeError : RootError {
    using RootError::RootError;
};

struct MaxIterationsError : RootError {
    using RootError::RootError;
};

struct EmptyFeasibleSetError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace sensorlife
