#pragma once

#include <stdexcept>
#include <string>

namespace bardina {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters, unknown config keys, violated preconditions.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Shape or grid mismatch between operands.
class GridMismatch : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Non-finite state encountered during time stepping.
class BlowUpError : public Error {
public:
    BlowUpError(const std::string& what, double last_good_time)
        : Error(what), last_good_time_(last_good_time) {}

    double last_good_time() const noexcept { return last_good_time_; }

private:
    double last_good_time_;
};

}  // namespace bardina
