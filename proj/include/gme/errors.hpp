#pragma once

#include <stdexcept>
#include <string>

namespace gme {

/// Malformed or inconsistent input data (bad table, bad settings file).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A well-formed request with an out-of-range physical parameter.
class ParameterError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A behavior that signals where a no-signaling one is required.
class SignalingError : public InputError {
public:
    SignalingError(const std::string& what, double deviation)
        : InputError(what + " (worst no-signaling deviation " + std::to_string(deviation) + ")"),
          deviation_(deviation) {}
    double deviation() const { return deviation_; }

private:
    double deviation_;
};

}  // namespace gme
