#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace tsqkd {

// Error categories surfaced by the library. Loss of a photon and decode
// failures are values, not errors.

class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Kraus set that fails completeness.
class InvalidChannel : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Every trajectory branch has vanishing weight.
class NumericalDegeneracy : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoPath : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(message), key_(std::move(key)) {}

    // Offending key path, e.g. "noise.p_ad".
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class EmitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tsqkd
