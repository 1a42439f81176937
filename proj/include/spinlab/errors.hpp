#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spinlab {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value violates a documented precondition or type invariant.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A numerical invariant (norm, spin length, eigen residual) broke during a run.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Malformed or invalid experiment configuration.
///
/// `line` is 0 when the problem is not tied to a single line (missing
/// section, cross-key validation). `key` is "section.key" when known.
class ConfigError : public Error {
public:
    ConfigError(std::string message, std::size_t line = 0, std::string key = {})
        : Error(format(message, line, key)), line_(line), key_(std::move(key)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    static std::string format(const std::string& message, std::size_t line, const std::string& key) {
        std::string out;
        if (line != 0) out += "line " + std::to_string(line) + ": ";
        if (!key.empty()) out += "'" + key + "': ";
        return out + message;
    }

    std::size_t line_;
    std::string key_;
};

/// File could not be read or written. The message carries the path.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace spinlab
