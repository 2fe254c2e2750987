#pragma once

#include <stdexcept>
#include <string>

namespace projcorrect {

// Violated preconditions on caller-supplied data (CLI exit code 2).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// File or stream failures (CLI exit code 3).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
    if (!condition) {
        throw PreconditionError(message);
    }
}

}  // namespace projcorrect
