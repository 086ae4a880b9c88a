#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sentarc {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or unreadable input: bad rows, bad files, I/O failures.
class InputError : public Error {
public:
    using Error::Error;
};

// Inputs parse but violate an operation's precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// An internal invariant did not hold. Always a bug.
class InvariantError : public Error {
public:
    using Error::Error;
};

// Collects non-fatal warnings. Operations that can warn take an optional
// pointer; passing nullptr discards warnings.
struct Diagnostics {
    std::vector<std::string> warnings;

    void warn(std::string message) { warnings.push_back(std::move(message)); }
};

inline void warn(Diagnostics* diag, std::string message)
{
    if (diag != nullptr) {
        diag->warn(std::move(message));
    }
}

} // namespace sentarc
