#pragma once

#include <stdexcept>
#include <string>

namespace rnca {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a constructed rule table would leave the state alphabet.
struct ClosureViolation : Error {
    ClosureViolation(std::string msg, int value) : Error(std::move(msg)), value(value) {}
    int value;
};

struct QuiescentViolation : Error {
    using Error::Error;
};

struct FlowInvariantViolation : Error {
    using Error::Error;
};

struct StateOutOfAlphabet : Error {
    using Error::Error;
};

struct AlphabetMismatch : Error {
    using Error::Error;
};

struct DegenerateAlphabet : Error {
    using Error::Error;
};

struct WordTooShort : Error {
    using Error::Error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(int line, const std::string& reason)
        : Error("line " + std::to_string(line) + ": " + reason), line(line) {}
    int line;
};

} // namespace rnca
