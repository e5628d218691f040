#pragma once

#include <stdexcept>
#include <string>

namespace repzoo {

// Base of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Invalid input: malformed specs, budgets, bad option values. CLI exit code 2.
class ConfigError : public Error {
   public:
    using Error::Error;
};

// A checked mathematical assertion failed. CLI exit code 1.
class MathError : public Error {
   public:
    using Error::Error;
};

// Broken internal invariant; indicates a bug rather than bad input.
class InternalError : public Error {
   public:
    using Error::Error;
};

}  // namespace repzoo
