#pragma once

#include <stdexcept>

namespace lca {

// Base of all domain errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input: bad modulus, empty rule, modulus mismatch, bad spec string.
struct InvalidInput : Error {
    using Error::Error;
};

// A unit was required but gcd(a, m) != 1.
struct NotAUnit : Error {
    using Error::Error;
};

// The per-prime unique-unit invertibility criterion fails.
struct NotInvertible : Error {
    using Error::Error;
};

// An enumeration would exceed the configured word budget.
struct GuardExceeded : Error {
    using Error::Error;
};

} // namespace lca
