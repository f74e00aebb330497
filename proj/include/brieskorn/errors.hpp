#pragma once

#include <stdexcept>
#include <string>

namespace brieskorn {

/// Bad input to an operation (domain or precondition the caller controls).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The operation declines to run: an enumeration budget, a family recipe
/// whose side conditions fail, too few primes in an interval.
class Refusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal consistency check failed. Seeing one of these means a
/// counting or bookkeeping bug, never bad user input.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Exact integer kernels run in 64 bits with checked arithmetic.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

}  // namespace brieskorn
