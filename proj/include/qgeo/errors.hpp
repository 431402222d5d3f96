#pragma once

#include <stdexcept>
#include <string>

namespace qgeo {

// Error taxonomy shared by the whole library. The C API maps each class to a
// status code; anything else escaping is an internal error.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or out-of-range argument (unknown vertex, bad radius list, ...).
class InputError : public Error {
public:
    using Error::Error;
};

// A documented operation precondition does not hold for the given inputs.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// A builder or scenario would exceed the configured vertex budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

// Unparseable JSON or schema violation.
class ParseError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace qgeo
