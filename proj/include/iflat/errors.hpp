#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace iflat {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A variable name that is not an identifier, or that uses the reserved `_` prefix.
class InvalidName : public Error {
public:
    using Error::Error;
};

/// A flow pair whose target is not a target variable of the relation's domain.
class RangeError : public Error {
public:
    using Error::Error;
};

class UnknownVariable : public Error {
public:
    using Error::Error;
};

class UnknownLabel : public Error {
public:
    using Error::Error;
};

class NotALattice : public Error {
public:
    using Error::Error;
};

class CompletionBudgetExceeded : public Error {
public:
    using Error::Error;
};

class InstanceTooLarge : public Error {
public:
    using Error::Error;
};

class JsonSchemaError : public Error {
public:
    using Error::Error;
};

}  // namespace iflat
