#pragma once

#include <stdexcept>
#include <string>

namespace kgraph {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unparseable or structurally inconsistent input (unknown ids, bad literals).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// The graph failed validation, or an operation's precondition on the graph
/// (strong connectivity, irreducibility) does not hold.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its stated domain.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An enumeration cap or search bound was exhausted.
class BoundExceeded : public Error {
public:
    using Error::Error;
};

/// Membership of a group element in Per Lambda could not be decided.
class UnknownPeriodicity : public BoundExceeded {
public:
    using BoundExceeded::BoundExceeded;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace kgraph
