#pragma once

#include <stdexcept>
#include <string>

namespace stocon {

/// Base class for all recoverable stocon errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input data that violates a format or type invariant (bad label, bad
/// rational syntax, negative weight, non-prefix-free tree, ...).
class MalformedInputError : public Error {
public:
    explicit MalformedInputError(const std::string& what) : Error(what) {}
};

/// An operation precondition does not hold (space mismatch, missing row,
/// non-surjective morphism component, ...).
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

/// Operation requires a fully probabilistic automaton and a mass-one
/// initial distribution.
class FullProbabilityRequiredError : public PreconditionError {
public:
    explicit FullProbabilityRequiredError(const std::string& what) : PreconditionError(what) {}
};

/// Queried word is not a prefix of any path of the tree.
class NotInTreeError : public PreconditionError {
public:
    explicit NotInTreeError(const std::string& what) : PreconditionError(what) {}
};

/// A re-verified internal postcondition failed. Indicates a bug in this
/// library, never a user error.
class InternalConsistencyError : public std::logic_error {
public:
    explicit InternalConsistencyError(const std::string& what) : std::logic_error(what) {}
};

} // namespace stocon
