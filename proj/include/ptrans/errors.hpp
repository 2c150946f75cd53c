#pragma once

#include <stdexcept>
#include <string>

namespace ptrans {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Concrete syntax problems carry a source position.
struct SyntaxError : Error {
    int line;
    int column;
    SyntaxError(const std::string& msg, int line, int column)
        : Error(msg + " at " + std::to_string(line) + ":" + std::to_string(column)),
          line(line), column(column) {}
};

struct WellFormednessError : Error {
    using Error::Error;
};

struct UnboundMetaVariable : Error {
    using Error::Error;
};
struct UnboundVariable : Error {
    using Error::Error;
};
struct SortMismatch : Error {
    using Error::Error;
};
struct UnsortedVariable : Error {
    using Error::Error;
};
struct UnsortableAtom : Error {
    using Error::Error;
};

// Rewrite actions that cannot be applied to the given graph. Strategy
// evaluation treats these as "this candidate produces no result".
struct ActionError : Error {
    using Error::Error;
};
struct NodesInDifferentThreads : ActionError {
    using ActionError::ActionError;
};
struct MissingNode : ActionError {
    using ActionError::ActionError;
};
struct MissingEdge : ActionError {
    using ActionError::ActionError;
};

struct ExitUnreachable : Error {
    using Error::Error;
};
struct ProductTooLarge : Error {
    using Error::Error;
};
struct FuelExhausted : Error {
    using Error::Error;
};
struct ResultCapExceeded : Error {
    using Error::Error;
};
struct BoundTooSmall : Error {
    using Error::Error;
};
struct ReductionTimeout : Error {
    using Error::Error;
};

} // namespace ptrans
