#pragma once

#include <stdexcept>
#include <string>

namespace hgx {

// Base class for everything the engine can throw on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input data that does not even parse into well-formed objects
// (bad syntax, out-of-range index, unresolved reference, bad scalar).
struct MalformedInputError : Error {
    using Error::Error;
};

// A stated precondition of an operation does not hold.
struct PreconditionError : Error {
    using Error::Error;
};

// The dual-basis system for an isotypic block is inconsistent:
// the bundle is not principal over that block.
struct NotPrincipalError : Error {
    using Error::Error;
};

// The canonical map is not bijective, so no translation table exists.
struct NotGaloisError : Error {
    using Error::Error;
};

// The supplied irreducible list does not span / decompose what it must.
struct IncompleteIrrepsError : Error {
    using Error::Error;
};

// Unsupported builtin (group name, example name).
struct UnsupportedError : Error {
    using Error::Error;
};

// An identity the engine guarantees by construction failed to hold.
// Seeing this means a bug in the engine, not in the input.
struct InternalError : Error {
    using Error::Error;
};

} // namespace hgx
