#pragma once

#include <stdexcept>
#include <string>

namespace minflip {

// Base class for all recoverable errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text (matrix TSV, graph TSV, triplet file, Newick).
struct ParseError : Error {
    using Error::Error;
};

// A domain invariant or operation precondition does not hold.
struct ValidationError : Error {
    using Error::Error;
};

// An instance exceeds a configured size cap.
struct CapExceededError : Error {
    using Error::Error;
};

// No finite-cost solution exists (hard constraints are contradictory).
struct InfeasibleError : Error {
    using Error::Error;
};

}  // namespace minflip
