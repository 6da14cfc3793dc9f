#pragma once

#include <stdexcept>
#include <string>

namespace rigidkit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input or a violated precondition. The CLI maps this to exit code 1.
struct InputError : Error {
    using Error::Error;
};

// Two independent routes disagreed (numeric vs exact, combinatorial vs numeric).
// The CLI maps this to exit code 2.
struct InconsistencyError : Error {
    using Error::Error;
};

// A search that theory says must succeed came back empty.
struct AlgorithmError : Error {
    using Error::Error;
};

struct NestingError : InputError {
    NestingError(int index, const std::string& what) : InputError(what), index(index) {}
    int index;
};

struct MoveError : InputError {
    using InputError::InputError;
};

struct ChainError : InputError {
    ChainError(int index, const std::string& what) : InputError(what), index(index) {}
    int index;
};

struct ContinuationStall : Error {
    ContinuationStall(int step, const std::string& what) : Error(what), step(step) {}
    int step;
};

}  // namespace rigidkit
