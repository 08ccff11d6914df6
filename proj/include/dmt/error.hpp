#pragma once

#include <stdexcept>
#include <string>

namespace dmt {

enum class Err {
    DanglingFace,
    SignError,
    DuplicateCell,
    UnknownCell,
    NotAnEdge,
    ChordEndpointsInvalid,
    BoundaryMismatch,
    NonOrientable,
    InvalidFunction,
    CyclicField,
    NoPath,
    MultiplePaths,
    NotACycle,
    PathNotUnique,
    NotATorus,
    ClosureFailed,
    NotSeparable,
    AmbiguousGrouping,
    PreconditionFailed,
    PairingConflict,
    RepairLoopLimit,
    DisconnectedBoundary,
    ChiNotTwo,
    NotASphere,
    NoCollapse,
    BoundaryCriticalCell,
    InwardArrow,
    GluingObstructed,
    SearchExhausted,
    ParseError,
    Internal,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& what)
        : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
    Err code() const { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Err code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace dmt
