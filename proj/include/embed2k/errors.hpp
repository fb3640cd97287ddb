#pragma once

#include <stdexcept>
#include <string>

namespace embed2k {

/// Failure categories. The CLI maps each category to its own exit code.
enum class ErrorKind {
    Parse,               ///< malformed input text or JSON
    InvalidComplex,      ///< face arity, repeated vertices, dimension mismatch
    InvalidArgument,     ///< bad face/pair/dimension passed to an operation
    DimensionMismatch,   ///< matrix shapes do not fit together
    RingMismatch,        ///< form spec over the wrong ring for the requested decider
    DegenerateConfiguration,
    NonUnitHat,
    PreconditionFailed,
    SizeCapExceeded,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse: return "parse";
        case ErrorKind::InvalidComplex: return "invalid-complex";
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::DimensionMismatch: return "dimension-mismatch";
        case ErrorKind::RingMismatch: return "ring-mismatch";
        case ErrorKind::DegenerateConfiguration: return "degenerate-configuration";
        case ErrorKind::NonUnitHat: return "non-unit-hat";
        case ErrorKind::PreconditionFailed: return "precondition-failed";
        case ErrorKind::SizeCapExceeded: return "size-cap-exceeded";
    }
    return "unknown";
}

/// Precondition failures of rank1_factor, reported distinctly.
enum class Rank1Violation { NotSymmetric, RankNotOne, NonSquareDiagonal };

class Rank1Error : public Error {
public:
    Rank1Error(Rank1Violation violation, const std::string& what)
        : Error(ErrorKind::PreconditionFailed, what), violation_(violation) {}

    Rank1Violation violation() const noexcept { return violation_; }

private:
    Rank1Violation violation_;
};

}  // namespace embed2k
