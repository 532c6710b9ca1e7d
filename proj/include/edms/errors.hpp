#pragma once

#include <stdexcept>
#include <string>

namespace edms {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- data / panel errors -----------------------------------------------------

struct SplitTooSmall : Error {
    using Error::Error;
};

struct EmptyPanel : Error {
    using Error::Error;
};

/// CSV/config parse failure; carries a 1-based row and column where known.
struct ParseError : Error {
    ParseError(const std::string& msg, long row = 0, long column = 0)
        : Error(msg), row(row), column(column) {}
    long row;
    long column;
};

struct NonFiniteValue : Error {
    using Error::Error;
};

struct DuplicateSeriesId : Error {
    using Error::Error;
};

/// Date spacing inconsistent with the declared frequency.
struct SpacingError : Error {
    using Error::Error;
};

// --- model errors ------------------------------------------------------------

struct NonPositiveValue : Error {
    using Error::Error;
};

struct SeriesTooShort : Error {
    using Error::Error;
};

struct SingularDesign : Error {
    using Error::Error;
};

struct DivergedLoss : Error {
    using Error::Error;
};

struct ShapeMismatch : Error {
    using Error::Error;
};

// --- ensemble / evaluation errors --------------------------------------------

struct LengthMismatch : Error {
    using Error::Error;
};

struct TooFewMembers : Error {
    using Error::Error;
};

struct KeyMismatch : Error {
    using Error::Error;
};

struct MemberFitFailure : Error {
    MemberFitFailure(const std::string& member, const std::string& cause)
        : Error(member + ": " + cause), member(member) {}
    std::string member;
};

struct NearZeroDenominator : Error {
    using Error::Error;
};

struct ZeroBaseline : Error {
    using Error::Error;
};

struct EmptyInput : Error {
    using Error::Error;
};

// --- CLI ----------------------------------------------------------------------

struct ConfigError : Error {
    using Error::Error;
};

struct ArtifactError : Error {
    using Error::Error;
};

}  // namespace edms
