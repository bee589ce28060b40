#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pronysmt {

/// Typed failure categories raised by the library. The names are stable: the
/// CLI writes them verbatim into recovery reports.
enum class ErrorKind {
    InvalidArgument,
    DimensionMismatch,
    InvalidModel,
    InsufficientMoments,
    DegenerateSystem,
    ComplexRoots,
    OutOfRangeRoots,
    RepeatedRoots,
    InconsistentMoments,
    AmbiguousAssignment,
    NoMatch,
    AffinelyDependentAnchors,
    InconsistentDistances,
    CoincidentPoints,
    IdenticalHyperplanes,
    NoConsistentHyperplane,
    MultipleCandidates,
    NonUnitNormal,
    Unsupported,
    GridTooCoarse,
    ProfileVanishes,
    NonConvergentQuadrature,
    NotEnoughGoodSensors,
    VerificationFailed,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }
    std::string_view name() const { return error_kind_name(kind_); }

private:
    ErrorKind kind_;
};

}  // namespace pronysmt
