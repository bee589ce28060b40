#include <pronysmt/errors.hpp>

namespace pronysmt {

std::string_view error_kind_name(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::InsufficientMoments: return "InsufficientMoments";
    case ErrorKind::DegenerateSystem: return "DegenerateSystem";
    case ErrorKind::ComplexRoots: return "ComplexRoots";
    case ErrorKind::OutOfRangeRoots: return "OutOfRangeRoots";
    case ErrorKind::RepeatedRoots: return "RepeatedRoots";
    case ErrorKind::InconsistentMoments: return "InconsistentMoments";
    case ErrorKind::AmbiguousAssignment: return "AmbiguousAssignment";
    case ErrorKind::NoMatch: return "NoMatch";
    case ErrorKind::AffinelyDependentAnchors: return "AffinelyDependentAnchors";
    case ErrorKind::InconsistentDistances: return "InconsistentDistances";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::IdenticalHyperplanes: return "IdenticalHyperplanes";
    case ErrorKind::NoConsistentHyperplane: return "NoConsistentHyperplane";
    case ErrorKind::MultipleCandidates: return "MultipleCandidates";
    case ErrorKind::NonUnitNormal: return "NonUnitNormal";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::ProfileVanishes: return "ProfileVanishes";
    case ErrorKind::NonConvergentQuadrature: return "NonConvergentQuadrature";
    case ErrorKind::NotEnoughGoodSensors: return "NotEnoughGoodSensors";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind)
{
}

}  // namespace pronysmt
