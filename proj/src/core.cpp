#include "qwalk/core.hpp"

namespace qwalk {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::ZeroNorm: return "ZeroNorm";
    case ErrorKind::UnknownOrder: return "UnknownOrder";
    case ErrorKind::InvalidSize: return "InvalidSize";
    case ErrorKind::SizeTooSmall: return "SizeTooSmall";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EigSolverFailure: return "EigSolverFailure";
    case ErrorKind::NodeOutOfRange: return "NodeOutOfRange";
    case ErrorKind::NonConservative: return "NonConservative";
    }
    return "Unknown";
}

ProbabilityVector normalized_distribution(const ProbabilityVector& weights)
{
    const double total = weights.sum();
    if (!(total > 0))
        throw Error(ErrorKind::ZeroNorm, "distribution has zero total weight");
    return weights / total;
}

} // namespace qwalk
