#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace qwalk {

/// Dense vector and matrix aliases, templated on the real scalar.
template <typename Scalar>
struct Types {
    using Real = Scalar;
    using Complex = std::complex<Scalar>;
    using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
    using RealMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
};

using TypesD = Types<double>;
using Complex = TypesD::Complex;

/// Amplitudes over grid elements or nodes.
using ComplexState = TypesD::ComplexVector;
/// Probabilities over grid elements or nodes.
using ProbabilityVector = TypesD::RealVector;
/// Amplitudes on an (nx x ny) mesh; rows index x, columns index y.
using Grid2DState = TypesD::ComplexMatrix;

enum class ErrorKind {
    ZeroNorm,
    UnknownOrder,
    InvalidSize,
    SizeTooSmall,
    SpecMismatch,
    IndexOutOfRange,
    NonHermitian,
    DimensionMismatch,
    EigSolverFailure,
    NodeOutOfRange,
    NonConservative,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Scales a state to unit l2 norm. Throws ZeroNorm for the zero vector.
template <typename Derived>
auto normalize(const Eigen::MatrixBase<Derived>& state)
{
    using Plain = typename Derived::PlainObject;
    const auto norm = state.norm();
    if (!(norm > 0))
        throw Error(ErrorKind::ZeroNorm, "cannot normalize a zero-norm state");
    return Plain(state / norm);
}

/// |a_i|^2 / sum_j |a_j|^2. Works for vectors and 2D meshes alike.
template <typename Derived>
auto probabilities(const Eigen::MatrixBase<Derived>& state)
{
    using RealScalar = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    using Result = Eigen::Matrix<RealScalar, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>;
    Result p = state.cwiseAbs2();
    const RealScalar total = p.sum();
    if (!(total > 0))
        throw Error(ErrorKind::ZeroNorm, "probabilities of a zero-norm state");
    p /= total;
    return p;
}

/// Renormalizes non-negative weights to sum to one.
ProbabilityVector normalized_distribution(const ProbabilityVector& weights);

} // namespace qwalk
