#pragma once

#include "qwalk/core.hpp"
#include "qwalk/stencil.hpp"

#include <string>

namespace qwalk {

/// Eigenphases of a circulant operator in the discrete Fourier basis:
/// q_k = sum_s gamma_s exp(2 pi i k~ lambda s / n).
struct SpectralKernel {
    TypesD::RealVector q;
    int lambda = 1;
    std::string description;

    Eigen::Index size() const { return q.size(); }
};

/// r_k = exp(-i q_k t).
struct PhaseFactors {
    TypesD::ComplexVector r;
    double t = 0.0;
};

/// Signed frequency: k for k <= n/2, k - n above.
long signed_frequency(long k, long n);

/// exp(2 pi i k~ s / n). Throws IndexOutOfRange unless 0 <= k < n.
Complex fourier_phase(long k, long s, long n);

/// Builds the eigenphase vector for rates applied at shifts lambda*s on an
/// n-element ring. Throws SizeTooSmall if n <= 2 d lambda and NonHermitian if
/// the rates are asymmetric or the phase sums keep an imaginary residue above 1e-10.
SpectralKernel build_kernel(const TransitionRates& rates, int n, int lambda = 1,
                            std::string description = {});

PhaseFactors phase_factors(const SpectralKernel& kernel, double t);

/// Unnormalized forward DFT, X_k = sum_j x_j exp(-2 pi i j k / n).
ComplexState dft(const ComplexState& x);
/// Inverse of dft (carries the 1/n).
ComplexState idft(const ComplexState& x);

/// (shift_state(psi, s))_i = psi_{(i + s) mod n}. This is the direction for
/// which dft(shift_state(psi, s)) = dft(psi) * fourier_phase(k, s, n).
ComplexState shift_state(const ComplexState& psi, long s);

/// Dense Hermitian propagator built from one symmetric eigendecomposition.
class EigenPropagator {
public:
    explicit EigenPropagator(const DenseOperator& h);

    Eigen::Index size() const { return eigenvalues_.size(); }
    const TypesD::RealVector& eigenvalues() const { return eigenvalues_; }
    const TypesD::RealMatrix& eigenvectors() const { return eigenvectors_; }

    /// exp(-i H t) psi
    ComplexState evolve(const ComplexState& psi, double t) const;
    /// exp(-H t) p
    TypesD::RealVector relax(const TypesD::RealVector& p, double t) const;

private:
    TypesD::RealVector eigenvalues_;
    TypesD::RealMatrix eigenvectors_;
};

/// psi(t) = exp(-i H t) psi0 via H = V diag(w) V^T.
ComplexState evolve_direct(const DenseOperator& h, const ComplexState& psi0, double t);

/// psi(t) = idft(dft(psi0) * r(t)).
ComplexState evolve_fourier(const ComplexState& psi0, const SpectralKernel& kernel, double t);

/// Separable mesh evolution: rows follow kx, columns follow ky.
Grid2DState evolve_fourier_2d(const Grid2DState& psi0, const SpectralKernel& kx,
                              const SpectralKernel& ky, double t);

} // namespace qwalk
