#include "qwalk/propagators.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>

namespace qwalk {

namespace {

constexpr double kImagResidueLimit = 1e-10;

void check_kernel_length(const SpectralKernel& kernel, Eigen::Index n, const char* what)
{
    if (kernel.size() != n)
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": kernel length "
                                                      + std::to_string(kernel.size()) + " vs state length "
                                                      + std::to_string(n));
}

// In-place transform of a contiguous line through a scratch buffer.
void transform_line(Eigen::FFT<double>& fft, Complex* data, Eigen::Index n, Eigen::Index stride,
                    ComplexState& in, ComplexState& out, const TypesD::ComplexVector* phases)
{
    for (Eigen::Index i = 0; i < n; ++i)
        in[i] = data[i * stride];
    fft.fwd(out.data(), in.data(), static_cast<int>(n));
    if (phases)
        out.array() *= phases->array();
    fft.inv(in.data(), out.data(), static_cast<int>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        data[i * stride] = in[i];
}

} // namespace

long signed_frequency(long k, long n)
{
    return k <= n / 2 ? k : k - n;
}

Complex fourier_phase(long k, long s, long n)
{
    if (n < 1 || k < 0 || k >= n)
        throw Error(ErrorKind::IndexOutOfRange, "frequency index " + std::to_string(k)
                                                    + " outside [0, " + std::to_string(n) + ")");
    // Reduce k~ s modulo n in integers so large shifts keep full precision.
    long m = (signed_frequency(k, n) * s) % n;
    if (m < 0)
        m += n;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
}

SpectralKernel build_kernel(const TransitionRates& rates, int n, int lambda, std::string description)
{
    if (lambda < 1)
        throw Error(ErrorKind::InvalidSize, "lambda must be positive");
    if (static_cast<long>(n) <= 2L * rates.half_width * lambda)
        throw Error(ErrorKind::SizeTooSmall, "kernel length " + std::to_string(n) + " needs n > 2 d lambda = "
                                                 + std::to_string(2 * rates.half_width * lambda));

    double scale = 0.0;
    for (const double g : rates.rates)
        scale = std::max(scale, std::abs(g));
    if (!rates.is_symmetric(1e-14 * scale))
        throw Error(ErrorKind::NonHermitian, "transition rates are not symmetric in s");

    SpectralKernel kernel;
    kernel.lambda = lambda;
    kernel.description = std::move(description);
    kernel.q.resize(n);
    for (long k = 0; k < n; ++k) {
        Complex acc = 0.0;
        for (int s = -rates.half_width; s <= rates.half_width; ++s)
            acc += rates.gamma(s) * fourier_phase(k, static_cast<long>(s) * lambda, n);
        if (std::abs(acc.imag()) > kImagResidueLimit)
            throw Error(ErrorKind::NonHermitian, "imaginary eigenphase residue " + std::to_string(acc.imag()));
        kernel.q[k] = acc.real();
    }
    return kernel;
}

PhaseFactors phase_factors(const SpectralKernel& kernel, double t)
{
    PhaseFactors pf;
    pf.t = t;
    pf.r = kernel.q.unaryExpr([t](double q) { return std::polar(1.0, -q * t); });
    return pf;
}

ComplexState dft(const ComplexState& x)
{
    Eigen::FFT<double> fft;
    if (x.size() <= 1)
        return x;
    ComplexState out(x.size());
    fft.fwd(out.data(), x.data(), static_cast<int>(x.size()));
    return out;
}

ComplexState idft(const ComplexState& x)
{
    Eigen::FFT<double> fft;
    if (x.size() <= 1)
        return x;
    ComplexState out(x.size());
    fft.inv(out.data(), x.data(), static_cast<int>(x.size()));
    return out;
}

ComplexState shift_state(const ComplexState& psi, long s)
{
    const long n = psi.size();
    ComplexState out(n);
    if (n == 0)
        return out;
    long off = s % n;
    if (off < 0)
        off += n;
    for (long i = 0; i < n; ++i)
        out[i] = psi[(i + off) % n];
    return out;
}

EigenPropagator::EigenPropagator(const DenseOperator& h)
{
    if (h.entries.rows() != h.entries.cols())
        throw Error(ErrorKind::DimensionMismatch, "operator is not square");
    Eigen::SelfAdjointEigenSolver<TypesD::RealMatrix> solver(h.entries);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorKind::EigSolverFailure, "symmetric eigendecomposition did not converge");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

ComplexState EigenPropagator::evolve(const ComplexState& psi, double t) const
{
    if (psi.size() != size())
        throw Error(ErrorKind::DimensionMismatch, "state length " + std::to_string(psi.size())
                                                      + " vs operator size " + std::to_string(size()));
    // V real: project real and imaginary parts separately.
    const TypesD::RealVector re = eigenvectors_.transpose() * psi.real();
    const TypesD::RealVector im = eigenvectors_.transpose() * psi.imag();
    ComplexState coeffs(size());
    for (Eigen::Index k = 0; k < size(); ++k)
        coeffs[k] = std::polar(1.0, -eigenvalues_[k] * t) * Complex(re[k], im[k]);
    ComplexState out(size());
    out.real() = eigenvectors_ * coeffs.real();
    out.imag() = eigenvectors_ * coeffs.imag();
    return out;
}

TypesD::RealVector EigenPropagator::relax(const TypesD::RealVector& p, double t) const
{
    if (p.size() != size())
        throw Error(ErrorKind::DimensionMismatch, "vector length " + std::to_string(p.size())
                                                      + " vs operator size " + std::to_string(size()));
    const TypesD::RealVector decay = (-eigenvalues_ * t).array().exp();
    return eigenvectors_ * (decay.cwiseProduct(eigenvectors_.transpose() * p));
}

ComplexState evolve_direct(const DenseOperator& h, const ComplexState& psi0, double t)
{
    if (psi0.size() != h.size())
        throw Error(ErrorKind::DimensionMismatch, "state length " + std::to_string(psi0.size())
                                                      + " vs operator size " + std::to_string(h.size()));
    return EigenPropagator(h).evolve(psi0, t);
}

ComplexState evolve_fourier(const ComplexState& psi0, const SpectralKernel& kernel, double t)
{
    check_kernel_length(kernel, psi0.size(), "evolve_fourier");
    const PhaseFactors pf = phase_factors(kernel, t);
    Eigen::FFT<double> fft;
    const auto n = static_cast<int>(psi0.size());
    ComplexState spectrum(n);
    fft.fwd(spectrum.data(), psi0.data(), n);
    spectrum.array() *= pf.r.array();
    ComplexState out(n);
    fft.inv(out.data(), spectrum.data(), n);
    return out;
}

Grid2DState evolve_fourier_2d(const Grid2DState& psi0, const SpectralKernel& kx, const SpectralKernel& ky,
                              double t)
{
    check_kernel_length(kx, psi0.rows(), "evolve_fourier_2d (x)");
    check_kernel_length(ky, psi0.cols(), "evolve_fourier_2d (y)");

    // exp(-i (qx + qy) t) factorizes, so the 2D transform splits into per-axis passes.
    const TypesD::ComplexVector rx = phase_factors(kx, t).r;
    const TypesD::ComplexVector ry = phase_factors(ky, t).r;
    const Eigen::Index nx = psi0.rows();
    const Eigen::Index ny = psi0.cols();

    Grid2DState out = psi0;
    Eigen::FFT<double> fft;
    ComplexState in(nx), spec(nx);
    for (Eigen::Index j = 0; j < ny; ++j)
        transform_line(fft, out.col(j).data(), nx, 1, in, spec, &rx);
    in.resize(ny);
    spec.resize(ny);
    for (Eigen::Index i = 0; i < nx; ++i)
        transform_line(fft, out.data() + i, ny, nx, in, spec, &ry);
    return out;
}

} // namespace qwalk
