#pragma once

#include "qwalk/core.hpp"
#include "qwalk/embedding.hpp"
#include "qwalk/stencil.hpp"

#include <chrono>
#include <functional>
#include <vector>

namespace qwalk {

/// 1/2 sum |p_i - q_i|. Works for vectors and 2D meshes of equal shape.
template <typename DerivedP, typename DerivedQ>
double total_variation(const Eigen::MatrixBase<DerivedP>& p, const Eigen::MatrixBase<DerivedQ>& q)
{
    if (p.rows() != q.rows() || p.cols() != q.cols())
        throw Error(ErrorKind::DimensionMismatch, "distributions differ in shape");
    return 0.5 * (p - q).cwiseAbs().sum();
}

/// Standard deviation of the node label under the distribution.
double spread_sigma(const NodeDistribution& dist);
double spread_sigma(const Eigen::VectorXi& labels, const ProbabilityVector& probabilities);

/// Pearson correlation coefficient.
double linear_correlation(const std::vector<double>& xs, const std::vector<double>& ys);

struct QuadraticFit {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double residual = 0.0; ///< rms of fit errors

    double operator()(double x) const { return c0 + x * (c1 + x * c2); }
};

/// Least-squares y ~ c0 + c1 x + c2 x^2 (needs at least three points).
QuadraticFit fit_quadratic(const std::vector<double>& xs, const std::vector<double>& ys);

struct BenchRecord {
    int n = 0;
    double t_direct = 0.0;  ///< seconds
    double t_fourier = 0.0; ///< seconds
    double efficiency = 0.0;
    int repeats = 0;
    double max_abs_diff = 0.0;
};

struct BenchReport {
    std::vector<BenchRecord> records;
    QuadraticFit fit;
};

/// The two evolution paths under comparison. Each gets the problem size and
/// the initial state and returns the evolved state.
struct BenchEngines {
    std::function<ComplexState(int, const ComplexState&)> direct;
    std::function<ComplexState(int, const ComplexState&)> fourier;
};

/// Dense eigendecomposition vs Fourier-shift, each built from the rates on a
/// periodic ring of the requested size.
BenchEngines spectral_vs_dense_engines(const TransitionRates& rates, double t);

/// Control engines that return their input after a fixed busy wait.
BenchEngines constant_time_engines(std::chrono::microseconds cost);

struct BenchOptions {
    int repeats = 5;
    double packet_width = 2.0;
    /// Each timing sample loops the engine until at least this long has passed.
    std::chrono::microseconds min_sample{2000};
};

/// Times both engines on a centered Gaussian for every n (one discarded
/// warm-up, median of the repeats) and fits the efficiency t_direct/t_fourier
/// against n with a quadratic. Throws InvalidSize when repeats < 3.
BenchReport benchmark_efficiency(const std::vector<int>& n_values, const BenchEngines& engines,
                                 const BenchOptions& options = {});

BenchReport benchmark_efficiency(const std::vector<int>& n_values, double t, const TransitionRates& rates,
                                 int repeats);

} // namespace qwalk
