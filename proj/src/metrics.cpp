#include "qwalk/metrics.hpp"

#include "qwalk/propagators.hpp"

#include <algorithm>
#include <cmath>

namespace qwalk {

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

// Seconds per call, looping until min_sample has elapsed.
double time_per_call(const std::function<ComplexState(int, const ComplexState&)>& engine, int n,
                     const ComplexState& psi0, std::chrono::microseconds min_sample)
{
    long calls = 0;
    const auto start = Clock::now();
    auto now = start;
    do {
        const ComplexState out = engine(n, psi0);
        // Keep the result observable so the call cannot be elided.
        if (out.size() != psi0.size())
            throw Error(ErrorKind::DimensionMismatch, "engine changed the state length");
        ++calls;
        now = Clock::now();
    } while (now - start < min_sample);
    return std::chrono::duration<double>(now - start).count() / static_cast<double>(calls);
}

} // namespace

double spread_sigma(const Eigen::VectorXi& labels, const ProbabilityVector& p)
{
    if (labels.size() != p.size())
        throw Error(ErrorKind::DimensionMismatch, "labels and probabilities differ in length");
    const TypesD::RealVector x = labels.cast<double>();
    const double mean = p.dot(x);
    const double second = p.dot(x.cwiseAbs2());
    return std::sqrt(std::max(0.0, second - mean * mean));
}

double spread_sigma(const NodeDistribution& dist)
{
    return spread_sigma(dist.labels, dist.probabilities);
}

double linear_correlation(const std::vector<double>& xs, const std::vector<double>& ys)
{
    if (xs.size() != ys.size() || xs.size() < 2)
        throw Error(ErrorKind::DimensionMismatch, "correlation needs two equal-length samples");
    const Eigen::Map<const TypesD::RealVector> x(xs.data(), static_cast<Eigen::Index>(xs.size()));
    const Eigen::Map<const TypesD::RealVector> y(ys.data(), static_cast<Eigen::Index>(ys.size()));
    const TypesD::RealVector dx = x.array() - x.mean();
    const TypesD::RealVector dy = y.array() - y.mean();
    return dx.dot(dy) / std::sqrt(dx.squaredNorm() * dy.squaredNorm());
}

QuadraticFit fit_quadratic(const std::vector<double>& xs, const std::vector<double>& ys)
{
    if (xs.size() != ys.size() || xs.size() < 3)
        throw Error(ErrorKind::DimensionMismatch, "quadratic fit needs at least three points");
    const auto n = static_cast<Eigen::Index>(xs.size());
    TypesD::RealMatrix a(n, 3);
    TypesD::RealVector b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        a(i, 0) = 1.0;
        a(i, 1) = xs[i];
        a(i, 2) = xs[i] * xs[i];
        b[i] = ys[i];
    }
    const TypesD::RealVector c = a.colPivHouseholderQr().solve(b);
    QuadraticFit fit{c[0], c[1], c[2], 0.0};
    fit.residual = std::sqrt((a * c - b).squaredNorm() / static_cast<double>(n));
    return fit;
}

BenchEngines spectral_vs_dense_engines(const TransitionRates& rates, double t)
{
    BenchEngines engines;
    engines.direct = [rates, t](int n, const ComplexState& psi0) {
        return evolve_direct(rates_to_dense(rates, n, Boundary::Periodic), psi0, t);
    };
    engines.fourier = [rates, t](int n, const ComplexState& psi0) {
        return evolve_fourier(psi0, build_kernel(rates, n), t);
    };
    return engines;
}

BenchEngines constant_time_engines(std::chrono::microseconds cost)
{
    auto stub = [cost](int, const ComplexState& psi0) {
        const auto until = Clock::now() + cost;
        while (Clock::now() < until) {
        }
        return psi0;
    };
    return {stub, stub};
}

BenchReport benchmark_efficiency(const std::vector<int>& n_values, const BenchEngines& engines,
                                 const BenchOptions& options)
{
    if (options.repeats < 3)
        throw Error(ErrorKind::InvalidSize, "benchmark needs at least 3 repeats");

    BenchReport report;
    std::vector<double> ns, effs;
    for (const int n : n_values) {
        GaussianPacketSpec packet;
        packet.width = options.packet_width;
        const ComplexState psi0 = gaussian_init(EmbeddingSpec(n, 1, 1), packet);

        // Warm-up run doubles as the accuracy check.
        const ComplexState a = engines.direct(n, psi0);
        const ComplexState b = engines.fourier(n, psi0);

        std::vector<double> td, tf;
        for (int r = 0; r < options.repeats; ++r) {
            td.push_back(time_per_call(engines.direct, n, psi0, options.min_sample));
            tf.push_back(time_per_call(engines.fourier, n, psi0, options.min_sample));
        }

        BenchRecord rec;
        rec.n = n;
        rec.t_direct = median(td);
        rec.t_fourier = median(tf);
        rec.efficiency = rec.t_direct / rec.t_fourier;
        rec.repeats = options.repeats;
        rec.max_abs_diff = (a - b).cwiseAbs().maxCoeff();
        report.records.push_back(rec);
        ns.push_back(n);
        effs.push_back(rec.efficiency);
    }
    if (ns.size() >= 3)
        report.fit = fit_quadratic(ns, effs);
    return report;
}

BenchReport benchmark_efficiency(const std::vector<int>& n_values, double t, const TransitionRates& rates,
                                 int repeats)
{
    BenchOptions options;
    options.repeats = repeats;
    return benchmark_efficiency(n_values, spectral_vs_dense_engines(rates, t), options);
}

} // namespace qwalk
