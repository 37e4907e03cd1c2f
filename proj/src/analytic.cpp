#include "qwalk/analytic.hpp"

#include <cmath>
#include <numbers>

namespace qwalk {

namespace {

constexpr double kRowSumLimit = 1e-10;

ComplexState sampled_packet(const EmbeddingSpec& spec, double width, double t_free)
{
    const Eigen::Index n = spec.total_length();
    const Eigen::Index center = spec.node_center(spec.index_of(0));
    ComplexState psi(n);
    for (Eigen::Index x = 0; x < n; ++x) {
        Eigen::Index d = (x - center) % n;
        if (d < 0)
            d += n;
        if (2 * d > n)
            d -= n;
        psi[x] = free_gaussian(static_cast<double>(d), t_free, width);
    }
    return psi;
}

} // namespace

Complex free_gaussian(double x, double t, double width)
{
    using namespace std::complex_literals;
    const Complex spread = width + 1i * t / width;
    const Complex prefactor = 1.0 / std::sqrt(std::sqrt(2.0 * std::numbers::pi) * spread);
    return prefactor * std::exp(-x * x / (4.0 * (width * width + 1i * t)));
}

double kinetic_coefficient(const TransitionRates& rates)
{
    double acc = 0.0;
    for (int s = -rates.half_width; s <= rates.half_width; ++s)
        acc += rates.gamma(s) * s * s;
    return -0.5 * acc;
}

double equivalent_free_time(const TransitionRates& rates, double t)
{
    return kinetic_coefficient(rates) * t;
}

NodeDistribution analytic_node_distribution(const EmbeddingSpec& spec, double width, double t_free)
{
    return extract_nodes(sampled_packet(spec, width, t_free), spec);
}

NodeDistribution2D analytic_node_distribution_2d(const EmbeddingSpec& spec_x, const EmbeddingSpec& spec_y,
                                                 double width, double tx_free, double ty_free)
{
    const ComplexState gx = sampled_packet(spec_x, width, tx_free);
    const ComplexState gy = sampled_packet(spec_y, width, ty_free);
    return extract_nodes_2d(gx * gy.transpose(), spec_x, spec_y);
}

ProbabilityVector classical_evolve(const DenseOperator& h, const ProbabilityVector& p0, double t)
{
    if (p0.size() != h.size())
        throw Error(ErrorKind::DimensionMismatch, "distribution length does not match operator size");
    if ((p0.array() < 0).any() || std::abs(p0.sum() - 1.0) > 1e-10)
        throw Error(ErrorKind::InvalidSize, "initial distribution must be non-negative and sum to 1");
    const TypesD::RealVector row_sums = h.entries.rowwise().sum();
    if (row_sums.cwiseAbs().maxCoeff() > kRowSumLimit)
        throw Error(ErrorKind::NonConservative, "rate matrix rows must sum to zero (max |row sum| = "
                                                    + std::to_string(row_sums.cwiseAbs().maxCoeff()) + ")");

    if (t == 0.0)
        return p0;
    ProbabilityVector p = EigenPropagator(h).relax(p0, t);
    // Roundoff in the far tails can dip a hair below zero.
    return p.cwiseMax(0.0);
}

} // namespace qwalk
