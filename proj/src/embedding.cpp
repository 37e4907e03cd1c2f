#include "qwalk/embedding.hpp"

#include <cmath>

namespace qwalk {

namespace {

Eigen::Index wrap(Eigen::Index i, Eigen::Index n)
{
    const Eigen::Index r = i % n;
    return r < 0 ? r + n : r;
}

Eigen::VectorXi labels_for(const EmbeddingSpec& spec)
{
    Eigen::VectorXi labels(spec.node_count());
    for (int i = 0; i < spec.node_count(); ++i)
        labels[i] = spec.label_of(i);
    return labels;
}

// Signed ring distance in (-n/2, n/2].
double ring_offset(Eigen::Index x, Eigen::Index center, Eigen::Index n)
{
    Eigen::Index d = wrap(x - center, n);
    if (2 * d > n)
        d -= n;
    return static_cast<double>(d);
}

ComplexState gaussian_line(const EmbeddingSpec& spec, const GaussianPacketSpec& packet)
{
    if (!(packet.width > 0))
        throw Error(ErrorKind::InvalidSize, "packet width must be positive");
    const Eigen::Index center = spec.node_center(spec.index_of(packet.center_node));
    const Eigen::Index n = spec.total_length();
    const double denom = 4.0 * packet.width * packet.width;
    ComplexState psi(n);
    for (Eigen::Index x = 0; x < n; ++x) {
        const double d = ring_offset(x, center, n);
        psi[x] = std::exp(-d * d / denom);
    }
    const Complex unit_phase = std::abs(packet.phase) > 0 ? packet.phase / std::abs(packet.phase) : Complex(1.0);
    return normalize(psi) * unit_phase;
}

// Window sums along one axis: out(i) = sum_r w_r state(kappa_i + r).
template <typename Line>
Complex window_sum(const Line& line, const EmbeddingSpec& spec, const TypesD::RealVector& w, int index)
{
    const Eigen::Index n = spec.total_length();
    const Eigen::Index half = (w.size() - 1) / 2;
    Complex acc = 0.0;
    for (Eigen::Index r = -half; r <= half; ++r)
        acc += w[r + half] * line[wrap(spec.node_center(index) + r, n)];
    return acc;
}

} // namespace

double NodeDistribution::probability_at(int label) const
{
    for (Eigen::Index i = 0; i < labels.size(); ++i)
        if (labels[i] == label)
            return probabilities[i];
    return 0.0;
}

bool packet_fits_segment(const EmbeddingSpec& spec, double width)
{
    return spec.segment_width() >= 4.0 * width;
}

ComplexState gaussian_init(const EmbeddingSpec& spec, const GaussianPacketSpec& packet)
{
    return gaussian_line(spec, packet);
}

Grid2DState gaussian_init_2d(const EmbeddingSpec& spec_x, const EmbeddingSpec& spec_y,
                             const GaussianPacketSpec& packet)
{
    const ComplexState gx = gaussian_line(spec_x, packet);
    GaussianPacketSpec py = packet;
    py.phase = 1.0;
    const ComplexState gy = gaussian_line(spec_y, py);
    return gx * gy.transpose();
}

TypesD::RealVector window_weights(int segment_width)
{
    if (segment_width < 1)
        throw Error(ErrorKind::InvalidSize, "segment width must be positive");
    if (segment_width % 2 == 1)
        return TypesD::RealVector::Ones(segment_width);
    TypesD::RealVector w = TypesD::RealVector::Ones(segment_width + 1);
    w[0] = 0.5;
    w[segment_width] = 0.5;
    return w;
}

NodeDistribution extract_nodes(const ComplexState& state, const EmbeddingSpec& spec)
{
    if (state.size() != spec.total_length())
        throw Error(ErrorKind::DimensionMismatch, "state length " + std::to_string(state.size())
                                                      + " vs N*lambda = " + std::to_string(spec.total_length()));
    const TypesD::RealVector w = window_weights(spec.segment_width());
    NodeDistribution out;
    out.labels = labels_for(spec);
    out.amplitudes.resize(spec.node_count());
    for (int i = 0; i < spec.node_count(); ++i)
        out.amplitudes[i] = window_sum(state, spec, w, i);
    out.probabilities = probabilities(out.amplitudes);
    return out;
}

NodeDistribution2D extract_nodes_2d(const Grid2DState& state, const EmbeddingSpec& spec_x,
                                    const EmbeddingSpec& spec_y)
{
    if (state.rows() != spec_x.total_length() || state.cols() != spec_y.total_length())
        throw Error(ErrorKind::DimensionMismatch, "mesh does not match the embedding geometry");
    const TypesD::RealVector wx = window_weights(spec_x.segment_width());
    const TypesD::RealVector wy = window_weights(spec_y.segment_width());

    // Separable: reduce along x first, then along y.
    Grid2DState partial(spec_x.node_count(), state.cols());
    for (Eigen::Index j = 0; j < state.cols(); ++j) {
        const auto column = state.col(j);
        for (int i = 0; i < spec_x.node_count(); ++i)
            partial(i, j) = window_sum(column, spec_x, wx, i);
    }
    NodeDistribution2D out;
    out.labels_x = labels_for(spec_x);
    out.labels_y = labels_for(spec_y);
    out.amplitudes.resize(spec_x.node_count(), spec_y.node_count());
    for (int i = 0; i < spec_x.node_count(); ++i) {
        const auto row = partial.row(i);
        for (int j = 0; j < spec_y.node_count(); ++j)
            out.amplitudes(i, j) = window_sum(row, spec_y, wy, j);
    }
    out.probabilities = probabilities(out.amplitudes);
    return out;
}

NodeDistribution plain_node_distribution(const ComplexState& state)
{
    NodeDistribution out;
    const auto n = static_cast<int>(state.size());
    out.labels.resize(n);
    for (int i = 0; i < n; ++i)
        out.labels[i] = node_label(i, n);
    out.amplitudes = state;
    out.probabilities = probabilities(state);
    return out;
}

NodeDistribution plain_node_distribution(const ProbabilityVector& p)
{
    NodeDistribution out;
    const auto n = static_cast<int>(p.size());
    out.labels.resize(n);
    for (int i = 0; i < n; ++i)
        out.labels[i] = node_label(i, n);
    out.amplitudes = p.cwiseSqrt().cast<Complex>();
    out.probabilities = normalized_distribution(p);
    return out;
}

ComplexState embedded_walk(const TransitionRates& rates, const EmbeddingSpec& spec, double width, double t)
{
    const SpectralKernel kernel = build_kernel(rates, static_cast<int>(spec.total_length()), spec.lambda());
    GaussianPacketSpec packet;
    packet.width = width;
    return evolve_fourier(gaussian_init(spec, packet), kernel, t);
}

std::vector<NodeDistribution> lambda_sweep(const TransitionRates& base_rates, int nodes, int segment_width,
                                           const std::vector<int>& lambdas, double width, double t)
{
    std::vector<NodeDistribution> out;
    out.reserve(lambdas.size());
    for (const int lambda : lambdas) {
        const EmbeddingSpec spec(nodes, lambda, segment_width);
        out.push_back(extract_nodes(embedded_walk(base_rates, spec, width, t), spec));
    }
    return out;
}

} // namespace qwalk
