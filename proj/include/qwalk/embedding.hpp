#pragma once

#include "qwalk/core.hpp"
#include "qwalk/propagators.hpp"
#include "qwalk/stencil.hpp"

#include <vector>

namespace qwalk {

struct GaussianPacketSpec {
    int center_node = 0;  ///< node label
    double width = 2.0;   ///< Delta x, in grid elements
    Complex phase = 1.0;  ///< global phase; magnitude is normalized away
};

struct NodeDistribution {
    Eigen::VectorXi labels;
    ComplexState amplitudes;
    ProbabilityVector probabilities;

    /// Probability of a node label (0 if the label is off the line).
    double probability_at(int label) const;
};

struct NodeDistribution2D {
    Eigen::VectorXi labels_x;
    Eigen::VectorXi labels_y;
    Grid2DState amplitudes;
    TypesD::RealMatrix probabilities;
};

/// Whether the segment is wide enough for the packet (m >= 4 Delta x).
bool packet_fits_segment(const EmbeddingSpec& spec, double width);

/// exp(-(x - kappa)^2 / (4 dx^2)) over the whole ring (minimum-image distance),
/// l2-normalized.
ComplexState gaussian_init(const EmbeddingSpec& spec, const GaussianPacketSpec& packet);

/// Product packet on an (Nx lambda) x (Ny lambda) mesh.
Grid2DState gaussian_init_2d(const EmbeddingSpec& spec_x, const EmbeddingSpec& spec_y,
                             const GaussianPacketSpec& packet);

/// Quadrature weights of a node window, offsets -half..half around kappa.
/// Odd m: m unit weights. Even m: m+1 points with half weights at both ends.
TypesD::RealVector window_weights(int segment_width);

/// Coherent window sums of the amplitudes around each kappa_i, then
/// normalized |.|^2. Throws DimensionMismatch if the state length is not N*lambda.
NodeDistribution extract_nodes(const ComplexState& state, const EmbeddingSpec& spec);

NodeDistribution2D extract_nodes_2d(const Grid2DState& state, const EmbeddingSpec& spec_x,
                                    const EmbeddingSpec& spec_y);

/// Node distribution of a plain (unembedded) N-node walk, labelled -(N/2-1)..N/2.
NodeDistribution plain_node_distribution(const ComplexState& state);
NodeDistribution plain_node_distribution(const ProbabilityVector& probabilities);

/// Gaussian packet at node 0 evolved under the lambda-dilated rates.
ComplexState embedded_walk(const TransitionRates& rates, const EmbeddingSpec& spec, double width, double t);

/// One embedded walk per lambda, returned in input order.
std::vector<NodeDistribution> lambda_sweep(const TransitionRates& base_rates, int nodes, int segment_width,
                                           const std::vector<int>& lambdas, double width, double t);

} // namespace qwalk
