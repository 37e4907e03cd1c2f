#pragma once

#include "qwalk/core.hpp"
#include "qwalk/embedding.hpp"
#include "qwalk/stencil.hpp"

namespace qwalk {

/// Free Gaussian packet
///   psi(x, t) = (sqrt(2 pi) (dx + i t / dx))^(-1/2) exp(-x^2 / (4 (dx^2 + i t))),
/// the exact solution of i d_t psi = -d_x^2 psi.
Complex free_gaussian(double x, double t, double width);

/// Continuum coefficient a of a circulant operator, H ~ -a d_x^2 for smooth
/// states: a = -1/2 sum_s gamma_s s^2.
double kinetic_coefficient(const TransitionRates& rates);

/// Time at which free_gaussian matches a walk under `rates` run for time t.
double equivalent_free_time(const TransitionRates& rates, double t);

/// free_gaussian sampled on the ring around node 0 and reduced with the same
/// windows as extract_nodes.
NodeDistribution analytic_node_distribution(const EmbeddingSpec& spec, double width, double t_free);

NodeDistribution2D analytic_node_distribution_2d(const EmbeddingSpec& spec_x, const EmbeddingSpec& spec_y,
                                                 double width, double tx_free, double ty_free);

/// Master equation P(t) = exp(-H t) P(0). H must be conservative (row sums
/// within 1e-10 of zero); entries above -1e-12 are clamped to zero.
ProbabilityVector classical_evolve(const DenseOperator& h, const ProbabilityVector& p0, double t);

} // namespace qwalk
