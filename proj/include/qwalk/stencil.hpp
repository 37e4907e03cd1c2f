#pragma once

#include "qwalk/core.hpp"

#include <cstdint>
#include <vector>

namespace qwalk {

/// Exact rational number with a positive denominator in lowest terms.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a) { return {-a.num_, a.den_}; }
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    friend bool operator==(const Rational&, const Rational&) = default;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

enum class StencilOrder { Order1, Order10 };

/// Symmetric second-derivative stencil on a unit-spaced grid.
/// coefficients[s + half_width] multiplies psi(i + s).
struct StencilCoefficients {
    StencilOrder order = StencilOrder::Order1;
    int half_width = 1;
    std::vector<Rational> coefficients;

    Rational coeff(int s) const;
};

/// Symmetric banded hopping rates gamma_s, s in [-d, d].
struct TransitionRates {
    int half_width = 0;
    std::vector<double> rates;

    double gamma(int s) const;
    bool is_symmetric(double tol = 0.0) const;
};

enum class Boundary { Periodic, Truncated };

enum class LineConvention {
    Quantum,      ///< diagonal -2*gamma, off-diagonal +gamma
    Conservative, ///< diagonal +2*gamma, off-diagonal -gamma (rows sum to zero on a ring)
};

struct DenseOperator {
    TypesD::RealMatrix entries;
    Boundary boundary = Boundary::Periodic;

    Eigen::Index size() const { return entries.rows(); }
};

/// Node geometry on the fine grid: N nodes, lambda elements between node
/// centers, m elements per segment. Storage index i sits at element i*lambda
/// and carries the label i - (N/2 - 1), so N = 160 spans labels -79..80.
class EmbeddingSpec {
public:
    EmbeddingSpec(int node_count, int lambda, int segment_width);

    int node_count() const { return node_count_; }
    int lambda() const { return lambda_; }
    int segment_width() const { return segment_width_; }
    Eigen::Index total_length() const { return Eigen::Index(node_count_) * lambda_; }

    Eigen::Index node_center(int index) const { return Eigen::Index(index) * lambda_; }
    int label_of(int index) const { return index - label_offset(); }
    int index_of(int label) const; ///< throws NodeOutOfRange
    int label_offset() const { return node_count_ >= 2 ? node_count_ / 2 - 1 : 0; }

private:
    int node_count_;
    int lambda_;
    int segment_width_;
};

/// Node label of storage index i for an N-node line (same convention as EmbeddingSpec).
int node_label(int index, int node_count);
/// Storage index of node label 0.
int origin_index(int node_count);

StencilCoefficients laplacian_stencil(StencilOrder order);

/// gamma_s = coeff(s) / (-2).
TransitionRates stencil_to_rates(const StencilCoefficients& stencil);

/// Rates placed at shifts lambda*s; intermediate offsets carry zero.
TransitionRates dilate(const TransitionRates& rates, int lambda);

DenseOperator line_hamiltonian(int n, double gamma, LineConvention convention,
                               Boundary boundary = Boundary::Periodic);

/// entries(i, i + s) = gamma_s, wrapped modulo n or dropped at the edges.
DenseOperator rates_to_dense(const TransitionRates& rates, int n,
                             Boundary boundary = Boundary::Periodic);

/// Block embedding of an N x N node operator onto N*lambda elements: each
/// h(i, j) adds h(i, j) * I_m centered on (kappa_i, kappa_j). Overlapping
/// blocks accumulate.
DenseOperator embed_block_hamiltonian(const DenseOperator& h, const EmbeddingSpec& spec);

} // namespace qwalk
