#include "qwalk/stencil.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace qwalk {

namespace {

Eigen::Index wrap(Eigen::Index i, Eigen::Index n)
{
    const Eigen::Index r = i % n;
    return r < 0 ? r + n : r;
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0)
        throw std::invalid_argument("Rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

Rational operator+(const Rational& a, const Rational& b)
{
    const std::int64_t l = std::lcm(a.den_, b.den_);
    return {a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l};
}

Rational operator*(const Rational& a, const Rational& b)
{
    const std::int64_t g1 = std::gcd(a.num_, b.den_);
    const std::int64_t g2 = std::gcd(b.num_, a.den_);
    return {(a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1)};
}

Rational operator/(const Rational& a, const Rational& b)
{
    if (b.num_ == 0)
        throw std::invalid_argument("Rational division by zero");
    return a * Rational(b.den_, b.num_);
}

Rational StencilCoefficients::coeff(int s) const
{
    if (s < -half_width || s > half_width)
        return {};
    return coefficients[static_cast<std::size_t>(s + half_width)];
}

double TransitionRates::gamma(int s) const
{
    if (s < -half_width || s > half_width)
        return 0.0;
    return rates[static_cast<std::size_t>(s + half_width)];
}

bool TransitionRates::is_symmetric(double tol) const
{
    for (int s = 1; s <= half_width; ++s)
        if (std::abs(gamma(s) - gamma(-s)) > tol)
            return false;
    return true;
}

EmbeddingSpec::EmbeddingSpec(int node_count, int lambda, int segment_width)
    : node_count_(node_count), lambda_(lambda), segment_width_(segment_width)
{
    if (node_count < 1 || lambda < 1 || segment_width < 1)
        throw Error(ErrorKind::InvalidSize, "node count, lambda and m must be positive");
    if (lambda > segment_width)
        throw Error(ErrorKind::SpecMismatch, "lambda must not exceed m");
}

int EmbeddingSpec::index_of(int label) const
{
    const int index = label + label_offset();
    if (index < 0 || index >= node_count_)
        throw Error(ErrorKind::NodeOutOfRange, "node label " + std::to_string(label) + " outside the line");
    return index;
}

int node_label(int index, int node_count)
{
    return index - origin_index(node_count);
}

int origin_index(int node_count)
{
    return node_count >= 2 ? node_count / 2 - 1 : 0;
}

StencilCoefficients laplacian_stencil(StencilOrder order)
{
    StencilCoefficients st;
    st.order = order;
    switch (order) {
    case StencilOrder::Order1:
        // (1 / 2h^2) (psi(i-1) - 2 psi(i) + psi(i+1)), h = 1
        st.half_width = 1;
        st.coefficients = {Rational(1, 2), Rational(-1), Rational(1, 2)};
        return st;
    case StencilOrder::Order10: {
        st.half_width = 5;
        const std::int64_t num[] = {8, -125, 1000, -6000, 42000, -73766, 42000, -6000, 1000, -125, 8};
        for (const auto c : num)
            st.coefficients.emplace_back(c, 25200);
        return st;
    }
    }
    throw Error(ErrorKind::UnknownOrder, "unsupported stencil order");
}

TransitionRates stencil_to_rates(const StencilCoefficients& stencil)
{
    TransitionRates r;
    r.half_width = stencil.half_width;
    r.rates.reserve(stencil.coefficients.size());
    for (const auto& c : stencil.coefficients)
        r.rates.push_back((c / Rational(-2)).to_double());
    return r;
}

TransitionRates dilate(const TransitionRates& rates, int lambda)
{
    if (lambda < 1)
        throw Error(ErrorKind::InvalidSize, "lambda must be positive");
    TransitionRates out;
    out.half_width = rates.half_width * lambda;
    out.rates.assign(static_cast<std::size_t>(2 * out.half_width + 1), 0.0);
    for (int s = -rates.half_width; s <= rates.half_width; ++s)
        out.rates[static_cast<std::size_t>(s * lambda + out.half_width)] = rates.gamma(s);
    return out;
}

DenseOperator line_hamiltonian(int n, double gamma, LineConvention convention, Boundary boundary)
{
    if (n < 2)
        throw Error(ErrorKind::InvalidSize, "line needs at least two nodes");
    if (!(gamma > 0))
        throw Error(ErrorKind::InvalidSize, "gamma must be positive");

    const double sign = convention == LineConvention::Quantum ? 1.0 : -1.0;
    DenseOperator h;
    h.boundary = boundary;
    h.entries = TypesD::RealMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        h.entries(i, i) = -2.0 * sign * gamma;
        for (const int s : {-1, 1}) {
            const int j = i + s;
            if (j >= 0 && j < n)
                h.entries(i, j) += sign * gamma;
            else if (boundary == Boundary::Periodic)
                h.entries(i, wrap(j, n)) += sign * gamma;
        }
    }
    return h;
}

DenseOperator rates_to_dense(const TransitionRates& rates, int n, Boundary boundary)
{
    if (n < 1)
        throw Error(ErrorKind::InvalidSize, "operator size must be positive");
    if (boundary == Boundary::Periodic && n <= 2 * rates.half_width)
        throw Error(ErrorKind::SizeTooSmall,
                    "periodic operator of size " + std::to_string(n) + " needs n > 2d = "
                        + std::to_string(2 * rates.half_width));

    DenseOperator h;
    h.boundary = boundary;
    h.entries = TypesD::RealMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int s = -rates.half_width; s <= rates.half_width; ++s) {
            const double g = rates.gamma(s);
            if (g == 0.0)
                continue;
            const int j = i + s;
            if (boundary == Boundary::Periodic)
                h.entries(i, wrap(j, n)) += g;
            else if (j >= 0 && j < n)
                h.entries(i, j) += g;
        }
    }
    return h;
}

DenseOperator embed_block_hamiltonian(const DenseOperator& h, const EmbeddingSpec& spec)
{
    const int nodes = spec.node_count();
    if (h.size() != nodes || h.entries.cols() != nodes)
        throw Error(ErrorKind::SpecMismatch, "node operator is " + std::to_string(h.size())
                                                 + " wide, embedding has " + std::to_string(nodes) + " nodes");

    const Eigen::Index total = spec.total_length();
    const int m = spec.segment_width();
    const int lo = -(m / 2);
    const int hi = (m + 1) / 2 - 1;

    DenseOperator out;
    out.boundary = h.boundary;
    out.entries = TypesD::RealMatrix::Zero(total, total);
    for (int i = 0; i < nodes; ++i) {
        for (int j = 0; j < nodes; ++j) {
            const double v = h.entries(i, j);
            if (v == 0.0)
                continue;
            for (int r = lo; r <= hi; ++r) {
                Eigen::Index row = spec.node_center(i) + r;
                Eigen::Index col = spec.node_center(j) + r;
                if (h.boundary == Boundary::Periodic) {
                    row = wrap(row, total);
                    col = wrap(col, total);
                } else if (row < 0 || row >= total || col < 0 || col >= total) {
                    continue;
                }
                out.entries(row, col) += v;
            }
        }
    }
    return out;
}

} // namespace qwalk
