#include "qwalk/analytic.hpp"
#include "qwalk/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace qwalk;

TEST_CASE("free_gaussian")
{
    const Complex origin = free_gaussian(0.0, 0.0, 2.0);
    CHECK(std::abs(origin.imag()) == 0.0);
    CHECK(std::abs(origin.real() - 1.0 / std::sqrt(std::sqrt(2.0 * std::numbers::pi) * 2.0)) < 1e-15);

    SUBCASE("unit norm by trapezoid quadrature")
    {
        for (double t : {0.0, 15.0}) {
            const double h = 0.1;
            double acc = 0;
            for (int i = -2000; i <= 2000; ++i) {
                const double w = (i == -2000 || i == 2000) ? 0.5 : 1.0;
                acc += w * std::norm(free_gaussian(i * h, t, 2.0));
            }
            CHECK(std::abs(acc * h - 1.0) <= 1e-6);
        }
    }

    SUBCASE("even in x")
    {
        for (double x = 0.25; x < 40; x += 1.7)
            for (double t : {0.0, 3.0, 15.0})
                CHECK(std::abs(std::norm(free_gaussian(x, t, 2.0)) - std::norm(free_gaussian(-x, t, 2.0))) == 0.0);
    }
}

TEST_CASE("kinetic coefficient of the stencil walks")
{
    // Exact: order-1 rates sum gamma s^2 = -1/2, order-10 sum = -1.
    CHECK(kinetic_coefficient(stencil_to_rates(laplacian_stencil(StencilOrder::Order1))) == doctest::Approx(0.25));
    CHECK(kinetic_coefficient(stencil_to_rates(laplacian_stencil(StencilOrder::Order10))) == doctest::Approx(0.5));
    CHECK(equivalent_free_time(stencil_to_rates(laplacian_stencil(StencilOrder::Order1)), 15.0)
          == doctest::Approx(3.75));
}

TEST_CASE("analytic node distribution at t = 0 is the initial packet")
{
    const EmbeddingSpec spec(40, 2, 8);
    const auto ref = analytic_node_distribution(spec, 2.0, 0.0);
    const auto init = extract_nodes(gaussian_init(spec, {0, 2.0}), spec);
    CHECK((ref.probabilities - init.probabilities).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("classical_evolve")
{
    SUBCASE("t = 0")
    {
        const auto h = line_hamiltonian(10, 1.0, LineConvention::Conservative);
        ProbabilityVector p0 = ProbabilityVector::Zero(10);
        p0[3] = 0.25;
        p0[4] = 0.75;
        CHECK((classical_evolve(h, p0, 0.0) - p0).cwiseAbs().maxCoeff() <= 1e-14);
    }
    SUBCASE("two-state closed form")
    {
        DenseOperator h;
        h.entries.resize(2, 2);
        h.entries << 1, -1, -1, 1;
        ProbabilityVector p0(2);
        p0 << 1, 0;
        for (double t : {0.1, 1.0, 3.0}) {
            const auto p = classical_evolve(h, p0, t);
            CHECK(std::abs(p[0] - 0.5 * (1 + std::exp(-2 * t))) <= 1e-14);
            CHECK(std::abs(p[1] - 0.5 * (1 - std::exp(-2 * t))) <= 1e-14);
        }
    }
    SUBCASE("diffusive spread on 160 nodes")
    {
        const auto h = line_hamiltonian(160, 1.0, LineConvention::Conservative);
        ProbabilityVector p0 = ProbabilityVector::Zero(160);
        p0[origin_index(160)] = 1.0;
        const auto p = classical_evolve(h, p0, 25.0);
        const auto dist = plain_node_distribution(p);
        Eigen::Index peak = 0;
        p.maxCoeff(&peak);
        CHECK(dist.labels[peak] == 0);
        // Single peak: monotone decrease away from the origin, up to the
        // roundoff floor of the eigen-decomposition in the far tails.
        for (int i = origin_index(160); i + 1 < 160; ++i)
            CHECK(p[i + 1] <= p[i] + 1e-14);
        for (int i = origin_index(160); i > 0; --i)
            CHECK(p[i - 1] <= p[i] + 1e-14);
        const double sigma = spread_sigma(dist);
        CHECK(std::abs(sigma - std::sqrt(2.0 * 25.0)) <= 0.1 * std::sqrt(50.0));
    }
    SUBCASE("conservation and positivity")
    {
        const auto h = line_hamiltonian(64, 0.7, LineConvention::Conservative);
        ProbabilityVector p0 = ProbabilityVector::Zero(64);
        p0[5] = 1.0;
        for (double t = 0; t <= 50; t += 2.5) {
            const auto p = classical_evolve(h, p0, t);
            CHECK(std::abs(p.sum() - 1.0) <= 1e-10);
            CHECK(p.minCoeff() >= 0.0);
        }
    }
    SUBCASE("non-conservative input")
    {
        const auto truncated = line_hamiltonian(8, 1.0, LineConvention::Conservative, Boundary::Truncated);
        ProbabilityVector p0 = ProbabilityVector::Zero(8);
        p0[0] = 1;
        try {
            classical_evolve(truncated, p0, 1.0);
            FAIL("expected NonConservative");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NonConservative);
        }
    }
}

TEST_CASE("quantum walk outruns the classical walk")
{
    const int n = 160;
    ComplexState psi0 = ComplexState::Zero(n);
    psi0[origin_index(n)] = 1.0;
    const auto quantum = plain_node_distribution(
        evolve_direct(line_hamiltonian(n, 1.0, LineConvention::Quantum), psi0, 15.0));
    ProbabilityVector p0 = ProbabilityVector::Zero(n);
    p0[origin_index(n)] = 1.0;
    const auto classical = plain_node_distribution(
        classical_evolve(line_hamiltonian(n, 1.0, LineConvention::Conservative), p0, 25.0));
    CHECK(spread_sigma(quantum) >= 2.0 * spread_sigma(classical));
}
