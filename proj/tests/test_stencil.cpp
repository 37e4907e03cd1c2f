#include "qwalk/stencil.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace qwalk;

namespace {

TransitionRates order1() { return stencil_to_rates(laplacian_stencil(StencilOrder::Order1)); }
TransitionRates order10() { return stencil_to_rates(laplacian_stencil(StencilOrder::Order10)); }

double apply(const StencilCoefficients& st, double (*f)(double, double), double x, double k)
{
    double acc = 0;
    for (int s = -st.half_width; s <= st.half_width; ++s)
        acc += st.coeff(s).to_double() * f(x + s, k);
    return acc;
}

double asymmetry(const TypesD::RealMatrix& a) { return (a - a.transpose()).cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("rational arithmetic")
{
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(-42000, 25200) / Rational(-2) == Rational(5, 6));
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("laplacian_stencil")
{
    const auto o1 = laplacian_stencil(StencilOrder::Order1);
    CHECK(o1.half_width == 1);
    CHECK(o1.coeff(1) == Rational(1, 2));
    CHECK(o1.coeff(-1) == Rational(1, 2));
    CHECK(o1.coeff(0) == Rational(-1));

    const auto o10 = laplacian_stencil(StencilOrder::Order10);
    CHECK(o10.half_width == 5);
    CHECK(o10.coeff(5) == Rational(8, 25200));
    CHECK(o10.coeff(-5) == Rational(8, 25200));
    CHECK(o10.coeff(4) == Rational(-125, 25200));
    CHECK(o10.coeff(3) == Rational(1000, 25200));
    CHECK(o10.coeff(2) == Rational(-6000, 25200));
    CHECK(o10.coeff(1) == Rational(42000, 25200));
    CHECK(o10.coeff(0) == Rational(-73766, 25200));

    for (const auto& st : {o1, o10}) {
        Rational sum;
        for (int s = -st.half_width; s <= st.half_width; ++s) {
            CHECK(st.coeff(s) == st.coeff(-s));
            sum = sum + st.coeff(s);
        }
        CHECK(sum == Rational(0));
    }
}

TEST_CASE("stencil consistency against analytic second derivatives")
{
    const auto o1 = laplacian_stencil(StencilOrder::Order1);
    const auto o10 = laplacian_stencil(StencilOrder::Order10);
    auto square = [](double x, double) { return x * x; };
    // Order-1 carries the 1/(2h^2) prefactor (1/2 f''); order-10 approximates f''.
    for (double x = -10; x <= 10; x += 1) {
        CHECK(std::abs(apply(o1, square, x, 0) - 1.0) < 1e-12);
        CHECK(std::abs(apply(o10, square, x, 0) - 2.0) < 1e-12);
    }

    auto wave = [](double x, double k) { return std::sin(k * x); };
    const double k = 0.1;
    double err1 = 0, err10 = 0;
    for (int x = 5; x < 5 + 64; ++x) {
        const double exact = -k * k * std::sin(k * x);
        err1 = std::max(err1, std::abs(apply(o1, wave, x, k) - 0.5 * exact));
        err10 = std::max(err10, std::abs(apply(o10, wave, x, k) - exact));
    }
    CHECK(err10 < err1);
}

TEST_CASE("stencil_to_rates divides by -2")
{
    const auto r1 = order1();
    CHECK(r1.gamma(1) == -0.25);
    CHECK(r1.gamma(-1) == -0.25);
    CHECK(r1.gamma(0) == 0.5);

    const auto r10 = order10();
    CHECK(r10.gamma(1) == (Rational(-42000, 50400)).to_double());
    CHECK(std::abs(r10.gamma(1) + 5.0 / 6.0) < 1e-16);
    CHECK(r10.gamma(0) == Rational(73766, 50400).to_double());
    CHECK(r10.is_symmetric());
    CHECK(r10.gamma(6) == 0.0);
}

TEST_CASE("line_hamiltonian")
{
    const auto q = line_hamiltonian(4, 1.0, LineConvention::Quantum, Boundary::Truncated);
    TypesD::RealMatrix expected(4, 4);
    expected << -2, 1, 0, 0, 1, -2, 1, 0, 0, 1, -2, 1, 0, 0, 1, -2;
    CHECK(q.entries == expected);

    const auto c = line_hamiltonian(4, 1.0, LineConvention::Conservative, Boundary::Truncated);
    CHECK(c.entries == -expected);

    const auto p = line_hamiltonian(3, 1.0, LineConvention::Quantum, Boundary::Periodic);
    CHECK(p.entries(0, 2) == 1.0);
    CHECK(p.entries(2, 0) == 1.0);
    CHECK(p.entries(0, 0) == -2.0);

    CHECK_THROWS_AS(line_hamiltonian(1, 1.0, LineConvention::Quantum), Error);
    CHECK_THROWS_AS(line_hamiltonian(4, 0.0, LineConvention::Quantum), Error);
}

TEST_CASE("conservative rows sum to zero on a ring")
{
    for (int n : {2, 3, 7, 160}) {
        const auto c = line_hamiltonian(n, 1.7, LineConvention::Conservative, Boundary::Periodic);
        CHECK(c.entries.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("rates_to_dense")
{
    const auto r1 = order1();
    const auto h = rates_to_dense(r1, 5, Boundary::Periodic);
    TypesD::RealVector row(5);
    row << 0.5, -0.25, 0, 0, -0.25;
    CHECK(h.entries.row(0).transpose() == row);

    const auto t = rates_to_dense(r1, 5, Boundary::Truncated);
    CHECK(t.entries(0, 4) == 0.0);
    CHECK(t.entries(4, 0) == 0.0);
    CHECK(t.entries(0, 1) == -0.25);

    CHECK_THROWS_AS(rates_to_dense(order10(), 10, Boundary::Periodic), Error);
    CHECK_NOTHROW(rates_to_dense(order10(), 11, Boundary::Periodic));
}

TEST_CASE("periodic operators are circulant and symmetric")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    std::uniform_int_distribution<int> width(0, 5);
    for (int trial = 0; trial < 40; ++trial) {
        TransitionRates r;
        r.half_width = width(rng);
        r.rates.assign(2 * r.half_width + 1, 0.0);
        for (int s = 0; s <= r.half_width; ++s)
            r.rates[r.half_width + s] = r.rates[r.half_width - s] = u(rng);
        const int n = 2 * r.half_width + 1 + trial % 20;
        const auto h = rates_to_dense(r, n, Boundary::Periodic);
        CHECK(asymmetry(h.entries) <= 1e-14);
        TypesD::RealMatrix shift = TypesD::RealMatrix::Zero(n, n);
        for (int i = 0; i < n; ++i)
            shift(i, (i + 1) % n) = 1.0;
        CHECK((h.entries * shift - shift * h.entries).cwiseAbs().maxCoeff() <= 1e-12);
        for (int i = 0; i + 1 < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(h.entries(i + 1, (j + 1) % n) == h.entries(i, j));
    }
}

TEST_CASE("dilate places rates at multiples of lambda")
{
    const auto d = dilate(order1(), 3);
    CHECK(d.half_width == 3);
    CHECK(d.gamma(3) == -0.25);
    CHECK(d.gamma(-3) == -0.25);
    CHECK(d.gamma(0) == 0.5);
    CHECK(d.gamma(1) == 0.0);
    CHECK(d.gamma(2) == 0.0);
}

TEST_CASE("embedding geometry")
{
    const EmbeddingSpec spec(160, 4, 16);
    CHECK(spec.total_length() == 640);
    CHECK(spec.label_of(0) == -79);
    CHECK(spec.label_of(159) == 80);
    CHECK(spec.index_of(0) == 79);
    CHECK(spec.node_center(spec.index_of(1)) - spec.node_center(spec.index_of(0)) == 4);
    CHECK_THROWS_AS(spec.index_of(81), Error);
    CHECK_THROWS_AS(EmbeddingSpec(10, 17, 16), Error);
    CHECK_THROWS_AS(EmbeddingSpec(0, 1, 1), Error);
}

TEST_CASE("embed_block_hamiltonian")
{
    SUBCASE("two nodes, tiling, hand-built 4x4")
    {
        DenseOperator h;
        h.entries.resize(2, 2);
        h.entries << -1, 1, 1, -1;
        const auto big = embed_block_hamiltonian(h, EmbeddingSpec(2, 2, 2));
        // Blocks cover kappa + {-1, 0} with kappa = {0, 2}, wrapped mod 4.
        TypesD::RealMatrix expected(4, 4);
        expected << -1, 0, 1, 0,
                    0, -1, 0, 1,
                    1, 0, -1, 0,
                    0, 1, 0, -1;
        CHECK(big.entries == expected);
    }
    SUBCASE("tiling equals the dilated circulant")
    {
        for (int nodes = 3; nodes <= 8; ++nodes) {
            for (int m = 1; m <= 4; ++m) {
                TransitionRates r;
                r.half_width = 1;
                r.rates = {-0.3, 0.9, -0.3};
                const auto h = rates_to_dense(r, nodes, Boundary::Periodic);
                const auto big = embed_block_hamiltonian(h, EmbeddingSpec(nodes, m, m));
                const auto oracle = rates_to_dense(dilate(r, m), nodes * m, Boundary::Periodic);
                CHECK((big.entries - oracle.entries).cwiseAbs().maxCoeff() == 0.0);
            }
        }
    }
    SUBCASE("overlapping blocks accumulate and stay symmetric")
    {
        const auto h = rates_to_dense(order1(), 6, Boundary::Periodic);
        const auto big = embed_block_hamiltonian(h, EmbeddingSpec(6, 2, 4));
        CHECK(asymmetry(big.entries) <= 1e-14);
        // Each element lies in m / lambda = 2 blocks.
        CHECK(big.entries(0, 0) == doctest::Approx(2 * 0.5));
    }
    SUBCASE("size mismatch")
    {
        const auto h = rates_to_dense(order1(), 6, Boundary::Periodic);
        CHECK_THROWS_AS(embed_block_hamiltonian(h, EmbeddingSpec(5, 2, 2)), Error);
    }
}
