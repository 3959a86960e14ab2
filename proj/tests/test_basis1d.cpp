#include "oracles.hpp"

#include <dgmg/basis1d.hpp>
#include <dgmg/errors.hpp>

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace dgmg;

TEST_SUITE("basis1d")
{
    TEST_CASE("low-degree nodes and weights")
    {
        const auto l1 = make_basis(BasisKind::GLL, 1);
        CHECK(l1.nodes == std::vector<double>{-1.0, 1.0});
        CHECK(l1.weights[0] == doctest::Approx(1.0));
        CHECK(l1.weights[1] == doctest::Approx(1.0));

        const auto l2 = make_basis(BasisKind::GLL, 2);
        CHECK(l2.nodes[0] == -1.0);
        CHECK(l2.nodes[1] == 0.0);
        CHECK(l2.nodes[2] == 1.0);
        CHECK(l2.weights[0] == doctest::Approx(1.0 / 3.0));
        CHECK(l2.weights[1] == doctest::Approx(4.0 / 3.0));
        CHECK(l2.weights[2] == doctest::Approx(1.0 / 3.0));

        const auto g1 = make_basis(BasisKind::GL, 1);
        CHECK(g1.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)));
        CHECK(g1.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)));
        CHECK(g1.weights[0] == doctest::Approx(1.0));
    }

    TEST_CASE("invariants and quadrature exactness")
    {
        for (auto kind : {BasisKind::GLL, BasisKind::GL})
            for (int p : {1, 2, 3, 4, 7, 8, 16, 32}) {
                CAPTURE(p);
                const auto b = make_basis(kind, p);
                REQUIRE(b.size() == static_cast<std::size_t>(p + 1));
                for (std::size_t i = 1; i < b.size(); ++i)
                    CHECK(b.nodes[i - 1] < b.nodes[i]);
                for (std::size_t i = 0; i < b.size(); ++i) {
                    CHECK(b.nodes[i] == -b.nodes[b.size() - 1 - i]);
                    CHECK(b.weights[i] > 0.0);
                }
                if (kind == BasisKind::GLL) {
                    CHECK(b.nodes.front() == -1.0);
                    CHECK(b.nodes.back() == 1.0);
                } else {
                    CHECK(b.nodes.front() > -1.0);
                }
                const int exact = kind == BasisKind::GLL ? 2 * p - 1 : 2 * p + 1;
                for (int k = 0; k <= exact; ++k) {
                    double s = 0.0;
                    for (std::size_t i = 0; i < b.size(); ++i)
                        s += b.weights[i] * std::pow(b.nodes[i], k);
                    const double ref = k % 2 ? 0.0 : 2.0 / (k + 1);
                    CHECK(s == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
                }
                for (std::size_t i = 0; i < b.size(); ++i) {
                    double row = 0.0;
                    for (std::size_t j = 0; j < b.size(); ++j)
                        row += b.diff(i, j);
                    CHECK(std::abs(row) < 1e-10 * p * p);
                }
            }
    }

    TEST_CASE("differentiation and traces match the product-rule oracle")
    {
        for (auto kind : {BasisKind::GLL, BasisKind::GL}) {
            const auto b = make_basis(kind, 5);
            for (std::size_t i = 0; i < b.size(); ++i)
                for (std::size_t j = 0; j < b.size(); ++j)
                    CHECK(b.diff(i, j) == doctest::Approx(oracle::lagrange_derivative(b.nodes, j, b.nodes[i])).epsilon(1e-11));
            for (std::size_t j = 0; j < b.size(); ++j) {
                CHECK(b.left_value[j] == doctest::Approx(oracle::lagrange(b.nodes, j, -1.0)).epsilon(1e-12));
                CHECK(b.right_value[j] == doctest::Approx(oracle::lagrange(b.nodes, j, 1.0)).epsilon(1e-12));
                CHECK(b.left_deriv[j] == doctest::Approx(oracle::lagrange_derivative(b.nodes, j, -1.0)).epsilon(1e-11));
                CHECK(b.right_deriv[j] == doctest::Approx(oracle::lagrange_derivative(b.nodes, j, 1.0)).epsilon(1e-11));
            }
        }
    }

    TEST_CASE("interpolation matrix")
    {
        const auto b2 = make_basis(BasisKind::GLL, 2);
        const auto id = interp_matrix(b2, b2.nodes);
        CHECK((id - DenseMatrix::identity(3)).max_abs() < 1e-14);

        const auto b1 = make_basis(BasisKind::GLL, 1);
        const auto mid = interp_matrix(b1, std::vector<double>{0.0});
        CHECK(mid(0, 0) == doctest::Approx(0.5));
        CHECK(mid(0, 1) == doctest::Approx(0.5));

        auto q = [](double x) { return 3.0 * x * x - x + 0.25; };
        const auto g4 = make_basis(BasisKind::GL, 4);
        const auto m = interp_matrix(b2, g4.nodes);
        std::vector<double> samples;
        for (double x : b2.nodes)
            samples.push_back(q(x));
        const auto out = m.apply(samples);
        for (std::size_t i = 0; i < out.size(); ++i)
            CHECK(out[i] == doctest::Approx(q(g4.nodes[i])).epsilon(1e-13));

        CHECK_THROWS_AS(interp_matrix(b2, std::vector<double>{1.5}), DomainError);
    }

    TEST_CASE("node distances to a face")
    {
        const auto d = node_distance_to_face(make_basis(BasisKind::GLL, 2), Side::Right);
        CHECK(d[0] == doctest::Approx(0.0));
        CHECK(d[1] == doctest::Approx(1.0));
        CHECK(d[2] == doctest::Approx(2.0));

        const auto g = node_distance_to_face(make_basis(BasisKind::GL, 2), Side::Right);
        CHECK(g[0] == doctest::Approx(1.0 - std::sqrt(0.6)));
        CHECK(g[0] == doctest::Approx(0.2254).epsilon(1e-4));
        CHECK(g[1] == doctest::Approx(1.0));
        CHECK(g[2] == doctest::Approx(1.7746).epsilon(1e-4));

        const auto l8 = node_distance_to_face(make_basis(BasisKind::GLL, 8), Side::Left);
        CHECK(l8[1] == doctest::Approx(0.1002).epsilon(1e-3));
    }

    TEST_CASE("invalid degree and names")
    {
        CHECK_THROWS_AS(make_basis(BasisKind::GLL, 0), InputError);
        CHECK(parse_basis_kind("GL") == BasisKind::GL);
        CHECK(parse_basis_kind("gll") == BasisKind::GLL);
        CHECK_THROWS_AS(parse_basis_kind("spline"), InputError);
    }
}
