#include "oracles.hpp"

#include <dgmg/dg_operator.hpp>
#include <dgmg/errors.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace dgmg;
using std::numbers::pi;

namespace {

Grid cube(int n, double extent = 2.0 * pi) { return Grid({extent, extent, extent}, {n, n, n}); }

} // namespace

TEST_SUITE("dg-operator")
{
    TEST_CASE("penalty threshold")
    {
        CHECK(penalty_min(1, 1.0) == doctest::Approx(2.0));
        CHECK(penalty_min(4, 2.0 * pi / 8.0) == doctest::Approx(25.4648).epsilon(1e-5));
        CHECK(penalty_min(16, 2.0 * pi / 8.0) == doctest::Approx(346.32).epsilon(1e-5));
    }

    TEST_CASE("directional assembly matches the brute-force oracle")
    {
        for (auto kind : {BasisKind::GLL, BasisKind::GL})
            for (int p : {1, 2, 5}) {
                CAPTURE(p);
                const auto b = make_basis(kind, p);
                const double h = 2.0 * pi / 3.0;
                const double mu = 2.0 * penalty_min(p, h);
                const auto op = assemble_directional(b, h, 3, mu);
                const auto dense = op.dense_stiffness();
                const auto ref = oracle::stiffness_1d(b.nodes, b.weights, h, 3, mu);
                const double scale = ref.cwiseAbs().maxCoeff();
                for (Eigen::Index i = 0; i < ref.rows(); ++i)
                    for (Eigen::Index j = 0; j < ref.cols(); ++j)
                        CHECK(std::abs(dense(i, j) - ref(i, j)) <= 1e-12 * scale);
                for (std::size_t i = 0; i < op.global_size(); ++i)
                    CHECK(op.mass_entry(i) == doctest::Approx(b.weights[i % b.size()] * h / 2.0));
            }
    }

    TEST_CASE("directional stiffness is symmetric with the constant null vector")
    {
        const auto b = make_basis(BasisKind::GL, 4);
        const auto op = assemble_directional(b, 0.7, 5, 2.0 * penalty_min(4, 0.7));
        const auto a = op.dense_stiffness();
        CHECK((a - a.transposed()).max_abs() == 0.0);
        const auto ones = std::vector<double>(op.global_size(), 1.0);
        const auto a1 = a.apply(ones);
        for (double v : a1)
            CHECK(std::abs(v) <= 1e-12 * a.max_abs());
    }

    TEST_CASE("directional assembly rejects a non-positive penalty")
    {
        CHECK_THROWS_AS(assemble_directional(make_basis(BasisKind::GLL, 2), 1.0, 3, 0.0), InputError);
    }

    TEST_CASE("matrix-free operator matches the dense Kronecker oracle")
    {
        const Grid grid = cube(3);
        const auto b = make_basis(BasisKind::GLL, 2);
        const auto ops = LevelOperators::build(grid, b, 2.0);
        const auto dense = oracle::dense_operator(grid, b, 2.0);
        const auto u = oracle::random_field(grid, 2, 5);
        const oracle::Vec ref = dense.a * oracle::to_lex(u, dense.lex);
        const auto au = oracle::to_lex(apply_A(ops, u), dense.lex);
        CHECK((au - ref).cwiseAbs().maxCoeff() <= 1e-12 * ref.cwiseAbs().maxCoeff());
    }

    TEST_CASE("matrix-free operator on an anisotropic grid")
    {
        const Grid grid({2.0 * pi * 4, 2.0 * pi * 2, 2.0 * pi}, {3, 4, 5});
        const auto b = make_basis(BasisKind::GL, 3);
        const auto ops = LevelOperators::build(grid, b, 2.0);
        const auto dense = oracle::dense_operator(grid, b, 2.0);
        const auto u = oracle::random_field(grid, 3, 6);
        const oracle::Vec ref = dense.a * oracle::to_lex(u, dense.lex);
        const auto au = oracle::to_lex(apply_A(ops, u), dense.lex);
        CHECK((au - ref).cwiseAbs().maxCoeff() <= 1e-12 * ref.cwiseAbs().maxCoeff());
    }

    TEST_CASE("constants are in the null space; the operator is symmetric and PSD")
    {
        const Grid grid = cube(4);
        const auto b = make_basis(BasisKind::GLL, 4);
        const auto ops = LevelOperators::build(grid, b, 2.0);
        const Field c(grid, 4, 3.25);
        const Field ac = apply_A(ops, c);
        const auto v = oracle::random_field(grid, 4, 8);
        const double scale = norm2(apply_A(ops, v)) / norm2(v);
        CHECK(norm2(ac) <= 1e-11 * scale * norm2(c));

        for (unsigned s = 0; s < 10; ++s) {
            const auto x = oracle::random_field(grid, 4, 100 + s);
            const auto y = oracle::random_field(grid, 4, 200 + s);
            const double xay = dot(x, apply_A(ops, y));
            const double yax = dot(y, apply_A(ops, x));
            CHECK(std::abs(xay - yax) <= 1e-11 * scale * norm2(x) * norm2(y));
            CHECK(dot(x, apply_A(ops, x)) >= -1e-10 * dot(x, x));
        }
    }

    TEST_CASE("load vector")
    {
        const Grid grid({2.0 * pi, 4.0 * pi, 2.0 * pi}, {3, 4, 3});
        const auto b = make_basis(BasisKind::GL, 3);
        const auto zero = assemble_rhs(grid, b, [](double, double, double) { return 0.0; });
        CHECK(norm2(zero) == 0.0);
        const auto one = assemble_rhs(grid, b, [](double, double, double) { return 1.0; });
        double s = 0.0;
        for (double v : one.values())
            s += v;
        CHECK(s == doctest::Approx(grid.volume()).epsilon(1e-12));
        const auto cosx = assemble_rhs(grid, b, [](double x, double, double) { return std::cos(x); });
        s = 0.0;
        for (double v : cosx.values())
            s += v;
        CHECK(std::abs(s) < 1e-10 * grid.volume());
    }

    TEST_CASE("residual identities")
    {
        const Grid grid = cube(3);
        const auto b = make_basis(BasisKind::GLL, 3);
        const auto ops = LevelOperators::build(grid, b, 2.0);
        const auto f = oracle::random_field(grid, 3, 1);
        const auto u = oracle::random_field(grid, 3, 2);
        CHECK(norm2(residual(ops, Field(grid, 3), f) - f) == 0.0);
        CHECK(norm2(residual(ops, u, apply_A(ops, u))) == 0.0);
        const auto r = residual(ops, u, f);
        CHECK(norm2(r + apply_A(ops, u) - f) <= 1e-13 * norm2(f + apply_A(ops, u)));
    }

    TEST_CASE("grid and field contracts")
    {
        CHECK_THROWS_AS(Grid({1.0, 1.0, 1.0}, {2, 3, 3}), InputError);
        CHECK_THROWS_AS(Grid({0.0, 1.0, 1.0}, {3, 3, 3}), InputError);
        const Grid grid = cube(3);
        CHECK(grid.neighbor(grid.element_index(0, 1, 2), {-1, 1, 1}) == grid.element_index(2, 2, 0));
        Field a(grid, 2), b(grid, 3);
        CHECK_THROWS_AS(a += b, DimensionError);
        CHECK_THROWS_AS(dot(a, b), DimensionError);
    }
}
