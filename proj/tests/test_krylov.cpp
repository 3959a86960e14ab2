#include "oracles.hpp"

#include <dgmg/errors.hpp>
#include <dgmg/krylov.hpp>
#include <dgmg/multigrid.hpp>

#include <doctest.h>

#include <Eigen/SVD>

#include <numbers>

using namespace dgmg;
using std::numbers::pi;

namespace {

Field mean_free(Field f)
{
    double s = 0.0;
    for (double v : f.values())
        s += v;
    for (double& v : f.values())
        v -= s / static_cast<double>(f.size());
    return f;
}

oracle::Mat pseudo_inverse(const oracle::Mat& a)
{
    Eigen::JacobiSVD<oracle::Mat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    oracle::Vec s = svd.singularValues();
    for (Eigen::Index i = 0; i < s.size(); ++i)
        s(i) = s(i) > 1e-10 * s(0) ? 1.0 / s(i) : 0.0;
    return svd.matrixV() * s.asDiagonal() * svd.matrixU().transpose();
}

} // namespace

TEST_SUITE("krylov")
{
    TEST_CASE("projected CG matches the dense pseudo-inverse")
    {
        const Grid grid({8.0, 6.0, 6.0}, {4, 3, 3});
        const auto b = make_basis(BasisKind::GLL, 1);
        const auto ops = LevelOperators::build(grid, b, 2.0);
        const auto dense = oracle::dense_operator(grid, b, 2.0);
        const LinearOperator apply = [&ops](const Field& in, Field& out) { apply_A(ops, in, out); };

        CHECK(norm2(cg_projected(apply, Field(grid, 1), 1e-12, 100)) == 0.0);

        const auto f = oracle::random_field(grid, 1, 1);
        const auto u = cg_projected(apply, f, 1e-13, 10 * static_cast<int>(f.size()));
        const oracle::Vec ref = pseudo_inverse(dense.a) * oracle::to_lex(f, dense.lex);
        const oracle::Vec got = oracle::to_lex(u, dense.lex);
        CHECK((got - ref).norm() <= 1e-9 * ref.norm());
    }

    TEST_CASE("projected CG reports a stalled or capped iteration")
    {
        const Grid grid({6.0, 6.0, 6.0}, {3, 3, 3});
        const auto ops = LevelOperators::build(grid, make_basis(BasisKind::GLL, 2), 2.0);
        const LinearOperator apply = [&ops](const Field& in, Field& out) { apply_A(ops, in, out); };
        const auto f = oracle::random_field(grid, 2, 2);
        CHECK_THROWS_AS(cg_projected(apply, f, 1e-12, 3), SolveError);
        const LinearOperator indefinite = [](const Field& in, Field& out) {
            out = in;
            out *= -1.0;
        };
        CHECK_THROWS_AS(cg_projected(indefinite, f, 1e-12, 10), SolveError);
    }

    TEST_CASE("PCG with the exact inverse converges in one iteration")
    {
        const Grid grid({2.0 * pi, 2.0 * pi, 2.0 * pi}, {3, 3, 3});
        const auto b = make_basis(BasisKind::GLL, 2);
        const auto ops = LevelOperators::build(grid, b, 2.0);
        const auto dense = oracle::dense_operator(grid, b, 2.0);
        const oracle::Mat pinv = pseudo_inverse(dense.a);
        const LinearOperator apply = [&ops](const Field& in, Field& out) { apply_A(ops, in, out); };
        const LinearOperator exact = [&](const Field& r, Field& z) {
            z = oracle::from_lex(pinv * oracle::to_lex(r, dense.lex), grid, 2, dense.lex);
        };
        const auto f = mean_free(oracle::random_field(grid, 2, 3));
        for (auto beta : {BetaFormula::Flexible, BetaFormula::Standard}) {
            const auto res = pcg(apply, exact, f, Field(grid, 2), {1e-10, 10, 1e3}, beta);
            CHECK(res.converged);
            CHECK(res.iterations == 1);
        }
    }

    TEST_CASE("PCG from the exact solution takes no iterations")
    {
        const Grid grid({2.0 * pi, 2.0 * pi, 2.0 * pi}, {3, 3, 3});
        const auto ops = LevelOperators::build(grid, make_basis(BasisKind::GLL, 2), 2.0);
        const LinearOperator apply = [&ops](const Field& in, Field& out) { apply_A(ops, in, out); };
        const LinearOperator ident = [](const Field& r, Field& z) { z = r; };
        const auto u = oracle::random_field(grid, 2, 4);
        const auto res = pcg(apply, ident, apply_A(ops, u), u, {});
        CHECK(res.iterations == 0);
        CHECK(res.converged);
        CHECK(res.history.size() == 1);
    }

    TEST_CASE("unpreconditioned PCG converges and records its history")
    {
        const Grid grid({2.0 * pi, 2.0 * pi, 2.0 * pi}, {3, 3, 3});
        const auto ops = LevelOperators::build(grid, make_basis(BasisKind::GL, 2), 2.0);
        const LinearOperator apply = [&ops](const Field& in, Field& out) { apply_A(ops, in, out); };
        const LinearOperator ident = [](const Field& r, Field& z) { z = r; };
        const auto f = mean_free(oracle::random_field(grid, 2, 5));
        const auto res = pcg(apply, ident, f, Field(grid, 2), {1e-10, 2000, 1e3});
        CHECK(res.converged);
        CHECK(res.history.size() == static_cast<std::size_t>(res.iterations) + 1);
        CHECK(norm2(residual(ops, res.solution, f)) <= 1e-9 * norm2(f));
    }

    TEST_CASE("Krylov acceleration beats stationary cycles at minimal overlap")
    {
        HierarchyConfig c;
        c.degree = 8;
        c.grid = Grid({2.0 * pi, 2.0 * pi, 2.0 * pi}, {4, 4, 4});
        c.overlap = OverlapSpec::fixed_nodes(1);
        const LevelHierarchy h(c);
        const auto f = mean_free(oracle::random_field(h.grid(), 8, 6));
        const auto u0 = oracle::random_field(h.grid(), 8, 7);
        const auto mg = mg_solve(h, f, u0, {1e-10, 60, 1e3});
        const auto cg = mgcg_solve(h, f, u0, {1e-10, 60, 1e3});
        REQUIRE(mg.converged);
        REQUIRE(cg.converged);
        MESSAGE("MG cycles " << mg.iterations << ", MG-CG iterations " << cg.iterations);
        CHECK(cg.iterations < mg.iterations);
        CHECK(std::abs(mass_weighted_mean(h.finest().ops, cg.solution)) < 1e-12 * norm2(cg.solution));
    }
}
