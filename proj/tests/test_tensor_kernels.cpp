#include "oracles.hpp"

#include <dgmg/errors.hpp>
#include <dgmg/tensor_kernels.hpp>

#include <doctest.h>

#include <cmath>

using namespace dgmg;

namespace {

DenseMatrix random_matrix(std::size_t r, std::size_t c, unsigned seed)
{
    DenseMatrix m(r, c);
    const auto v = oracle::random_vector(r * c, seed);
    std::copy(v.begin(), v.end(), m.data().begin());
    return m;
}

oracle::Mat to_eigen(const DenseMatrix& m)
{
    oracle::Mat e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            e(i, j) = m(i, j);
    return e;
}

} // namespace

TEST_SUITE("tensor-kernels")
{
    TEST_CASE("kron3 with identities returns the input")
    {
        const auto id = DenseMatrix::identity(3);
        const auto v = oracle::random_vector(27, 1);
        const auto out = kron3_apply(id, id, id, v);
        for (std::size_t i = 0; i < v.size(); ++i)
            CHECK(out[i] == v[i]);
    }

    TEST_CASE("kron3 of scalars multiplies")
    {
        DenseMatrix a(1, 1, 2.0), b(1, 1, -3.0), c(1, 1, 0.5);
        const std::vector<double> v{7.0};
        CHECK(kron3_apply(a, b, c, v)[0] == doctest::Approx(-21.0));
    }

    TEST_CASE("kron3 matches the explicit Kronecker product")
    {
        for (auto [nz, ny, nx, mz, my, mx] : {std::array<int, 6>{2, 2, 2, 2, 2, 2}, std::array<int, 6>{3, 4, 5, 2, 6, 3}}) {
            const auto az = random_matrix(mz, nz, 11), ay = random_matrix(my, ny, 12), ax = random_matrix(mx, nx, 13);
            const auto v = oracle::random_vector(nz * ny * nx, 14);
            const oracle::Mat k = oracle::kron(to_eigen(az), oracle::kron(to_eigen(ay), to_eigen(ax)));
            const oracle::Vec ref = k * Eigen::Map<const oracle::Vec>(v.data(), v.size());
            const auto out = kron3_apply(az, ay, ax, v);
            REQUIRE(out.size() == static_cast<std::size_t>(ref.size()));
            for (std::size_t i = 0; i < out.size(); ++i)
                CHECK(out[i] == doctest::Approx(ref(i)).epsilon(1e-13));
        }
    }

    TEST_CASE("kron3 rejects mismatched shapes")
    {
        const auto id = DenseMatrix::identity(3);
        const std::vector<double> v(26, 1.0);
        CHECK_THROWS_AS(kron3_apply(id, id, id, v), DimensionError);
    }

    TEST_CASE("generalized eigenproblem: identity")
    {
        const std::vector<double> m(4, 1.0);
        const auto ep = sym_generalized_eig(DenseMatrix::identity(4), m);
        for (double l : ep.values)
            CHECK(l == doctest::Approx(1.0));
        const auto sts = ep.vectors.transposed() * ep.vectors;
        CHECK((sts - DenseMatrix::identity(4)).max_abs() < 1e-13);
    }

    TEST_CASE("generalized eigenproblem: diagonal case sorts ascending")
    {
        const std::vector<double> d{3.0, 1.0, 2.0};
        const auto ep = sym_generalized_eig(DenseMatrix::diagonal(d), std::vector<double>(3, 1.0));
        CHECK(ep.values[0] == doctest::Approx(1.0));
        CHECK(ep.values[1] == doctest::Approx(2.0));
        CHECK(ep.values[2] == doctest::Approx(3.0));
        // columns are signed unit vectors e_1, e_2, e_0
        CHECK(std::abs(ep.vectors(1, 0)) == doctest::Approx(1.0));
        CHECK(std::abs(ep.vectors(2, 1)) == doctest::Approx(1.0));
        CHECK(std::abs(ep.vectors(0, 2)) == doctest::Approx(1.0));
    }

    TEST_CASE("generalized eigenproblem: random SPD residuals")
    {
        const auto b = random_matrix(6, 6, 21);
        const auto l = b.transposed() * b + DenseMatrix::identity(6);
        auto m = oracle::random_vector(6, 22);
        for (double& x : m)
            x = 1.5 + x;
        const auto ep = sym_generalized_eig(l, m);
        const auto ls = l * ep.vectors;
        double worst = 0.0;
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j)
                worst = std::max(worst, std::abs(ls(i, j) - m[i] * ep.vectors(i, j) * ep.values[j]));
        CHECK(worst <= 1e-12 * l.norm());
        const auto stms = ep.vectors.transposed() * DenseMatrix::diagonal(m) * ep.vectors;
        CHECK((stms - DenseMatrix::identity(6)).max_abs() < 1e-12);
        for (std::size_t j = 1; j < 6; ++j)
            CHECK(ep.values[j - 1] <= ep.values[j]);
    }

    TEST_CASE("generalized eigenproblem rejects bad input")
    {
        DenseMatrix l = DenseMatrix::identity(2);
        l(0, 1) = 1.0;
        CHECK_THROWS_AS(sym_generalized_eig(l, std::vector<double>(2, 1.0)), InputError);
        CHECK_THROWS_AS(sym_generalized_eig(DenseMatrix::identity(2), std::vector<double>{1.0, 0.0}), InputError);
    }

    TEST_CASE("dense solve")
    {
        const std::vector<double> b{2.0, 4.0};
        const auto x0 = dense_solve(DenseMatrix::identity(2), b);
        CHECK(x0[0] == 2.0);
        CHECK(x0[1] == 4.0);
        const auto x1 = dense_solve(DenseMatrix::diagonal(std::vector<double>{2.0, 4.0}), b);
        CHECK(x1[0] == doctest::Approx(1.0));
        CHECK(x1[1] == doctest::Approx(1.0));

        auto a = random_matrix(8, 8, 31);
        for (std::size_t i = 0; i < 8; ++i)
            a(i, i) += 8.0;
        const auto rhs = oracle::random_vector(8, 32);
        const auto x = dense_solve(a, rhs);
        const auto ax = a.apply(x);
        for (std::size_t i = 0; i < 8; ++i)
            CHECK(ax[i] == doctest::Approx(rhs[i]).epsilon(1e-12));

        CHECK_THROWS_AS(dense_solve(DenseMatrix(2, 2, 1.0), b), SolveError);
    }
}
