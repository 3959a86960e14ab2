#include "dgmg_tools/experiment.hpp"

#include <dgmg/dg_operator.hpp>
#include <dgmg/errors.hpp>
#include <dgmg/multigrid.hpp>

#include <array>
#include <cmath>

namespace dgmg::bench {

namespace {

// u = cos(2x - 2z) sin(1 + x) sin(1 - x) sin(3x) sin(3x - 2y + 2z), each factor
// trig(k . x + c).
struct Factor {
    std::array<double, 3> k;
    double phase;
    bool cosine;
};

constexpr std::array<Factor, 5> kFactors{{
    {{2.0, 0.0, -2.0}, 0.0, true},
    {{1.0, 0.0, 0.0}, 1.0, false},
    {{-1.0, 0.0, 0.0}, 1.0, false},
    {{3.0, 0.0, 0.0}, 0.0, false},
    {{3.0, -2.0, 2.0}, 0.0, false},
}};

struct Sample {
    double value;
    double slope; // d/dtheta
};

Sample evaluate(const Factor& fac, double x, double y, double z)
{
    const double th = fac.k[0] * x + fac.k[1] * y + fac.k[2] * z + fac.phase;
    if (fac.cosine)
        return {std::cos(th), -std::sin(th)};
    return {std::sin(th), std::cos(th)};
}

} // namespace

double ManufacturedProblem::u(double x, double y, double z) const
{
    double p = 1.0;
    for (const auto& fac : kFactors)
        p *= evaluate(fac, x, y, z).value;
    return p;
}

double ManufacturedProblem::f(double x, double y, double z) const
{
    // lap(prod g) = sum_i lap(g_i) prod_{j!=i} g_j + 2 sum_{i<j} grad g_i . grad g_j prod_{l!=i,j} g_l
    // with grad g = k g' and lap g = -|k|^2 g.
    constexpr std::size_t n = kFactors.size();
    std::array<Sample, n> s;
    for (std::size_t i = 0; i < n; ++i)
        s[i] = evaluate(kFactors[i], x, y, z);

    auto product_except = [&](std::size_t a, std::size_t b) {
        double p = 1.0;
        for (std::size_t l = 0; l < n; ++l)
            if (l != a && l != b)
                p *= s[l].value;
        return p;
    };

    double lap = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& ki = kFactors[i].k;
        const double k2 = ki[0] * ki[0] + ki[1] * ki[1] + ki[2] * ki[2];
        lap += -k2 * s[i].value * product_except(i, i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& kj = kFactors[j].k;
            const double kk = ki[0] * kj[0] + ki[1] * kj[1] + ki[2] * kj[2];
            lap += 2.0 * kk * s[i].slope * s[j].slope * product_except(i, j);
        }
    }
    return -lap;
}

ManufacturedProblem manufactured_problem(int sx, int sy, int sz)
{
    if (sx < 1 || sy < 1 || sz < 1)
        throw InputError("manufactured_problem: domain multipliers must be positive integers");
    return {};
}

double l2_error(const LevelOperators& ops, const Field& uh, const ManufacturedProblem& problem)
{
    const Grid& grid = ops.grid;
    const Basis1D& basis = ops.dir[0].basis;
    const std::size_t n = basis.size();
    Field err = uh;
    for (std::size_t e = 0; e < grid.num_elements(); ++e) {
        const auto c = grid.element_coords(e);
        auto blk = err.element(e);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t i = 0; i < n; ++i) {
                    const double x = node_coordinate(grid, basis, 0, c[0], i);
                    const double y = node_coordinate(grid, basis, 1, c[1], j);
                    const double z = node_coordinate(grid, basis, 2, c[2], k);
                    blk[(k * n + j) * n + i] -= problem.u(x, y, z);
                }
    }
    remove_mean(ops, err);
    const Field m = mass_diagonal(ops);
    double s = 0.0;
    for (std::size_t i = 0; i < err.size(); ++i)
        s += m[i] * err[i] * err[i];
    return std::sqrt(s);
}

} // namespace dgmg::bench
