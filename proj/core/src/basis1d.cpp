#include "dgmg/basis1d.hpp"

#include "dgmg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace dgmg {

std::string_view to_string(BasisKind kind)
{
    return kind == BasisKind::GLL ? "GLL" : "GL";
}

BasisKind parse_basis_kind(std::string_view text)
{
    if (text == "GLL" || text == "gll")
        return BasisKind::GLL;
    if (text == "GL" || text == "gl")
        return BasisKind::GL;
    throw InputError("unknown basis kind '" + std::string(text) + "' (expected GLL or GL)");
}

LegendreValue legendre(int n, double x)
{
    if (n == 0)
        return {1.0, 0.0};
    double p0 = 1.0, p1 = x;
    double d0 = 0.0, d1 = 1.0;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        const double d2 = d0 + (2.0 * k - 1.0) * p1;
        p0 = p1;
        p1 = p2;
        d0 = d1;
        d1 = d2;
    }
    return {p1, d1};
}

namespace {

constexpr int kNewtonIterations = 100;

// Roots of P_n by Newton iteration from Chebyshev guesses.
std::vector<double> gauss_nodes(int n)
{
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) {
        double xi = -std::cos((2.0 * i + 1.0) * std::numbers::pi / (2.0 * n));
        for (int it = 0; it < kNewtonIterations; ++it) {
            const auto [p, dp] = legendre(n, xi);
            const double dx = p / dp;
            xi -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        x[i] = xi;
    }
    return x;
}

// Roots of (1 - x^2) P_p'(x).
std::vector<double> lobatto_nodes(int p)
{
    std::vector<double> x(p + 1);
    x.front() = -1.0;
    x.back() = 1.0;
    for (int i = 1; i < p; ++i) {
        double xi = -std::cos(std::numbers::pi * i / p);
        for (int it = 0; it < kNewtonIterations; ++it) {
            const auto [v, dv] = legendre(p, xi);
            const double d2 = (2.0 * xi * dv - p * (p + 1.0) * v) / (1.0 - xi * xi);
            const double dx = dv / d2;
            xi -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        x[i] = xi;
    }
    return x;
}

void symmetrize(std::vector<double>& x)
{
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n / 2; ++i) {
        const double a = 0.5 * (x[n - 1 - i] - x[i]);
        x[i] = -a;
        x[n - 1 - i] = a;
    }
    if (n % 2 == 1)
        x[n / 2] = 0.0;
}

} // namespace

std::vector<double> Basis1D::values_at(double x) const
{
    const std::size_t n = size();
    std::vector<double> phi(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        if (x == nodes[j]) {
            phi[j] = 1.0;
            return phi;
        }
    double denom = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        phi[j] = barycentric[j] / (x - nodes[j]);
        denom += phi[j];
    }
    for (double& v : phi)
        v /= denom;
    return phi;
}

std::vector<double> Basis1D::derivatives_at(double x) const
{
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i)
        if (x == nodes[i]) {
            const auto r = diff.row(i);
            return {r.begin(), r.end()};
        }
    // phi_j'(x) = phi_j(x) * sum_{k != j} 1 / (x - x_k)
    const auto phi = values_at(x);
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        total += 1.0 / (x - nodes[k]);
    std::vector<double> d(n);
    for (std::size_t j = 0; j < n; ++j)
        d[j] = phi[j] * (total - 1.0 / (x - nodes[j]));
    return d;
}

Basis1D make_basis(BasisKind kind, int degree)
{
    if (degree < 1)
        throw InputError("make_basis: degree must be >= 1, got " + std::to_string(degree));

    Basis1D b;
    b.kind = kind;
    b.degree = degree;
    const int n = degree + 1;

    if (kind == BasisKind::GLL) {
        b.nodes = lobatto_nodes(degree);
        symmetrize(b.nodes);
        b.weights.resize(n);
        for (int i = 0; i < n; ++i) {
            const double p = legendre(degree, b.nodes[i]).value;
            b.weights[i] = 2.0 / (degree * (degree + 1.0) * p * p);
        }
    } else {
        b.nodes = gauss_nodes(n);
        symmetrize(b.nodes);
        b.weights.resize(n);
        for (int i = 0; i < n; ++i) {
            const double x = b.nodes[i];
            const double dp = legendre(n, x).derivative;
            b.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }

    b.barycentric.assign(n, 1.0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (k != j)
                b.barycentric[j] /= (b.nodes[j] - b.nodes[k]);

    b.diff = DenseMatrix(n, n);
    for (int i = 0; i < n; ++i) {
        double diag = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j)
                continue;
            const double d = (b.barycentric[j] / b.barycentric[i]) / (b.nodes[i] - b.nodes[j]);
            b.diff(i, j) = d;
            diag -= d;
        }
        b.diff(i, i) = diag;
    }

    b.left_value = b.values_at(-1.0);
    b.right_value = b.values_at(1.0);
    b.left_deriv = b.derivatives_at(-1.0);
    b.right_deriv = b.derivatives_at(1.0);
    return b;
}

DenseMatrix interp_matrix(const Basis1D& from, std::span<const double> to_nodes)
{
    if (to_nodes.empty())
        throw DimensionError("interp_matrix: no target nodes");
    DenseMatrix m(to_nodes.size(), from.size());
    for (std::size_t i = 0; i < to_nodes.size(); ++i) {
        const double x = to_nodes[i];
        if (x < -1.0 - 1e-14 || x > 1.0 + 1e-14)
            throw DomainError("interp_matrix: target node outside [-1, 1]");
        const auto phi = from.values_at(x);
        std::copy(phi.begin(), phi.end(), &m(i, 0));
    }
    return m;
}

std::vector<double> node_distance_to_face(const Basis1D& basis, Side side)
{
    std::vector<double> d(basis.size());
    if (side == Side::Right)
        std::transform(basis.nodes.rbegin(), basis.nodes.rend(), d.begin(),
                       [](double x) { return 1.0 - x; });
    else
        std::transform(basis.nodes.begin(), basis.nodes.end(), d.begin(),
                       [](double x) { return x + 1.0; });
    return d;
}

} // namespace dgmg
