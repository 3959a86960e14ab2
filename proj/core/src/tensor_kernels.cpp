#include "dgmg/tensor_kernels.hpp"

#include "dgmg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

namespace dgmg {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), a_(rows * cols, fill)
{
    if (rows == 0 || cols == 0)
        throw DimensionError("DenseMatrix: rows and cols must be >= 1");
}

DenseMatrix DenseMatrix::identity(std::size_t n)
{
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> d)
{
    DenseMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = d[i];
    return m;
}

DenseMatrix DenseMatrix::transposed() const
{
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

std::vector<double> DenseMatrix::apply(std::span<const double> x) const
{
    if (x.size() != cols_)
        throw DimensionError("DenseMatrix::apply: vector length " + std::to_string(x.size())
                             + " != cols " + std::to_string(cols_));
    std::vector<double> y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const auto r = row(i);
        y[i] = std::inner_product(r.begin(), r.end(), x.begin(), 0.0);
    }
    return y;
}

double DenseMatrix::max_abs() const
{
    double m = 0.0;
    for (double v : a_)
        m = std::max(m, std::abs(v));
    return m;
}

double DenseMatrix::norm() const
{
    double s = 0.0;
    for (double v : a_)
        s += v * v;
    return std::sqrt(s);
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b)
{
    if (a.cols() != b.rows())
        throw DimensionError("DenseMatrix product: inner dimensions differ");
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

namespace {

template <class Op>
DenseMatrix elementwise(const DenseMatrix& a, const DenseMatrix& b, Op op)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("DenseMatrix: elementwise shapes differ");
    DenseMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = op(a(i, j), b(i, j));
    return c;
}

} // namespace

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b)
{
    return elementwise(a, b, std::plus<>{});
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b)
{
    return elementwise(a, b, std::minus<>{});
}

void kron3_apply(const DenseMatrix& az, const DenseMatrix& ay, const DenseMatrix& ax,
                 std::span<const double> v, std::span<double> out, Kron3Workspace& ws)
{
    const std::size_t nxi = ax.cols(), nyi = ay.cols(), nzi = az.cols();
    const std::size_t nxo = ax.rows(), nyo = ay.rows(), nzo = az.rows();
    if (v.size() != nxi * nyi * nzi)
        throw DimensionError("kron3_apply: input block has " + std::to_string(v.size())
                             + " entries, matrices expect " + std::to_string(nxi * nyi * nzi));
    if (out.size() != nxo * nyo * nzo)
        throw DimensionError("kron3_apply: output block has wrong size");

    // x: (nzi, nyi, nxi) -> (nzi, nyi, nxo)
    ws.t1.resize(nzi * nyi * nxo);
    for (std::size_t kj = 0; kj < nzi * nyi; ++kj) {
        const double* in = v.data() + kj * nxi;
        double* o = ws.t1.data() + kj * nxo;
        for (std::size_t i = 0; i < nxo; ++i) {
            const double* a = ax.data().data() + i * nxi;
            double s = 0.0;
            for (std::size_t q = 0; q < nxi; ++q)
                s += a[q] * in[q];
            o[i] = s;
        }
    }

    // y: (nzi, nyi, nxo) -> (nzi, nyo, nxo)
    ws.t2.assign(nzi * nyo * nxo, 0.0);
    for (std::size_t k = 0; k < nzi; ++k)
        for (std::size_t j = 0; j < nyo; ++j) {
            double* o = ws.t2.data() + (k * nyo + j) * nxo;
            for (std::size_t q = 0; q < nyi; ++q) {
                const double a = ay(j, q);
                const double* in = ws.t1.data() + (k * nyi + q) * nxo;
                for (std::size_t i = 0; i < nxo; ++i)
                    o[i] += a * in[i];
            }
        }

    // z: (nzi, nyo, nxo) -> (nzo, nyo, nxo)
    const std::size_t plane = nyo * nxo;
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t k = 0; k < nzo; ++k) {
        double* o = out.data() + k * plane;
        for (std::size_t q = 0; q < nzi; ++q) {
            const double a = az(k, q);
            const double* in = ws.t2.data() + q * plane;
            for (std::size_t p = 0; p < plane; ++p)
                o[p] += a * in[p];
        }
    }
}

std::vector<double> kron3_apply(const DenseMatrix& az, const DenseMatrix& ay, const DenseMatrix& ax,
                                std::span<const double> v)
{
    std::vector<double> out(az.rows() * ay.rows() * ax.rows());
    Kron3Workspace ws;
    kron3_apply(az, ay, ax, v, out, ws);
    return out;
}

namespace {

// Cyclic Jacobi for a symmetric matrix; a is overwritten, v receives eigenvectors
// as columns, d the (unsorted) eigenvalues.
void jacobi_eigen(DenseMatrix& a, DenseMatrix& v, std::vector<double>& d)
{
    const std::size_t n = a.rows();
    v = DenseMatrix::identity(n);
    d.resize(n);
    std::vector<double> b(n), z(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        b[i] = d[i] = a(i, i);

    const double scale = std::max(a.max_abs(), std::numeric_limits<double>::min());
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                off += std::abs(a(p, q));
        if (off <= 1e-300 || off < 1e-17 * scale)
            return;

        const double thresh = sweep < 3 ? 0.2 * off / static_cast<double>(n * n) : 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double g = 100.0 * std::abs(a(p, q));
                if (sweep > 3 && std::abs(d[p]) + g == std::abs(d[p])
                    && std::abs(d[q]) + g == std::abs(d[q])) {
                    a(p, q) = 0.0;
                    continue;
                }
                if (std::abs(a(p, q)) <= thresh)
                    continue;
                const double h = d[q] - d[p];
                double t;
                if (std::abs(h) + g == std::abs(h)) {
                    t = a(p, q) / h;
                } else {
                    const double theta = 0.5 * h / a(p, q);
                    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                    if (theta < 0.0)
                        t = -t;
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                const double hh = t * a(p, q);
                z[p] -= hh;
                z[q] += hh;
                d[p] -= hh;
                d[q] += hh;
                a(p, q) = 0.0;
                auto rotate = [&](DenseMatrix& m, std::size_t i, std::size_t j, std::size_t k,
                                  std::size_t l) {
                    const double gg = m(i, j);
                    const double hv = m(k, l);
                    m(i, j) = gg - s * (hv + gg * tau);
                    m(k, l) = hv + s * (gg - hv * tau);
                };
                for (std::size_t j = 0; j < p; ++j)
                    rotate(a, j, p, j, q);
                for (std::size_t j = p + 1; j < q; ++j)
                    rotate(a, p, j, j, q);
                for (std::size_t j = q + 1; j < n; ++j)
                    rotate(a, p, j, q, j);
                for (std::size_t j = 0; j < n; ++j)
                    rotate(v, j, p, j, q);
            }
        }
        for (std::size_t p = 0; p < n; ++p) {
            b[p] += z[p];
            d[p] = b[p];
            z[p] = 0.0;
        }
    }
    throw SolveError("sym_generalized_eig: Jacobi iteration did not converge in 100 sweeps");
}

} // namespace

EigenPair1D sym_generalized_eig(const DenseMatrix& stiffness, std::span<const double> mass)
{
    const std::size_t n = stiffness.rows();
    if (stiffness.cols() != n)
        throw DimensionError("sym_generalized_eig: stiffness must be square");
    if (mass.size() != n)
        throw DimensionError("sym_generalized_eig: mass length differs from matrix size");
    for (double m : mass)
        if (!(m > 0.0))
            throw InputError("sym_generalized_eig: mass entries must be strictly positive");

    const double scale = stiffness.max_abs();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(stiffness(i, j) - stiffness(j, i)) > 1e-12 * scale)
                throw InputError("sym_generalized_eig: stiffness is not symmetric");

    std::vector<double> inv_sqrt_m(n);
    for (std::size_t i = 0; i < n; ++i)
        inv_sqrt_m[i] = 1.0 / std::sqrt(mass[i]);

    DenseMatrix reduced(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            reduced(i, j) = 0.5 * (stiffness(i, j) + stiffness(j, i)) * inv_sqrt_m[i] * inv_sqrt_m[j];

    DenseMatrix v;
    std::vector<double> d;
    jacobi_eigen(reduced, v, d);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return d[a] < d[b]; });

    EigenPair1D result{DenseMatrix(n, n), std::vector<double>(n)};
    for (std::size_t c = 0; c < n; ++c) {
        const std::size_t src = order[c];
        result.values[c] = d[src];
        for (std::size_t i = 0; i < n; ++i)
            result.vectors(i, c) = v(i, src) * inv_sqrt_m[i];
    }
    return result;
}

std::vector<double> dense_solve(const DenseMatrix& a, std::span<const double> b)
{
    const std::size_t n = a.rows();
    if (a.cols() != n)
        throw DimensionError("dense_solve: matrix must be square");
    if (b.size() != n)
        throw DimensionError("dense_solve: right side length differs from matrix size");

    DenseMatrix lu = a;
    std::vector<double> x(b.begin(), b.end());
    const double tiny = 1e-14 * static_cast<double>(n) * std::max(a.max_abs(), 1e-300);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > std::abs(lu(piv, k)))
                piv = i;
        if (std::abs(lu(piv, k)) <= tiny)
            throw SolveError("dense_solve: matrix is singular to working precision");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(lu(k, j), lu(piv, j));
            std::swap(x[k], x[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu(i, k) / lu(k, k);
            if (f == 0.0)
                continue;
            for (std::size_t j = k; j < n; ++j)
                lu(i, j) -= f * lu(k, j);
            x[i] -= f * x[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        double s = x[k];
        for (std::size_t j = k + 1; j < n; ++j)
            s -= lu(k, j) * x[j];
        x[k] = s / lu(k, k);
    }
    return x;
}

} // namespace dgmg
