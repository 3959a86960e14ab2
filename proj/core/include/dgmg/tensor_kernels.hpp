#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dgmg {

/// Small dense row-major matrix. Values are immutable once shared.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix diagonal(std::span<const double> d);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    [[nodiscard]] std::span<const double> data() const { return a_; }
    [[nodiscard]] std::span<double> data() { return a_; }
    [[nodiscard]] std::span<const double> row(std::size_t i) const
    {
        return {a_.data() + i * cols_, cols_};
    }

    [[nodiscard]] DenseMatrix transposed() const;
    [[nodiscard]] std::vector<double> apply(std::span<const double> x) const;
    /// Largest absolute entry.
    [[nodiscard]] double max_abs() const;
    /// Frobenius norm.
    [[nodiscard]] double norm() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> a_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);

/// Generalized eigenpairs of a symmetric matrix and a positive diagonal mass,
/// normalized so that S^T M S = I and S^T L S = diag(values).
struct EigenPair1D {
    DenseMatrix vectors; ///< columns are eigenvectors
    std::vector<double> values; ///< ascending
};

/// Scratch buffers for kron3_apply; reuse across calls to avoid allocation.
struct Kron3Workspace {
    std::vector<double> t1;
    std::vector<double> t2;
    std::vector<double> stage; ///< left to callers chaining several applications
};

/// out = (az ⊗ ay ⊗ ax) v by sum factorization, v laid out as (nz, ny, nx) with x fastest.
void kron3_apply(const DenseMatrix& az, const DenseMatrix& ay, const DenseMatrix& ax,
                 std::span<const double> v, std::span<double> out, Kron3Workspace& ws);

std::vector<double> kron3_apply(const DenseMatrix& az, const DenseMatrix& ay, const DenseMatrix& ax,
                                std::span<const double> v);

/// Solves L S = M S Λ for symmetric L and positive diagonal M by cyclic Jacobi
/// on M^{-1/2} L M^{-1/2}.
EigenPair1D sym_generalized_eig(const DenseMatrix& stiffness, std::span<const double> mass);

/// Gaussian elimination with partial pivoting.
std::vector<double> dense_solve(const DenseMatrix& a, std::span<const double> b);

} // namespace dgmg
