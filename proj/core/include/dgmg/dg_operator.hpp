#pragma once

#include "dgmg/basis1d.hpp"
#include "dgmg/field.hpp"
#include "dgmg/tensor_kernels.hpp"

#include <array>
#include <functional>

namespace dgmg {

/// Stability threshold P(P+1)/width of the interior penalty.
double penalty_min(int degree, double width);

/// 1D interior-penalty operator for one direction of a periodic grid.
///
/// The global stiffness is block tridiagonal with periodic wraparound: block row e
/// holds `lower` at column e-1, `diag` at e and `upper` at e+1, `upper == lower^T`.
struct DirectionalOperator {
    Basis1D basis;
    double width = 0.0;
    int num_elements = 0;
    double penalty = 0.0;
    std::vector<double> mass; ///< diagonal mass of one element
    DenseMatrix lower, diag, upper;

    [[nodiscard]] std::size_t nodes_per_element() const { return basis.size(); }
    [[nodiscard]] std::size_t global_size() const { return nodes_per_element() * num_elements; }

    /// Entry of the global periodic stiffness.
    [[nodiscard]] double stiffness_entry(std::size_t row, std::size_t col) const;
    /// Entry of the global diagonal mass.
    [[nodiscard]] double mass_entry(std::size_t i) const { return mass[i % nodes_per_element()]; }

    /// Dense global stiffness; intended for tests and small problems.
    [[nodiscard]] DenseMatrix dense_stiffness() const;
};

/// Assembles the symmetric interior-penalty stiffness and lumped mass in one direction.
/// Throws InputError when penalty <= 0.
DirectionalOperator assemble_directional(const Basis1D& basis, double width, int num_elements,
                                         double penalty);

/// The three directional factors of A = Mz⊗My⊗Lx + Mz⊗Ly⊗Mx + Lz⊗My⊗Mx on one grid.
struct LevelOperators {
    Grid grid;
    std::array<DirectionalOperator, 3> dir;

    [[nodiscard]] int degree() const { return dir[0].basis.degree; }

    /// Builds all three directions with penalty = factor * penalty_min per direction.
    static LevelOperators build(const Grid& grid, const Basis1D& basis, double penalty_factor);
    /// Same with the threshold evaluated at `penalty_degree` instead of the basis degree.
    static LevelOperators build(const Grid& grid, const Basis1D& basis, double penalty_factor,
                                int penalty_degree);
};

/// out = A u, matrix-free with O(P^4) work per element.
void apply_A(const LevelOperators& ops, const Field& u, Field& out);
Field apply_A(const LevelOperators& ops, const Field& u);

/// Load vector f^e_ijk = w_i w_j w_k (dx dy dz / 8) f(x^e_ijk).
Field assemble_rhs(const Grid& grid, const Basis1D& basis,
                   const std::function<double(double, double, double)>& f);

/// Physical coordinate of node i of element e along direction dir.
double node_coordinate(const Grid& grid, const Basis1D& basis, int dir, int element, std::size_t node);

/// f - A u
Field residual(const LevelOperators& ops, const Field& u, const Field& f);

/// Diagonal of the global mass M_z ⊗ M_y ⊗ M_x as a field.
Field mass_diagonal(const LevelOperators& ops);

} // namespace dgmg
