#pragma once

#include "dgmg/tensor_kernels.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace dgmg {

enum class BasisKind { GLL, GL };

enum class Side { Left, Right };

std::string_view to_string(BasisKind kind);
BasisKind parse_basis_kind(std::string_view text);

/// Lagrange basis of degree P on Gauss-Legendre(-Lobatto) points of [-1, 1].
struct Basis1D {
    BasisKind kind = BasisKind::GLL;
    int degree = 0;
    std::vector<double> nodes; ///< ascending, symmetric about 0
    std::vector<double> weights; ///< quadrature weights on the nodes
    DenseMatrix diff; ///< diff(i, j) = phi_j'(node_i)
    std::vector<double> barycentric;

    // Values and derivatives of every phi_j at xi = -1 and xi = +1.
    std::vector<double> left_value, right_value;
    std::vector<double> left_deriv, right_deriv;

    [[nodiscard]] std::size_t size() const { return nodes.size(); }

    /// phi_j(x) for all j.
    [[nodiscard]] std::vector<double> values_at(double x) const;
    /// phi_j'(x) for all j.
    [[nodiscard]] std::vector<double> derivatives_at(double x) const;
};

/// Builds the nodal basis; throws InputError for degree < 1.
Basis1D make_basis(BasisKind kind, int degree);

/// Legendre polynomial P_n(x) and its derivative.
struct LegendreValue {
    double value;
    double derivative;
};
LegendreValue legendre(int n, double x);

/// Matrix with entry (i, j) = phi_j^{from}(to_nodes[i]).
DenseMatrix interp_matrix(const Basis1D& from, std::span<const double> to_nodes);

/// Ascending distances of the nodes from the given element face, in reference
/// units (element width 2).
std::vector<double> node_distance_to_face(const Basis1D& basis, Side side);

} // namespace dgmg
