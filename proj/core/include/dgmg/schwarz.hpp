#pragma once

#include "dgmg/basis1d.hpp"
#include "dgmg/dg_operator.hpp"
#include "dgmg/field.hpp"
#include "dgmg/tensor_kernels.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dgmg {

enum class OverlapMode { FixedNodes, Relative, MaxRelative };

/// How far an element-centered subdomain reaches into its face neighbors.
///
/// FixedNodes takes a node-layer count. Relative takes a width alpha * dx per
/// direction; MaxRelative takes min(alpha * max_j dx_j, dx). The floor is a
/// lower bound on the resolved layer count; it defaults to 1 for GL and 0 for GLL.
struct OverlapSpec {
    OverlapMode mode = OverlapMode::Relative;
    int nodes = 1;
    double alpha = 0.08;
    std::optional<int> floor;

    static OverlapSpec fixed_nodes(int n, std::optional<int> floor = std::nullopt);
    static OverlapSpec relative(double alpha, std::optional<int> floor = std::nullopt);
    static OverlapSpec max_relative(double alpha, std::optional<int> floor = std::nullopt);

    [[nodiscard]] int floor_for(BasisKind kind) const
    {
        return floor ? *floor : (kind == BasisKind::GL ? 1 : 0);
    }
    /// Throws InputError for n < 0 or alpha outside (0, 1].
    void validate() const;
};

/// Text form used by the CLI: "nodes:1", "rel:0.08", "max:0.08", optionally
/// followed by ",floor:N".
std::string to_string(const OverlapSpec& spec);
OverlapSpec parse_overlap(std::string_view text);

/// Resolved node layers per direction and side.
struct OverlapLayers {
    std::array<int, 3> left{};
    std::array<int, 3> right{};
};

/// Layers for one direction with element width `width` and largest width `max_width`.
int resolve_overlap_1d(const OverlapSpec& spec, const Basis1D& basis, double width, double max_width);
OverlapLayers resolve_overlap(const OverlapSpec& spec, const Basis1D& basis,
                              const std::array<double, 3>& widths);

/// Hat-shaped weight on a subdomain [-core - delta_left, core + delta_right].
/// 0 at the subdomain boundary, 1 on the non-overlapped core, quintic smoothstep
/// in between. Transition half-widths are clipped to `core`.
double hat_weight(double xi, double delta_left, double delta_right, double core = 1.0);

/// Quintic smoothstep 10t^3 - 15t^4 + 6t^5; q(t) + q(1 - t) = 1.
double smoothstep5(double t);

/// One direction of an element-centered subdomain.
struct SubdomainAxis {
    int left = 0; ///< node layers adopted from the left neighbor
    int right = 0;
    double delta_left = 0.0; ///< overlap widths in reference units
    double delta_right = 0.0;
    DenseMatrix stiffness; ///< R L R^T
    std::vector<double> mass; ///< R M R^T (diagonal)
    DenseMatrix vectors; ///< S with S^T M S = I
    DenseMatrix vectors_t;
    std::vector<double> lambda;
    std::vector<double> coords; ///< subdomain coordinate xi_H of each window node
    std::vector<double> weights; ///< hat weights at the window nodes
    /// Window node -> (element offset in {-1, 0, 1}, local node).
    std::vector<std::pair<int, int>> source;

    [[nodiscard]] std::size_t size() const { return mass.size(); }
};

/// Fast-diagonalization inverse of the restricted operator A_ss of one
/// element-centered subdomain. All subdomains of a level are congruent, so one
/// instance serves every element.
class SubdomainSolver {
public:
    std::array<SubdomainAxis, 3> axis;

    [[nodiscard]] std::size_t size() const { return axis[0].size() * axis[1].size() * axis[2].size(); }

    /// out = A_ss^{-1} r, window layout (z, y, x) with x fastest.
    void solve(std::span<const double> r, std::span<double> out, Kron3Workspace& ws) const;
    [[nodiscard]] std::vector<double> solve(std::span<const double> r) const;

    /// out = A_ss v
    [[nodiscard]] std::vector<double> apply_restricted(std::span<const double> v) const;

    /// Diagonal W_s = Wz ⊗ Wy ⊗ Wx as a window-sized vector.
    [[nodiscard]] std::vector<double> weight_block() const;

    std::vector<double> inv_eigen_sum; ///< 1 / (lx + ly + lz) over the eigenvalue grid
};

/// Restricts the directional operators to the subdomain window and builds the
/// eigen-decompositions. Throws SolveError if the restricted system is singular.
SubdomainSolver build_subdomain_solver(const LevelOperators& ops, const OverlapLayers& layers);

/// Weighted additive Schwarz smoother on element-centered subdomains.
class SchwarzSmoother {
public:
    SchwarzSmoother() = default;
    SchwarzSmoother(const LevelOperators& ops, const OverlapLayers& layers);

    [[nodiscard]] const SubdomainSolver& solver() const { return solver_; }
    [[nodiscard]] const OverlapLayers& layers() const { return layers_; }

    /// Copies the subdomain window of element e out of a global field.
    void gather(const Grid& grid, const Field& v, std::size_t e, std::span<double> window) const;

    /// sum_s R_s^T W_s A_ss^{-1} R_s r
    [[nodiscard]] Field correction(const Grid& grid, const Field& r) const;
    /// sum_s R_s^T W_s R_s v; the identity when the weights form a partition of unity.
    [[nodiscard]] Field weighted_sum(const Grid& grid, const Field& v) const;

    /// `steps` iterations of u <- u + sum_s R_s^T W_s A_ss^{-1} R_s (f - A u).
    void smooth(const LevelOperators& ops, Field& u, const Field& f, int steps) const;

private:
    struct Contribution {
        int offset; ///< center of the contributing subdomain relative to the target element
        int window; ///< position in that subdomain's window
    };

    Field scatter(const Grid& grid, int degree, std::span<const double> windows) const;
    template <class Local>
    Field accumulate(const Grid& grid, const Field& v, Local&& local) const;

    SubdomainSolver solver_;
    OverlapLayers layers_;
    int degree_ = 0;
    std::array<std::vector<std::vector<Contribution>>, 3> scatter_;
};

} // namespace dgmg
