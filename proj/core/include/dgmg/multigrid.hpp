#pragma once

#include "dgmg/basis1d.hpp"
#include "dgmg/dg_operator.hpp"
#include "dgmg/field.hpp"
#include "dgmg/schwarz.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace dgmg {

/// Smoothing counts per level: (pre, post) * growth^(L - l).
struct CycleSchedule {
    int pre = 1;
    int post = 1;
    int growth = 1; ///< 1 gives a fixed V-cycle

    void validate() const;
    [[nodiscard]] std::pair<int, int> counts(int level, int top) const;
};

/// Penalty used on coarse levels.
enum class CoarsePenalty {
    Rediscretized, ///< factor * P_l (P_l + 1) / dx, each level on its own
    Inherited, ///< the top-level penalty on every level (matches I^T A_l I)
};

std::string_view to_string(CoarsePenalty p);
/// "rediscretized" or "inherited"; InputError otherwise.
CoarsePenalty parse_coarse_penalty(std::string_view text);

struct HierarchyConfig {
    int degree = 4; ///< top-level degree, a power of two >= 2
    Grid grid;
    BasisKind basis = BasisKind::GLL;
    OverlapSpec overlap;
    double penalty_factor = 2.0;
    CycleSchedule schedule;
    CoarsePenalty coarse_penalty = CoarsePenalty::Inherited;
};

/// One polynomial level with degree P_l = 2^l.
struct Level {
    int degree = 1;
    Basis1D basis;
    LevelOperators ops;
    OverlapLayers layers;
    SchwarzSmoother smoother; ///< unused on level 0
    DenseMatrix interp; ///< degree P_{l-1} nodes -> degree P_l nodes (l >= 1)
    DenseMatrix interp_t;
    int pre = 0;
    int post = 0;
};

/// Levels l = 0..L, one per degree P_l = 2^l; see CoarsePenalty for the face terms.
/// Immutable after construction; solves keep their scratch state locally.
class LevelHierarchy {
public:
    explicit LevelHierarchy(const HierarchyConfig& config);

    [[nodiscard]] int top() const { return static_cast<int>(levels_.size()) - 1; }
    [[nodiscard]] const Level& level(int l) const { return levels_.at(static_cast<std::size_t>(l)); }
    [[nodiscard]] const Level& finest() const { return levels_.back(); }
    [[nodiscard]] const HierarchyConfig& config() const { return config_; }
    [[nodiscard]] const Grid& grid() const { return config_.grid; }

private:
    HierarchyConfig config_;
    std::vector<Level> levels_;
};

/// Throws InputError unless P is a power of two >= 2.
LevelHierarchy build_hierarchy(const HierarchyConfig& config);

/// Tensorized interpolation of every element block.
Field transfer_up(const DenseMatrix& interp, const Grid& grid, const Field& coarse);
/// Tensorized restriction with the transposed interpolation.
Field transfer_down(const DenseMatrix& interp_t, const Grid& grid, const Field& fine);

/// Pseudo-inverse solve on the degree-1 level: the right side is projected off the
/// constant null space and solved by CG; returns the zero-mean solution.
Field coarse_solve(const LevelOperators& ops, const Field& f0);

/// One V-cycle starting from u.
Field v_cycle(const LevelHierarchy& h, const Field& u, const Field& f);

/// Mass-weighted mean of a field.
double mass_weighted_mean(const LevelOperators& ops, const Field& u);
/// Subtracts the mass-weighted mean.
void remove_mean(const LevelOperators& ops, Field& u);

} // namespace dgmg
