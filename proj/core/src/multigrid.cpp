#include "dgmg/multigrid.hpp"

#include "dgmg/errors.hpp"
#include "dgmg/krylov.hpp"
#include "dgmg/parallel.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace dgmg {

std::string_view to_string(CoarsePenalty p)
{
    return p == CoarsePenalty::Inherited ? "inherited" : "rediscretized";
}

CoarsePenalty parse_coarse_penalty(std::string_view text)
{
    if (text == "inherited")
        return CoarsePenalty::Inherited;
    if (text == "rediscretized")
        return CoarsePenalty::Rediscretized;
    throw InputError("unknown coarse penalty '" + std::string(text) + "' (inherited, rediscretized)");
}

void CycleSchedule::validate() const
{
    if (pre < 0 || post < 0 || pre + post < 1)
        throw InputError("CycleSchedule: need pre, post >= 0 and pre + post >= 1");
    if (growth < 1)
        throw InputError("CycleSchedule: growth factor must be >= 1");
}

std::pair<int, int> CycleSchedule::counts(int level, int top) const
{
    int factor = 1;
    for (int l = level; l < top; ++l)
        factor *= growth;
    return {pre * factor, post * factor};
}

LevelHierarchy::LevelHierarchy(const HierarchyConfig& config)
    : config_(config)
{
    const int p = config.degree;
    if (p < 2 || !std::has_single_bit(static_cast<unsigned>(p)))
        throw InputError("build_hierarchy: degree must be a power of two >= 2, got " + std::to_string(p));
    config.schedule.validate();
    config.overlap.validate();

    const int top = std::countr_zero(static_cast<unsigned>(p));
    levels_.resize(static_cast<std::size_t>(top) + 1);
    for (int l = 0; l <= top; ++l) {
        Level& lev = levels_[l];
        lev.degree = 1 << l;
        lev.basis = make_basis(config.basis, lev.degree);
        const int penalty_degree = config.coarse_penalty == CoarsePenalty::Inherited ? p : lev.degree;
        lev.ops = LevelOperators::build(config.grid, lev.basis, config.penalty_factor, penalty_degree);
        if (l == 0)
            continue;
        lev.layers = resolve_overlap(config.overlap, lev.basis, config.grid.spacings());
        lev.smoother = SchwarzSmoother(lev.ops, lev.layers);
        lev.interp = interp_matrix(levels_[l - 1].basis, lev.basis.nodes);
        lev.interp_t = lev.interp.transposed();
        std::tie(lev.pre, lev.post) = config.schedule.counts(l, top);
    }
}

LevelHierarchy build_hierarchy(const HierarchyConfig& config) { return LevelHierarchy(config); }

namespace {

Field transfer(const DenseMatrix& m, const Grid& grid, const Field& in, int out_degree)
{
    if (in.nodes_per_dir() != m.cols() || static_cast<std::size_t>(out_degree) + 1 != m.rows())
        throw DimensionError("transfer: field degree does not match the transfer matrix");
    if (in.num_elements() != grid.num_elements())
        throw DimensionError("transfer: field does not match the grid");
    Field out(grid, out_degree);
    parallel_for(grid.num_elements(), [&](std::size_t e) {
        thread_local Kron3Workspace ws;
        kron3_apply(m, m, m, in.element(e), out.element(e), ws);
    });
    return out;
}

} // namespace

Field transfer_up(const DenseMatrix& interp, const Grid& grid, const Field& coarse)
{
    return transfer(interp, grid, coarse, static_cast<int>(interp.rows()) - 1);
}

Field transfer_down(const DenseMatrix& interp_t, const Grid& grid, const Field& fine)
{
    return transfer(interp_t, grid, fine, static_cast<int>(interp_t.rows()) - 1);
}

double mass_weighted_mean(const LevelOperators& ops, const Field& u)
{
    const Field m = mass_diagonal(ops);
    return dot(m, u) / ops.grid.volume();
}

void remove_mean(const LevelOperators& ops, Field& u)
{
    const double mean = mass_weighted_mean(ops, u);
    for (double& v : u.values())
        v -= mean;
}

Field coarse_solve(const LevelOperators& ops, const Field& f0)
{
    const LinearOperator apply = [&ops](const Field& in, Field& out) { apply_A(ops, in, out); };
    const int cap = 10 * static_cast<int>(f0.size());
    Field u = cg_projected(apply, f0, 1e-10, cap);
    remove_mean(ops, u);
    return u;
}

Field v_cycle(const LevelHierarchy& h, const Field& u, const Field& f)
{
    const int top = h.top();
    require_compatible(u, f, "v_cycle");
    if (u.degree() != h.finest().degree)
        throw DimensionError("v_cycle: fields must have the top-level degree");

    std::vector<Field> us(top + 1), fs(top + 1);
    us[top] = u;
    fs[top] = f;
    for (int l = top; l >= 1; --l) {
        const Level& lev = h.level(l);
        if (l < top)
            us[l] = Field(h.grid(), lev.degree);
        lev.smoother.smooth(lev.ops, us[l], fs[l], lev.pre);
        fs[l - 1] = transfer_down(lev.interp_t, h.grid(), residual(lev.ops, us[l], fs[l]));
    }
    us[0] = coarse_solve(h.level(0).ops, fs[0]);
    for (int l = 1; l <= top; ++l) {
        const Level& lev = h.level(l);
        us[l] += transfer_up(lev.interp, h.grid(), us[l - 1]);
        lev.smoother.smooth(lev.ops, us[l], fs[l], lev.post);
    }
    return std::move(us[top]);
}

} // namespace dgmg
