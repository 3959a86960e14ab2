#include "dgmg_tools/experiment.hpp"

#include <dgmg/errors.hpp>
#include <dgmg/parallel.hpp>

#include <bit>
#include <chrono>
#include <cmath>
#include <numbers>
#include <string>

namespace dgmg::bench {

std::string_view to_string(SolverKind s) { return s == SolverKind::MG ? "MG" : "MG-CG"; }

SolverKind parse_solver(std::string_view text)
{
    if (text == "MG" || text == "mg")
        return SolverKind::MG;
    if (text == "MG-CG" || text == "mg-cg" || text == "mgcg")
        return SolverKind::MGCG;
    throw InputError("unknown solver '" + std::string(text) + "' (MG or MG-CG)");
}

void ExperimentConfig::validate() const
{
    if (degree < 2 || !std::has_single_bit(static_cast<unsigned>(degree)))
        throw InputError("config: degree must be a power of two >= 2");
    for (int d = 0; d < 3; ++d) {
        if (counts[d] < 3)
            throw InputError("config: at least 3 elements per direction are required");
        if (multipliers[d] < 1)
            throw InputError("config: domain multipliers must be >= 1");
    }
    if (!(penalty_factor > 0.0))
        throw InputError("config: penalty factor must be positive");
    if (!(target_reduction > 1.0))
        throw InputError("config: target reduction must exceed 1");
    if (max_cycles < 1)
        throw InputError("config: max cycles must be >= 1");
    if (threads < 1)
        throw InputError("config: thread count must be >= 1");
    overlap.validate();
    schedule.validate();
}

Grid ExperimentConfig::grid() const
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return Grid({two_pi * multipliers[0], two_pi * multipliers[1], two_pi * multipliers[2]}, counts);
}

HierarchyConfig ExperimentConfig::hierarchy() const
{
    HierarchyConfig h;
    h.degree = degree;
    h.grid = grid();
    h.basis = basis;
    h.overlap = overlap;
    h.penalty_factor = penalty_factor;
    h.coarse_penalty = coarse_penalty;
    h.schedule = schedule;
    return h;
}

std::optional<int> cycles_for_ten_orders(double rho)
{
    if (!(rho > 0.0 && rho < 1.0))
        return std::nullopt;
    return static_cast<int>(std::ceil(-10.0 / std::log10(rho)));
}

double average_rate(const std::vector<double>& history)
{
    if (history.size() < 2 || history.front() == 0.0)
        return 0.0;
    const double n = static_cast<double>(history.size() - 1);
    return std::pow(history.back() / history.front(), 1.0 / n);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

double random_guess(std::uint64_t seed, std::uint64_t element, std::uint64_t node)
{
    const std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) ^ element) ^ node);
    const double unit = static_cast<double>(h >> 11) * 0x1.0p-53;
    return 2.0 * unit - 1.0;
}

Field random_field(const Grid& grid, int degree, std::uint64_t seed)
{
    Field u(grid, degree);
    for (std::size_t e = 0; e < u.num_elements(); ++e) {
        auto blk = u.element(e);
        for (std::size_t i = 0; i < blk.size(); ++i)
            blk[i] = random_guess(seed, e, i);
    }
    return u;
}

RunMetrics run(const ExperimentConfig& config)
{
    using clock = std::chrono::steady_clock;
    config.validate();
    set_thread_count(config.threads);

    const auto t_setup = clock::now();
    const LevelHierarchy h(config.hierarchy());
    const Grid& grid = h.grid();
    const LevelOperators& ops = h.finest().ops;
    const auto problem = manufactured_problem(config.multipliers[0], config.multipliers[1], config.multipliers[2]);

    Field f = assemble_rhs(grid, h.finest().basis, [&](double x, double y, double z) { return problem.f(x, y, z); });
    // Quadrature leaves a round-off sized component along the null space; drop it so
    // the singular system stays consistent.
    const double fmean = [&] {
        double s = 0.0;
        for (double v : f.values())
            s += v;
        return s / static_cast<double>(f.size());
    }();
    for (double& v : f.values())
        v -= fmean;

    const Field u0 = random_field(grid, config.degree, config.seed);

    RunMetrics m;
    m.dof = f.size();
    m.setup_seconds = std::chrono::duration<double>(clock::now() - t_setup).count();

    const IterationControl control{1.0 / config.target_reduction, config.max_cycles, 1e3};
    const auto t0 = clock::now();
    SolveResult res = config.solver == SolverKind::MG ? mg_solve(h, f, u0, control)
                                                       : mgcg_solve(h, f, u0, control);
    const double elapsed = std::chrono::duration<double>(clock::now() - t0).count();

    m.history = std::move(res.history);
    m.cycles = res.iterations;
    m.converged = res.converged;
    m.diverged = res.diverged;
    m.rho = average_rate(m.history);
    m.lg_rho = m.rho > 0.0 ? std::log10(m.rho) : -std::numeric_limits<double>::infinity();
    m.n10 = m.cycles == 0 ? std::optional<int>(0) : cycles_for_ten_orders(m.rho);
    m.t_cycle = m.cycles > 0 ? elapsed / m.cycles : 0.0;
    if (m.rho > 0.0 && m.rho < 1.0)
        m.tau10 = -10.0 * m.t_cycle / m.lg_rho / static_cast<double>(m.dof);
    m.l2_error = l2_error(ops, res.solution, problem);
    return m;
}

std::vector<ExperimentConfig> preset_table1(const std::vector<int>& rows, const std::vector<int>& degrees,
                                            std::optional<int> elements)
{
    std::vector<ExperimentConfig> out;
    for (int row : rows) {
        if (row < 1 || row > 14)
            throw InputError("preset_table1: unknown row " + std::to_string(row) + " (1..14)");
        ExperimentConfig c;
        c.basis = row <= 6 ? BasisKind::GLL : BasisKind::GL;
        c.solver = row % 2 == 1 ? SolverKind::MG : SolverKind::MGCG;
        const int group = ((row - 1) % 6) / 2; // 0: one node, 1: 0.08, 2: 0.5
        if (row >= 13)
            c.overlap = OverlapSpec::relative(0.09, 1);
        else if (group == 0)
            c.overlap = OverlapSpec::fixed_nodes(1);
        else
            c.overlap = OverlapSpec::relative(group == 1 ? 0.08 : 0.5, c.basis == BasisKind::GL ? std::optional<int>(0) : std::nullopt);
        for (int p : degrees) {
            ExperimentConfig r = c;
            r.degree = p;
            const int ne = elements.value_or(p <= 8 ? 8 : 4);
            r.counts = {ne, ne, ne};
            r.name = "table1-row" + std::to_string(row) + "-P" + std::to_string(p);
            out.push_back(r);
        }
    }
    return out;
}

std::string_view to_string(AnisoCase c)
{
    switch (c) {
    case AnisoCase::RelFix:
        return "rel-fix";
    case AnisoCase::RelVar:
        return "rel-var";
    case AnisoCase::MaxVar:
        return "max-var";
    }
    return "";
}

AnisoCase parse_aniso_case(std::string_view text)
{
    if (text == "rel-fix")
        return AnisoCase::RelFix;
    if (text == "rel-var")
        return AnisoCase::RelVar;
    if (text == "max-var")
        return AnisoCase::MaxVar;
    throw InputError("unknown anisotropy case '" + std::string(text) + "' (rel-fix, rel-var, max-var)");
}

std::vector<ExperimentConfig> preset_anisotropic(const std::vector<int>& aspect_ratios,
                                                 const std::vector<AnisoCase>& cases, int degree, int elements)
{
    std::vector<ExperimentConfig> out;
    for (AnisoCase c : cases)
        for (int ar : aspect_ratios) {
            if (ar < 1)
                throw InputError("preset_anisotropic: aspect ratio must be >= 1");
            ExperimentConfig r;
            r.degree = degree;
            r.counts = {elements, elements, elements};
            r.multipliers = {ar, (ar + 1) / 2, 1};
            r.basis = BasisKind::GLL;
            r.solver = SolverKind::MG;
            r.overlap = c == AnisoCase::MaxVar ? OverlapSpec::max_relative(0.08) : OverlapSpec::relative(0.08);
            r.schedule = {1, 1, c == AnisoCase::RelFix ? 1 : 3};
            r.name = "aniso-" + std::string(to_string(c)) + "-AR" + std::to_string(ar);
            out.push_back(r);
        }
    return out;
}

} // namespace dgmg::bench
