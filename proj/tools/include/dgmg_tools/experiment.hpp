#pragma once

#include <dgmg/basis1d.hpp>
#include <dgmg/krylov.hpp>
#include <dgmg/multigrid.hpp>
#include <dgmg/schwarz.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dgmg::bench {

enum class SolverKind { MG, MGCG };

std::string_view to_string(SolverKind s);
SolverKind parse_solver(std::string_view text);

/// One convergence experiment on the periodic box (2π s_x) x (2π s_y) x (2π s_z).
struct ExperimentConfig {
    std::string name = "run";
    int degree = 4;
    std::array<int, 3> counts{8, 8, 8};
    std::array<int, 3> multipliers{1, 1, 1};
    BasisKind basis = BasisKind::GLL;
    OverlapSpec overlap = OverlapSpec::relative(0.08);
    CycleSchedule schedule;
    SolverKind solver = SolverKind::MG;
    double penalty_factor = 2.0;
    CoarsePenalty coarse_penalty = CoarsePenalty::Inherited;
    std::uint64_t seed = 1;
    double target_reduction = 1e10;
    int max_cycles = 100;
    int threads = 1;
    bool deterministic = true;

    /// Throws InputError for non-positive values or a degree that is not a power of two.
    void validate() const;
    [[nodiscard]] Grid grid() const;
    [[nodiscard]] HierarchyConfig hierarchy() const;
};

struct RunMetrics {
    std::vector<double> history; ///< ||r_k||, k = 0..cycles
    int cycles = 0;
    double rho = 0.0;
    double lg_rho = 0.0;
    std::optional<int> n10; ///< empty when rho >= 1
    double t_cycle = 0.0; ///< seconds per cycle
    std::optional<double> tau10; ///< seconds per unknown for a 1e10 reduction
    double setup_seconds = 0.0;
    std::size_t dof = 0;
    bool converged = false;
    bool diverged = false;
    double l2_error = 0.0; ///< against the manufactured solution, constant removed
};

/// n10 = ceil(-10 / lg rho); empty unless 0 < rho < 1.
std::optional<int> cycles_for_ten_orders(double rho);
/// Average reduction (r_n / r_0)^(1/n) of a residual history.
double average_rate(const std::vector<double>& history);

/// Counter-based uniform value in [-1, 1] keyed by (seed, element, node).
double random_guess(std::uint64_t seed, std::uint64_t element, std::uint64_t node);
Field random_field(const Grid& grid, int degree, std::uint64_t seed);

/// Exact solution and load of the benchmark problem.
struct ManufacturedProblem {
    [[nodiscard]] double u(double x, double y, double z) const;
    [[nodiscard]] double f(double x, double y, double z) const;
};
ManufacturedProblem manufactured_problem(int sx, int sy, int sz);

/// Mass-weighted L2 distance between u_h and the exact solution at the nodes,
/// after removing the mean difference.
double l2_error(const LevelOperators& ops, const Field& uh, const ManufacturedProblem& problem);

/// Assembles, solves from a seeded random start and measures the convergence.
RunMetrics run(const ExperimentConfig& config);

/// Rows 1..14 of the isotropic overlap study for each requested degree.
/// `elements` overrides the default 8 per direction for P <= 8 and 4 for P >= 16.
std::vector<ExperimentConfig> preset_table1(const std::vector<int>& rows, const std::vector<int>& degrees,
                                            std::optional<int> elements = std::nullopt);

enum class AnisoCase { RelFix, RelVar, MaxVar };
std::string_view to_string(AnisoCase c);
AnisoCase parse_aniso_case(std::string_view text);

/// Domain (2π AR) x (2π ceil(AR/2)) x 2π with equal element counts.
std::vector<ExperimentConfig> preset_anisotropic(const std::vector<int>& aspect_ratios,
                                                 const std::vector<AnisoCase>& cases, int degree = 16,
                                                 int elements = 8);

/// Writes history.csv and summary.json into `dir`. Throws std::filesystem::filesystem_error
/// or std::runtime_error when the directory cannot be written.
void emit_results(const ExperimentConfig& config, const RunMetrics& metrics, const std::filesystem::path& dir);

/// CSV text of a residual history.
std::string history_csv(const std::vector<double>& history);

} // namespace dgmg::bench
