// dgmg: convergence experiments for the multigrid-preconditioned IP-DG Poisson solver.

#include "dgmg_tools/experiment.hpp"

#include <dgmg/errors.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace dgmg;
using namespace dgmg::bench;

struct Options {
    int degree = 4;
    int ne = 8;
    std::vector<int> elements;
    std::vector<int> multipliers;
    std::string basis = "GLL";
    std::string overlap = "rel:0.08";
    int pre = 1, post = 1, growth = 1;
    std::string solver = "MG";
    double penalty = 2.0;
    std::string coarse_penalty = "inherited";
    std::uint64_t seed = 1;
    double target = 1e10;
    int max_cycles = 100;
    int threads = 1;
    bool deterministic = true;
    std::string out = "dgmg-results";

    std::vector<int> rows{1, 2, 3, 4, 5, 6};
    std::vector<int> degrees{4, 8};
    std::optional<int> table_ne;

    std::vector<int> ar{1, 4, 8, 16};
    std::string aniso_case = "all";
};

ExperimentConfig apply_common(const Options& o, ExperimentConfig c)
{
    c.seed = o.seed;
    c.target_reduction = o.target;
    c.max_cycles = o.max_cycles;
    c.threads = o.threads;
    c.deterministic = o.deterministic;
    c.penalty_factor = o.penalty;
    c.coarse_penalty = parse_coarse_penalty(o.coarse_penalty);
    return c;
}

ExperimentConfig solve_config(const Options& o)
{
    ExperimentConfig c;
    c.name = "solve";
    c.degree = o.degree;
    c.counts = {o.ne, o.ne, o.ne};
    if (!o.elements.empty()) {
        if (o.elements.size() != 3)
            throw InputError("--elements expects three counts");
        c.counts = {o.elements[0], o.elements[1], o.elements[2]};
    }
    if (!o.multipliers.empty()) {
        if (o.multipliers.size() != 3)
            throw InputError("--multipliers expects three integers");
        c.multipliers = {o.multipliers[0], o.multipliers[1], o.multipliers[2]};
    }
    c.basis = parse_basis_kind(o.basis);
    c.overlap = parse_overlap(o.overlap);
    c.schedule = {o.pre, o.post, o.growth};
    c.solver = parse_solver(o.solver);
    return apply_common(o, c);
}

void print_header()
{
    std::printf("%-28s %8s %6s %12s %8s %6s %12s %12s %10s\n", "run", "dof", "cycles", "rho", "-lg rho",
                "n10", "t_cycle[s]", "tau10[s]", "status");
}

void print_row(const ExperimentConfig& c, const RunMetrics& m)
{
    const char* status = m.converged ? "converged" : m.diverged ? "DIVERGED" : "max-cycles";
    std::printf("%-28s %8zu %6d %12.4e %8.3f %6s %12.4e %12.4e %10s\n", c.name.c_str(), m.dof, m.cycles, m.rho,
                -m.lg_rho, m.n10 ? std::to_string(*m.n10).c_str() : "-", m.t_cycle, m.tau10.value_or(0.0),
                status);
    std::fflush(stdout);
}

int execute(const std::vector<ExperimentConfig>& configs, const Options& o, bool nested)
{
    bool all_converged = true;
    print_header();
    for (const auto& c : configs) {
        const RunMetrics m = run(c);
        print_row(c, m);
        const std::filesystem::path dir = nested ? std::filesystem::path(o.out) / c.name : std::filesystem::path(o.out);
        emit_results(c, m, dir);
        all_converged = all_converged && m.converged;
    }
    return all_converged ? 0 : 2;
}

} // namespace

int main(int argc, char** argv)
{
    Options o;
    CLI::App app{"dgmg - polynomial multigrid for periodic interior-penalty DG Poisson problems"};
    app.set_config("--config", "", "Flat key = value file; command-line flags take precedence");
    app.require_subcommand(1);

    app.add_option("-P,--degree", o.degree, "Polynomial degree (power of two)");
    app.add_option("--ne", o.ne, "Elements per direction");
    app.add_option("--elements", o.elements, "Elements per direction as x,y,z")->delimiter(',');
    app.add_option("--multipliers", o.multipliers, "Domain multipliers s_x,s_y,s_z (extent 2*pi*s)")
        ->delimiter(',');
    app.add_option("--basis", o.basis, "GLL or GL");
    app.add_option("--overlap", o.overlap, "nodes:N | rel:A | max:A, optional ,floor:N");
    app.add_option("--pre", o.pre, "Pre-smoothing steps on the top level");
    app.add_option("--post", o.post, "Post-smoothing steps on the top level");
    app.add_option("--growth", o.growth, "Smoothing growth factor per coarser level (1 = fixed V-cycle)");
    app.add_option("--solver", o.solver, "MG or MG-CG");
    app.add_option("--penalty", o.penalty, "Penalty safety factor over P(P+1)/dx");
    app.add_option("--coarse-penalty", o.coarse_penalty, "inherited (top-level penalty on all levels) or rediscretized");
    app.add_option("--seed", o.seed, "Seed of the random initial guess");
    app.add_option("--target", o.target, "Residual reduction target");
    app.add_option("--max-cycles", o.max_cycles, "Cycle limit");
    app.add_option("--threads", o.threads, "Worker threads");
    app.add_flag("--deterministic,!--no-deterministic", o.deterministic,
                 "Thread-count independent reductions (always on; recorded in the summary)");
    app.add_option("--out", o.out, "Output directory");

    auto* solve = app.add_subcommand("solve", "Run a single configuration")->fallthrough();
    auto* table1 = app.add_subcommand("table1", "Isotropic overlap study (rows 1-14)")->fallthrough();
    table1->add_option("--rows", o.rows, "Row indices")->delimiter(',');
    table1->add_option("--degrees", o.degrees, "Degrees to run")->delimiter(',');
    table1->add_option("--table-ne", o.table_ne, "Elements per direction (default 8 for P<=8, 4 above)");
    auto* aniso = app.add_subcommand("aniso", "Aspect-ratio study")->fallthrough();
    aniso->add_option("--ar", o.ar, "Aspect ratios")->delimiter(',');
    aniso->add_option("--case", o.aniso_case, "rel-fix | rel-var | max-var | all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed())
            return execute({solve_config(o)}, o, false);

        if (table1->parsed()) {
            auto configs = preset_table1(o.rows, o.degrees, o.table_ne);
            for (auto& c : configs)
                c = apply_common(o, c);
            return execute(configs, o, true);
        }

        std::vector<AnisoCase> cases;
        if (o.aniso_case == "all")
            cases = {AnisoCase::RelFix, AnisoCase::RelVar, AnisoCase::MaxVar};
        else
            cases = {parse_aniso_case(o.aniso_case)};
        const bool ne_given = app.count("--ne") > 0;
        const bool p_given = app.count("--degree") > 0;
        auto configs = preset_anisotropic(o.ar, cases, p_given ? o.degree : 16, ne_given ? o.ne : 8);
        for (auto& c : configs)
            c = apply_common(o, c);
        return execute(configs, o, true);
    } catch (const InputError& e) {
        std::cerr << "dgmg: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "dgmg: error: " << e.what() << '\n';
        return 2;
    }
}
