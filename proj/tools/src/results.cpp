#include "dgmg_tools/experiment.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dgmg::bench {

namespace {

nlohmann::json finite_or_null(double v)
{
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

nlohmann::json config_json(const ExperimentConfig& c)
{
    return {
        {"name", c.name},
        {"degree", c.degree},
        {"elements", c.counts},
        {"multipliers", c.multipliers},
        {"basis", std::string(to_string(c.basis))},
        {"overlap", to_string(c.overlap)},
        {"schedule", {{"pre", c.schedule.pre}, {"post", c.schedule.post}, {"growth", c.schedule.growth}}},
        {"solver", std::string(to_string(c.solver))},
        {"penalty_factor", c.penalty_factor},
        {"coarse_penalty", std::string(to_string(c.coarse_penalty))},
        {"seed", c.seed},
        {"target_reduction", c.target_reduction},
        {"max_cycles", c.max_cycles},
        {"threads", c.threads},
        {"deterministic", c.deterministic},
    };
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out.flush())
        throw std::runtime_error("failed writing " + path.string());
}

} // namespace

std::string history_csv(const std::vector<double>& history)
{
    std::string s = "cycle,residual_norm\n";
    char buf[64];
    for (std::size_t k = 0; k < history.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", k, history[k]);
        s += buf;
    }
    return s;
}

void emit_results(const ExperimentConfig& config, const RunMetrics& m, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    write_file(dir / "history.csv", history_csv(m.history));

    nlohmann::json j{
        {"config", config_json(config)},
        {"rho", finite_or_null(m.rho)},
        {"lg_rho", finite_or_null(m.lg_rho)},
        {"n10", m.n10 ? nlohmann::json(*m.n10) : nlohmann::json(nullptr)},
        {"cycles", m.cycles},
        {"t_cycle_seconds", m.t_cycle},
        {"tau10_seconds_per_dof", m.tau10 ? nlohmann::json(*m.tau10) : nlohmann::json(nullptr)},
        {"setup_seconds", m.setup_seconds},
        {"dof", m.dof},
        {"converged", m.converged},
        {"diverged", m.diverged},
        {"l2_error", finite_or_null(m.l2_error)},
    };
    write_file(dir / "summary.json", j.dump(2) + "\n");
}

} // namespace dgmg::bench
