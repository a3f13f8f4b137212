#pragma once

// JSON serialization of experiment runs: configuration, per-iteration
// history, and the final coefficient arrays.

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "runner.hpp"

namespace dirac_scatter {

inline nlohmann::json config_to_json(const ExperimentConfig& c) {
    return nlohmann::json{
        {"name", c.name},
        {"window", {c.window.left, c.window.right}},
        {"rep_nx", c.rep_nx},
        {"rep_ny", c.rep_ny},
        {"sol_nx", c.sol_nx},
        {"sol_ny", c.sol_ny},
        {"n_energies", c.n_energies},
        {"e_min", c.e_min},
        {"e_max", c.e_max},
        {"observation", c.observation},
        {"level_cap", c.level_cap},
        {"target", c.target},
        {"target_amp", c.target_amp},
        {"noise_variance", c.noise_variance},
        {"seed", c.seed},
        {"max_iterations", c.max_iterations},
        {"eta", c.eta},
        {"stop_tracking", c.stop_tracking},
        {"stop_objective", c.stop_objective},
        {"greens_order", c.greens_order},
    };
}

inline nlohmann::json potential_to_json(const PotentialRep& rep) {
    nlohmann::json j;
    j["interval"] = {rep.interval.left, rep.interval.right};
    j["family"] = (rep.family == YFamily::hermite_rescaled)
                      ? "hermite_rescaled"
                      : (rep.family == YFamily::hermite ? "hermite" : "constant");
    j["j_max"] = rep.j_max;
    j["k_max"] = rep.k_max;
    for (int i = 0; i <= 3; ++i) {
        nlohmann::json rows = nlohmann::json::array();
        const auto& m = rep.kappa[static_cast<std::size_t>(i)];
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (Eigen::Index cc = 0; cc < m.cols(); ++cc) row.push_back(m(r, cc));
            rows.push_back(row);
        }
        j["kappa"][static_cast<std::size_t>(i)] = rows;
    }
    return j;
}

inline nlohmann::json run_to_json(const ExperimentRun& run) {
    nlohmann::json j;
    j["config"] = config_to_json(run.config);
    j["reached_stop"] = run.result.reached_stop;
    j["stalled"] = run.result.stalled;
    nlohmann::json hist = nlohmann::json::array();
    for (const auto& rec : run.result.history) {
        hist.push_back({
            {"iteration", rec.iteration},
            {"objective", rec.objective},
            {"tracking", rec.tracking},
            {"step", rec.step},
            {"coeff_error", rec.coeff_error},
            {"avg_error", rec.avg_error},
        });
    }
    j["history"] = hist;
    j["reference"] = potential_to_json(run.reference);
    j["reconstruction"] = potential_to_json(run.result.recon);
    return j;
}

inline void write_run_json(const ExperimentRun& run, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_run_json: cannot open " + path);
    out << run_to_json(run).dump(2) << "\n";
}

}  // namespace dirac_scatter
