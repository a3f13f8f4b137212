#pragma once

// Experiment configuration and named presets for the reconstruction runs.
// Counts follow the representation convention: n_x longitudinal profiles
// (degree 0..n_x-1) and n_y transverse channels (levels 0..n_y-1).  The
// solver basis adds margin in both directions; observed pairs are capped at
// transverse level n_y so the data reaches one level past the representation.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "potential.hpp"

namespace dirac_scatter {

struct ExperimentConfig {
    std::string name = "custom";
    Interval window{-0.4, 0.4};
    int rep_nx = 8;   // longitudinal profiles in the reconstruction
    int rep_ny = 10;  // transverse channels in the reconstruction
    int sol_nx = 0;   // solver counts; 0 = representation + default margin
    int sol_ny = 0;
    int n_energies = 10;
    double e_min = 1.5;
    double e_max = 15.0;
    std::string observation = "all";
    int level_cap = -1;  // data level cap; -1 = rep_ny
    std::string target = "letter_h";  // letter_h | cosine | ramp0 | ramp3
    double target_amp = 1.0;
    double noise_variance = 0.0;
    std::uint64_t seed = 1;
    int max_iterations = 300;
    double eta = 0.0;            // 0 = automatic initial step
    double stop_tracking = 0.0;  // 0 = run the full iteration budget
    double stop_objective = 0.0;
    int greens_order = -1;

    int rep_j_max() const { return rep_nx - 1; }
    int rep_k_max() const { return rep_ny - 1; }
    int sol_j_max() const { return (sol_nx > 0 ? sol_nx : rep_nx + 4) - 1; }
    int sol_k_max() const { return (sol_ny > 0 ? sol_ny : rep_ny + 3) - 1; }
    int data_level_cap() const { return level_cap >= 0 ? level_cap : rep_ny; }
};

inline ExperimentConfig experiment_preset(const std::string& name) {
    ExperimentConfig c;
    c.name = name;
    if (name == "exp1_small") {
        // Letter-H occupancy, noise-free desk scale.
        c.window = {-0.4, 0.4};
        c.rep_nx = 8;
        c.rep_ny = 10;
        c.n_energies = 10;
        c.target = "letter_h";
        c.max_iterations = 300;
        c.stop_tracking = 1e-3;
    } else if (name == "exp1_full") {
        // Full-size letter-H run; documented but far beyond desk budgets.
        c.window = {-0.4, 0.4};
        c.rep_nx = 16;
        c.rep_ny = 20;
        c.n_energies = 18;
        c.target = "letter_h";
        c.max_iterations = 600;
    } else if (name == "exp2_small") {
        // Separable cosine bump; observation-set comparison.
        c.window = {-0.2, 0.2};
        c.rep_nx = 6;
        c.rep_ny = 10;
        c.n_energies = 10;
        c.target = "cosine";
        c.max_iterations = 300;
    } else if (name == "exp3_small") {
        // Linear ramp on sigma_3; average recoverable, shape not.
        c.window = {-0.2, 0.2};
        c.rep_nx = 6;
        c.rep_ny = 10;
        c.n_energies = 10;
        c.target = "ramp3";
        c.max_iterations = 300;
    } else if (name == "exp4_small") {
        // Linear ramp on sigma_0; transmission-only data stagnates.
        c.window = {-0.2, 0.2};
        c.rep_nx = 6;
        c.rep_ny = 10;
        c.n_energies = 10;
        c.target = "ramp0";
        c.max_iterations = 300;
    } else {
        throw std::invalid_argument("unknown experiment preset: " + name);
    }
    return c;
}

inline std::vector<std::string> experiment_preset_names() {
    return {"exp1_small", "exp1_full", "exp2_small", "exp3_small", "exp4_small"};
}

}  // namespace dirac_scatter
