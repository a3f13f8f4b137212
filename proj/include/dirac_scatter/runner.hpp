#pragma once

// Orchestration: turn an ExperimentConfig into a reference potential, a
// misfit problem with synthetic observed data, and a finished descent run.

#include <stdexcept>

#include "adjoint.hpp"
#include "config.hpp"
#include "descent.hpp"
#include "targets.hpp"

namespace dirac_scatter {

inline PotentialRep experiment_target(const ExperimentConfig& c) {
    const YFamily family = YFamily::hermite_rescaled;
    if (c.target == "letter_h")
        return make_letter_h_target(c.window, family, c.rep_j_max(), c.rep_k_max(), c.target_amp);
    if (c.target == "cosine")
        return make_cosine_bump_target(c.window, family, c.rep_j_max(), c.rep_k_max(),
                                       c.target_amp);
    if (c.target == "ramp0")
        return make_ramp_target(c.window, family, c.rep_j_max(), c.rep_k_max(), 0);
    if (c.target == "ramp3")
        return make_ramp_target(c.window, family, c.rep_j_max(), c.rep_k_max(), 3);
    throw std::invalid_argument("unknown target: " + c.target);
}

inline MisfitProblem build_problem(const ExperimentConfig& c, const PotentialRep& reference) {
    SlabBasis basis;
    basis.interval = c.window;
    basis.k_max = c.sol_k_max();
    basis.j_max = c.sol_j_max();
    MisfitProblem problem(basis, YFamily::hermite_rescaled, c.rep_j_max(), c.rep_k_max());
    problem.add_energies(energy_grid(c.e_min, c.e_max, c.n_energies, c.sol_k_max()),
                         c.greens_order);
    problem.set_reference(reference, parse_observation_set(c.observation), c.data_level_cap(),
                          c.noise_variance, c.seed);
    return problem;
}

struct ExperimentRun {
    ExperimentConfig config;
    PotentialRep reference;
    DescentResult result;
};

// The window-mean error is tracked for the ramp targets on their component.
inline int tracked_average_component(const ExperimentConfig& c) {
    if (c.target == "ramp3") return 3;
    if (c.target == "ramp0") return 0;
    return -1;
}

inline ExperimentRun run_experiment(const ExperimentConfig& c) {
    ExperimentRun run;
    run.config = c;
    run.reference = experiment_target(c);
    const MisfitProblem problem = build_problem(c, run.reference);
    DescentOptions opt;
    opt.max_iterations = c.max_iterations;
    opt.eta = c.eta;
    opt.stop_tracking = c.stop_tracking;
    opt.stop_objective = c.stop_objective;
    const PotentialRep start = make_zero_potential(c.window, YFamily::hermite_rescaled,
                                                   c.rep_j_max(), c.rep_k_max());
    run.result = run_descent(problem, start, opt, &run.reference, tracked_average_component(c));
    return run;
}

}  // namespace dirac_scatter
