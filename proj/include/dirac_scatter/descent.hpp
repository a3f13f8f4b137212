#pragma once

// Gradient descent on the data misfit with a monotone step-size policy: each
// iteration takes kappa <- kappa - eta * grad, halving eta until the objective
// decreases and growing it gently after clean accepts.  The step is on raw
// coefficients; with an orthonormal longitudinal basis and a fixed transverse
// family this is steepest descent in the coefficient metric.

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "adjoint.hpp"
#include "metrics.hpp"

namespace dirac_scatter {

struct DescentOptions {
    int max_iterations = 300;
    double eta = 0.0;             // initial step; 0 = scale from the first gradient
    double grow = 1.2;            // step growth factor after an accepted full step
    int max_backtracks = 45;
    double stop_objective = 0.0;  // stop once the objective falls to or below this
    double stop_tracking = 0.0;   // stop once the tracking metric falls to or below this
};

struct IterationRecord {
    int iteration = 0;
    double objective = 0.0;
    double tracking = 0.0;
    double step = 0.0;            // eta used for the accepted step (0 for the initial record)
    double coeff_error = -1.0;    // vs reference, when one is supplied
    double avg_error = -1.0;      // window-mean channel error, when requested
};

struct DescentResult {
    PotentialRep recon;
    std::vector<IterationRecord> history;  // history[0] is the initial state
    bool reached_stop = false;             // a stop threshold was hit
    bool stalled = false;                  // no decreasing step could be found
};

// reference: optional truth for coefficient-error tracking (same layout).
// avg_component: Pauli component whose window-mean error is tracked, or -1.
inline DescentResult run_descent(const MisfitProblem& problem, const PotentialRep& start,
                                 const DescentOptions& opt,
                                 const PotentialRep* reference = nullptr,
                                 int avg_component = -1) {
    if (opt.max_iterations < 0) throw std::invalid_argument("run_descent: negative iteration cap");
    DescentResult res;
    res.recon = start;

    auto metrics_of = [&](const PotentialRep& rep, int iter, const MisfitValue& val,
                          double step) {
        IterationRecord rec;
        rec.iteration = iter;
        rec.objective = val.objective;
        rec.tracking = val.tracking;
        rec.step = step;
        if (reference) {
            rec.coeff_error = coefficient_error(rep, *reference);
            if (avg_component >= 0)
                rec.avg_error = averaged_component_error(rep, *reference, avg_component);
        }
        return rec;
    };

    PotentialRep grad;
    MisfitValue val = problem.evaluate_with_gradient(res.recon, grad);
    res.history.push_back(metrics_of(res.recon, 0, val, 0.0));

    auto grad_norm2 = [](const PotentialRep& g) {
        double s = 0.0;
        for (int i = 0; i <= 3; ++i) s += g.kappa[static_cast<std::size_t>(i)].squaredNorm();
        return s;
    };

    auto hit_stop = [&](const MisfitValue& v) {
        return (opt.stop_objective > 0.0 && v.objective <= opt.stop_objective) ||
               (opt.stop_tracking > 0.0 && v.tracking <= opt.stop_tracking);
    };

    if (hit_stop(val)) {
        res.reached_stop = true;
        return res;
    }

    double eta = opt.eta;
    if (eta <= 0.0) {
        const double g2 = grad_norm2(grad);
        if (!(g2 > 0.0)) {
            res.stalled = true;
            return res;
        }
        eta = val.objective / g2;  // exact step for a quadratic model with zero floor, halved twice
        eta *= 0.25;
    }

    for (int iter = 1; iter <= opt.max_iterations; ++iter) {
        PotentialRep trial = res.recon;
        bool accepted = false;
        double step_used = 0.0;
        for (int bt = 0; bt <= opt.max_backtracks; ++bt) {
            for (int i = 0; i <= 3; ++i)
                trial.kappa[static_cast<std::size_t>(i)] =
                    res.recon.kappa[static_cast<std::size_t>(i)] -
                    eta * grad.kappa[static_cast<std::size_t>(i)];
            const MisfitValue trial_val = problem.evaluate(trial);
            if (trial_val.objective < val.objective) {
                accepted = true;
                step_used = eta;
                if (bt == 0) eta *= opt.grow;
                break;
            }
            eta *= 0.5;
            if (eta < std::numeric_limits<double>::min() * 1e4) break;
        }
        if (!accepted) {
            res.stalled = true;
            break;
        }
        res.recon = trial;
        val = problem.evaluate_with_gradient(res.recon, grad);
        res.history.push_back(metrics_of(res.recon, iter, val, step_used));
        if (hit_stop(val)) {
            res.reached_stop = true;
            break;
        }
    }
    return res;
}

}  // namespace dirac_scatter
