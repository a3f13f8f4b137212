// Acceptance suite: one check per exit criterion, each reported as a single
// [PASS]/[FAIL] line with the measured quantity, its bound, and the elapsed
// time.  The process exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "dirac_scatter/dirac_scatter.hpp"

using namespace dirac_scatter;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(const Clock::time_point& t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int number, const char* name, bool ok, const std::string& detail, double elapsed,
            double budget) {
    const bool in_time = elapsed < budget;
    const bool pass = ok && in_time;
    if (!pass) ++g_failures;
    std::printf("[%s] %02d %-46s %s; %.1f s (budget %.0f s)\n", pass ? "PASS" : "FAIL", number,
                name, detail.c_str(), elapsed, budget);
    std::fflush(stdout);
}

PotentialRep random_potential(const Interval& iv, int j_max, int k_max, double amp,
                              unsigned seed, bool scalar_only) {
    PotentialRep rep = make_zero_potential(iv, YFamily::hermite_rescaled, j_max, k_max);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int top = scalar_only ? 0 : 3;
    for (int i = 0; i <= top; ++i)
        for (int j = 0; j <= j_max; ++j)
            for (int k = 0; k <= k_max; ++k)
                rep.kappa[static_cast<std::size_t>(i)](j, k) =
                    amp * u(rng) * std::pow(0.6, j) * std::pow(0.6, k);
    return rep;
}

DataSource born_source(const PotentialRep& rep, const TripleOverlapTensor& tensor) {
    return [&rep, &tensor](const ModeIndex& m, const ModeIndex& p, double energy) {
        return born_data(rep, tensor, m, p, energy);
    };
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

// 1. Zero potential: transfer matrix = free phases, scattering matrix = I.
void criterion_free_identity() {
    const auto t0 = Clock::now();
    const Interval iv{-0.3, 0.3};
    const int sol_k = 5, sol_j = 6;
    const PotentialRep zero = make_zero_potential(iv, YFamily::hermite_rescaled, 2, 2);
    std::mt19937 rng(2301);
    std::uniform_real_distribution<double> u(0.9, 5.9);
    double worst_t = 0.0, worst_s = 0.0;
    int done = 0;
    while (done < 20) {
        const double e = u(rng);
        bool admissible = true;
        for (int n = 1; n <= sol_k + 1; ++n)
            if (std::abs(e - std::sqrt(2.0 * n)) < 1e-3) admissible = false;
        if (!admissible) continue;
        ++done;
        const TransferMatrix tm = solve_slab_transfer(zero, sol_k, sol_j, e);
        const double d = iv.right - iv.left;
        Eigen::MatrixXcd expect =
            Eigen::MatrixXcd::Zero(tm.mode_count(), tm.mode_count());
        for (int m = 0; m < tm.mode_count(); ++m) {
            const int n = tm.modes[static_cast<std::size_t>(m)].idx.n;
            const cxd lam = (e * e > 2.0 * n)
                                ? cxd(std::sqrt(e * e - 2.0 * n), 0.0)
                                : cxd(0.0, std::sqrt(2.0 * n - e * e));
            expect(m, m) = std::exp(cxd(0, 1) * lam * d);
        }
        worst_t = std::max(worst_t, (tm.matrix - expect).cwiseAbs().maxCoeff());
        const ScatteringMatrix s = extract_smatrix(tm);
        const Eigen::MatrixXcd eye =
            Eigen::MatrixXcd::Identity(s.matrix.rows(), s.matrix.cols());
        worst_s = std::max(worst_s, (s.matrix - eye).cwiseAbs().maxCoeff());
    }
    report(1, "free propagation identity (20 energies)", worst_t <= 1e-10 && worst_s <= 1e-10,
           fmt("transfer dev %.2e, scatter dev %.2e <= 1e-10", worst_t, worst_s),
           seconds_since(t0), 1.0);
}

// 2. Flux-normalized scattering matrices are unitary.
void criterion_unitarity() {
    const auto t0 = Clock::now();
    const Interval iv{-0.3, 0.3};
    const std::vector<double> energies = {1.7, 2.6, 3.3, 4.1, 5.3};
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const PotentialRep rep = random_potential(iv, 3, 3, 0.4, 100 + trial, false);
        for (double e : energies) {
            const TransferMatrix tm = solve_slab_transfer(rep, 6, 8, e);
            const ScatteringMatrix s = extract_smatrix(tm);
            const Eigen::MatrixXcd eye =
                Eigen::MatrixXcd::Identity(s.matrix.rows(), s.matrix.cols());
            worst = std::max(worst, (s.matrix.adjoint() * s.matrix - eye).norm());
        }
    }
    report(2, "flux unitarity (10 potentials x 5 energies)", worst <= 1e-6,
           fmt("worst ||S^H S - I||_F = %.2e <= 1e-6", worst), seconds_since(t0), 60.0);
}

// 3. Bisected cascades with interface merging match the direct solve.
void criterion_cascade() {
    const auto t0 = Clock::now();
    const Interval iv{-0.3, 0.3};
    const PotentialRep rep = random_potential(iv, 3, 2, 0.5, 313, false);
    const double e = 2.9;
    const CascadeTransfer direct = cascade_transfer(rep, 5, 12, e, 0);
    const CascadeTransfer two = cascade_transfer(rep, 5, 12, e, 1);
    const CascadeTransfer four = cascade_transfer(rep, 5, 12, e, 2);
    const double d1 = (two.total.matrix - direct.total.matrix).cwiseAbs().maxCoeff();
    const double d2 = (four.total.matrix - direct.total.matrix).cwiseAbs().maxCoeff();
    report(3, "cascade merges match the direct solve", d1 <= 1e-8 && d2 <= 1e-8,
           fmt("2-slab dev %.2e, 4-slab dev %.2e <= 1e-8", d1, d2), seconds_since(t0), 60.0);
}

// 4. The first-order data map misses the solver by O(amplitude^2).
void criterion_second_order() {
    const auto t0 = Clock::now();
    const Interval iv{-0.3, 0.4};
    const double energy = 2.6;
    const int sol_k = 6, sol_j = 12;
    const PotentialRep base = random_potential(iv, 3, 2, 1.0, 977, false);
    const TripleOverlapTensor tensor(sol_k + 1, base.k_max, base.family);
    const std::vector<double> eps = {1e-1, 1e-2, 1e-3, 1e-4};
    std::vector<double> dev;
    for (double scale : eps) {
        PotentialRep rep = base;
        for (auto& m : rep.kappa) m *= scale;
        const TransferMatrix t = solve_slab_transfer(rep, sol_k, sol_j, energy);
        const Eigen::MatrixXcd shat_nl = normalized_scatter_data(t);
        double worst = 0.0;
        for (int r = 0; r < t.mode_count(); ++r) {
            if (!t.modes[static_cast<std::size_t>(r)].propagating) continue;
            for (int c = 0; c < t.mode_count(); ++c) {
                if (!t.modes[static_cast<std::size_t>(c)].propagating) continue;
                const cxd lin = born_shat(rep, tensor, t.modes[static_cast<std::size_t>(r)].idx,
                                          t.modes[static_cast<std::size_t>(c)].idx, energy);
                worst = std::max(worst, std::abs(shat_nl(r, c) - lin));
            }
        }
        dev.push_back(worst);
    }
    double min_slope = 1e9;
    for (std::size_t i = 0; i + 1 < eps.size(); ++i)
        min_slope = std::min(min_slope, (std::log(dev[i]) - std::log(dev[i + 1])) /
                                            (std::log(eps[i]) - std::log(eps[i + 1])));
    report(4, "first-order map is second-order accurate", min_slope >= 1.9,
           fmt("smallest log-log slope %.3f >= 1.9", min_slope), seconds_since(t0), 120.0);
}

// 5. Explicit inversion of the first-order map round-trips exactly.
void criterion_linear_round_trip() {
    const auto t0 = Clock::now();
    const Interval iv{-0.3, 0.4};
    const std::vector<double> xis = {0.9, 1.7, 2.3};
    double worst_scalar = 0.0;
    const TripleOverlapTensor tensor(6, 3, YFamily::hermite_rescaled);
    for (int trial = 0; trial < 100; ++trial) {
        const PotentialRep rep = random_potential(iv, 4, 3, 1.0, 1000 + trial, true);
        const double xi = xis[static_cast<std::size_t>(trial % 3)];
        const DataSource src = born_source(rep, tensor);
        const Eigen::VectorXcd vhat = invert_scalar(reduce_scalar(src, xi, rep.k_max), rep.k_max);
        for (int k = 0; k <= rep.k_max; ++k)
            worst_scalar = std::max(
                worst_scalar, std::abs(vhat(k) - potential_profile_fourier(rep, k, 0, xi)));
    }
    double worst_full = 0.0;
    {
        const int k_max = 2;
        const TripleOverlapTensor full_tensor(k_max + 2, k_max, YFamily::hermite_rescaled);
        for (int trial = 0; trial < 10; ++trial) {
            const PotentialRep rep = random_potential(iv, 3, k_max, 0.9, 5000 + trial, true);
            const FullInversion inv =
                invert_full(born_source(rep, full_tensor), 0.85, k_max, full_tensor);
            for (int k = 0; k <= k_max; ++k) {
                worst_full = std::max(worst_full, std::abs(inv.vhat(0, k) -
                                                           potential_profile_fourier(rep, k, 0, 0.85)));
                for (int i = 1; i <= 3; ++i)
                    worst_full = std::max(worst_full, std::abs(inv.vhat(i, k)));
            }
        }
    }
    report(5, "first-order inversion round trip", worst_scalar <= 1e-10 && worst_full <= 1e-9,
           fmt("scalar dev %.2e <= 1e-10, full dev %.2e <= 1e-9", worst_scalar, worst_full),
           seconds_since(t0), 120.0);
}

// 6. Weighted norms of the scalar data map are sandwiched by fixed constants.
void criterion_sandwich() {
    const auto t0 = Clock::now();
    std::mt19937 rng(606);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int violations = 0, trials = 0;
    double worst_margin = 1e9;
    for (int n : {2, 5, 10, 20}) {
        for (int t = 0; t < 250; ++t) {
            Eigen::VectorXcd vhat = Eigen::VectorXcd::Zero(n + 1);
            for (int k = 1; k <= n; ++k) vhat(k) = cxd(u(rng), u(rng));
            const SandwichCheck chk = sandwich_check(vhat);
            ++trials;
            if (!chk.ok) ++violations;
            worst_margin = std::min({worst_margin, chk.value - chk.lower, chk.upper - chk.value});
        }
    }
    report(6, "weighted-norm sandwich (1000 draws)", violations == 0 && trials == 1000,
           fmt("violations %.0f, smallest margin %.2e", static_cast<double>(violations),
               worst_margin),
           seconds_since(t0), 60.0);
}

// 7. Adjoint gradient of the data misfit against central differences.
void criterion_adjoint_gradient() {
    const auto t0 = Clock::now();
    const Interval iv{-0.3, 0.3};
    SlabBasis basis;
    basis.interval = iv;
    basis.j_max = 6;
    basis.k_max = 5;
    const PotentialRep truth = random_potential(iv, 3, 3, 0.45, 4100, false);
    MisfitProblem problem(basis, YFamily::hermite_rescaled, 3, 3);
    problem.add_energies({2.1, 3.3});
    problem.set_reference(truth, ObservationSet::all, 4);
    PotentialRep at = random_potential(iv, 3, 3, 0.3, 4300, false);
    PotentialRep grad;
    problem.evaluate_with_gradient(at, grad);
    std::mt19937 rng(2026);
    std::uniform_int_distribution<int> pick(0, 3);
    const double h = 1e-5;
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const int i = pick(rng), j = pick(rng), k = pick(rng);
        const double saved = at.kappa[static_cast<std::size_t>(i)](j, k);
        at.kappa[static_cast<std::size_t>(i)](j, k) = saved + h;
        const double op = problem.evaluate(at).objective;
        at.kappa[static_cast<std::size_t>(i)](j, k) = saved - h;
        const double om = problem.evaluate(at).objective;
        at.kappa[static_cast<std::size_t>(i)](j, k) = saved;
        const double fd = (op - om) / (2.0 * h);
        const double ad = grad.kappa[static_cast<std::size_t>(i)](j, k);
        worst = std::max(worst, std::abs(fd - ad) / std::max({std::abs(fd), std::abs(ad), 1e-10}));
    }
    report(7, "adjoint gradient vs central differences", worst <= 1e-5,
           fmt("worst relative deviation %.2e <= 1e-5", worst), seconds_since(t0), 300.0);
}

// 8. Noise-free reconstruction of the letter target at desk scale.
void criterion_noise_free_reconstruction() {
    const auto t0 = Clock::now();
    const ExperimentConfig c = experiment_preset("exp1_small");
    const ExperimentRun run = run_experiment(c);
    const auto& h = run.result.history;
    const double final_tracking = h.back().tracking;
    bool monotone = true;
    for (std::size_t i = 11; i < h.size(); ++i)
        if (h[i].coeff_error > h[i - 1].coeff_error + 1e-12) monotone = false;
    const bool ok = final_tracking <= 1e-3 && static_cast<int>(h.size()) - 1 <= 300 && monotone;
    report(8, "noise-free letter reconstruction", ok,
           fmt("final misfit %.2e <= 1e-3 in %.0f iterations, coefficient error "
               "monotone after 10",
               final_tracking, static_cast<double>(h.size() - 1)),
           seconds_since(t0), 1800.0);
}

// 9. Noisier data leaves a strictly higher misfit floor (common noise seed).
void criterion_noise_floor_ordering() {
    const auto t0 = Clock::now();
    ExperimentConfig c = experiment_preset("exp1_small");
    c.stop_tracking = 0.0;
    c.max_iterations = 60;  // reduced cap; the floors separate well before full budget
    std::vector<double> floors;
    for (double var : {4e-2, 8e-2, 1.6e-1}) {
        c.noise_variance = var;
        const ExperimentRun run = run_experiment(c);
        floors.push_back(run.result.history.back().tracking);
    }
    const bool ok = floors[0] < floors[1] && floors[1] < floors[2];
    report(9, "noise-floor ordering over three variances", ok,
           fmt("final misfits %.3e < %.3e < %.3e", floors[0], floors[1], floors[2]),
           seconds_since(t0), 5400.0);
}

// 10. Non-identifiability: a longitudinal sigma_3 ramp is recovered only in
// its window average, and transmission-only data cannot fix a sigma_0 ramp.
void criterion_non_identifiability() {
    const auto t0 = Clock::now();
    ExperimentConfig c3 = experiment_preset("exp3_small");
    c3.max_iterations = 120;
    const ExperimentRun r3 = run_experiment(c3);
    const double avg_err = r3.result.history.back().avg_error;
    const double coeff_err = r3.result.history.back().coeff_error;

    ExperimentConfig c4 = experiment_preset("exp4_small");
    c4.max_iterations = 120;
    c4.observation = "trans";
    const double e_trans = run_experiment(c4).result.history.back().coeff_error;
    c4.observation = "all";
    const double e_all = run_experiment(c4).result.history.back().coeff_error;
    c4.observation = "refl";
    const double e_refl = run_experiment(c4).result.history.back().coeff_error;

    const bool ok = avg_err <= 1e-4 && coeff_err >= 0.3 && e_trans >= 0.3 &&
                    e_all < e_trans && e_refl < e_trans;
    report(10, "gauge-type non-identifiability", ok,
           fmt("ramp avg err %.2e <= 1e-4 with coeff err %.2f >= 0.3", avg_err, coeff_err) +
               fmt("; transmission-only stalls at %.2f, full %.2f, reflection %.2f below it",
                   e_trans, e_all, e_refl),
           seconds_since(t0), 1800.0);
}

// 11. Larger observation sets reconstruct the separable bump at least as well.
void criterion_observation_ordering() {
    const auto t0 = Clock::now();
    ExperimentConfig c = experiment_preset("exp2_small");
    c.max_iterations = 120;
    std::vector<double> finals;
    for (const char* obs : {"all", "low", "diag"}) {
        c.observation = obs;
        finals.push_back(run_experiment(c).result.history.back().coeff_error);
    }
    const bool ok = finals[0] <= finals[1] && finals[1] <= finals[2];
    report(11, "observation-set ordering", ok,
           fmt("final coefficient errors %.3f (all) <= %.3f (low) <= %.3f (diag)", finals[0],
               finals[1], finals[2]),
           seconds_since(t0), 1800.0);
}

}  // namespace

int main() {
    const auto t0 = Clock::now();
    criterion_free_identity();
    criterion_unitarity();
    criterion_cascade();
    criterion_second_order();
    criterion_linear_round_trip();
    criterion_sandwich();
    criterion_adjoint_gradient();
    criterion_noise_free_reconstruction();
    criterion_noise_floor_ordering();
    criterion_non_identifiability();
    criterion_observation_ordering();
    std::printf("%s: %d of 11 criteria failed; total %.1f s\n",
                g_failures ? "RESULT" : "RESULT", g_failures, seconds_since(t0));
    return g_failures;
}
