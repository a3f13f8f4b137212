// Command-line driver: forward scattering, linearized inversion demos, and
// full reconstruction runs for the domain-wall Dirac slab.

#include <complex>
#include <random>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dirac_scatter/dirac_scatter.hpp"

using namespace dirac_scatter;

namespace {

void apply_overrides(ExperimentConfig& c, int nx, int ny, int ne, const std::string& obs,
                     double sigma2, std::uint64_t seed, int iters, double eta,
                     double stop_tracking) {
    if (nx > 0) c.rep_nx = nx;
    if (ny > 0) c.rep_ny = ny;
    if (ne > 0) c.n_energies = ne;
    if (!obs.empty()) c.observation = obs;
    if (sigma2 >= 0.0) c.noise_variance = sigma2;
    if (seed > 0) c.seed = seed;
    if (iters > 0) c.max_iterations = iters;
    if (eta > 0.0) c.eta = eta;
    if (stop_tracking >= 0.0) c.stop_tracking = stop_tracking;
}

int cmd_forward(const std::string& preset, double energy, bool flux_normalized) {
    ExperimentConfig c = experiment_preset(preset);
    const PotentialRep target = experiment_target(c);
    SlabBasis basis;
    basis.interval = c.window;
    basis.j_max = c.sol_j_max();
    basis.k_max = c.sol_k_max();
    const SlabEnergyContext ctx = build_energy_context(energy, basis);
    SlabAssembler assembler(basis, target.family, target.j_max, target.k_max);
    const Eigen::MatrixXcd t = slab_transfer(ctx, assembler.potential_matrix(target));
    std::printf("# preset %s, E = %.6f, %d modes (levels 0..%d)\n", preset.c_str(), energy,
                ctx.mode_count(), basis.k_max);
    if (flux_normalized) {
        const TransferMatrix tm =
            solve_slab_transfer(target, basis.k_max, basis.j_max, energy);
        const ScatteringMatrix s = extract_smatrix(tm);
        std::printf("# flux-normalized scattering matrix, %d propagating modes\n",
                    static_cast<int>(s.modes.size()));
        const double dev = (s.matrix.adjoint() * s.matrix -
                            Eigen::MatrixXcd::Identity(s.matrix.rows(), s.matrix.cols()))
                               .norm();
        std::printf("# || S^H S - I ||_F = %.3e\n", dev);
        for (Eigen::Index r = 0; r < s.matrix.rows(); ++r) {
            for (Eigen::Index cc = 0; cc < s.matrix.cols(); ++cc)
                std::printf(" (%+.6f%+.6fi)", s.matrix(r, cc).real(), s.matrix(r, cc).imag());
            std::printf("\n");
        }
    } else {
        for (int r = 0; r < ctx.mode_count(); ++r) {
            for (int cc = 0; cc < ctx.mode_count(); ++cc)
                std::printf(" (%+.6f%+.6fi)", t(r, cc).real(), t(r, cc).imag());
            std::printf("\n");
        }
    }
    return 0;
}

int cmd_invert_linear(double xi, int k_max, unsigned seed) {
    // Random scalar potential -> first-order data -> recovered channels.
    const Interval iv{-0.3, 0.4};
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PotentialRep rep = make_zero_potential(iv, YFamily::hermite_rescaled, 4, k_max);
    for (int j = 0; j <= rep.j_max; ++j)
        for (int k = 0; k <= rep.k_max; ++k)
            rep.kappa[0](j, k) = u(rng) * std::pow(0.6, j + k);

    const TripleOverlapTensor overlaps(k_max + 3, k_max, YFamily::hermite_rescaled);
    auto data = [&](const ModeIndex& m, const ModeIndex& p, double energy) {
        return born_data(rep, overlaps, m, p, energy);
    };
    const ScalarReduction red = reduce_scalar(data, xi, k_max);
    const Eigen::VectorXcd vhat = invert_scalar(red, k_max);
    std::printf("# scalar inversion at xi = %.4f (k_max = %d)\n", xi, k_max);
    std::printf("# %-4s %-24s %-24s %s\n", "k", "recovered", "direct transform", "abs dev");
    double worst = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        const cxd truth = potential_profile_fourier(rep, k, 0, xi);
        const double dev = std::abs(vhat(k) - truth);
        worst = std::max(worst, dev);
        std::printf("  %-4d %+.6f%+.6fi     %+.6f%+.6fi     %.3e\n", k, vhat(k).real(),
                    vhat(k).imag(), truth.real(), truth.imag(), dev);
    }
    std::printf("# worst deviation %.3e\n", worst);
    return worst < 1e-8 ? 0 : 1;
}

int cmd_reconstruct(ExperimentConfig c, const std::string& out_path, bool quiet) {
    const ExperimentRun run = run_experiment(c);
    const auto& h = run.result.history;
    if (!quiet) {
        std::printf("# %s: target %s, obs %s, %d energies, noise %.4g, seed %llu\n",
                    c.name.c_str(), c.target.c_str(), c.observation.c_str(), c.n_energies,
                    c.noise_variance, static_cast<unsigned long long>(c.seed));
        std::printf("# %-5s %-14s %-14s %-12s %-10s %s\n", "iter", "objective", "tracking",
                    "step", "coeff_err", "avg_err");
        for (const auto& rec : h)
            std::printf("  %-5d %-14.6e %-14.6e %-12.3e %-10.6f %.6e\n", rec.iteration,
                        rec.objective, rec.tracking, rec.step, rec.coeff_error, rec.avg_error);
    }
    std::printf("final: iterations %zu, objective %.6e, tracking %.6e, coeff_error %.6f%s%s\n",
                h.size() - 1, h.back().objective, h.back().tracking, h.back().coeff_error,
                run.result.reached_stop ? " [stop threshold reached]" : "",
                run.result.stalled ? " [stalled]" : "");
    if (!out_path.empty()) {
        write_run_json(run, out_path);
        std::printf("history written to %s\n", out_path.c_str());
    }
    return 0;
}

int cmd_verify() {
    int failures = 0;
    auto report = [&](const char* name, bool ok, double value) {
        std::printf("[%s] %-44s %.3e\n", ok ? "PASS" : "FAIL", name, value);
        if (!ok) ++failures;
    };

    {  // Free propagation: zero potential gives pure phases.
        SlabBasis basis;
        basis.interval = {-0.3, 0.3};
        basis.j_max = 6;
        basis.k_max = 4;
        const PotentialRep zero = make_zero_potential(basis.interval,
                                                      YFamily::hermite_rescaled, 2, 2);
        const SlabEnergyContext ctx = build_energy_context(2.7, basis);
        SlabAssembler assembler(basis, zero.family, zero.j_max, zero.k_max);
        const Eigen::MatrixXcd t = slab_transfer(ctx, assembler.potential_matrix(zero));
        Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(t.rows(), t.cols());
        expect.diagonal() = ctx.free_diag;
        report("free propagation reduces to diagonal phases", (t - expect).cwiseAbs().maxCoeff() < 1e-10,
               (t - expect).cwiseAbs().maxCoeff());
    }
    {  // Unitarity of the flux-normalized scattering matrix.
        SlabBasis basis;
        basis.interval = {-0.3, 0.3};
        basis.j_max = 8;
        basis.k_max = 6;
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        PotentialRep rep = make_zero_potential(basis.interval, YFamily::hermite_rescaled, 3, 3);
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; j <= 3; ++j)
                for (int k = 0; k <= 3; ++k) rep.kappa[static_cast<std::size_t>(i)](j, k) =
                    0.35 * u(rng) * std::pow(0.6, j + k);
        const TransferMatrix tm = solve_slab_transfer(rep, basis.k_max, basis.j_max, 3.1);
        const ScatteringMatrix s = extract_smatrix(tm);
        const double dev = (s.matrix.adjoint() * s.matrix -
                            Eigen::MatrixXcd::Identity(s.matrix.rows(), s.matrix.cols()))
                               .norm();
        report("scattering matrix is flux unitary", dev < 1e-6, dev);
    }
    {  // Adjoint gradient vs a central difference.
        SlabBasis basis;
        basis.interval = {-0.3, 0.3};
        basis.j_max = 6;
        basis.k_max = 4;
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        PotentialRep truth = make_zero_potential(basis.interval, YFamily::hermite_rescaled, 2, 2);
        PotentialRep at = truth;
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; j <= 2; ++j)
                for (int k = 0; k <= 2; ++k) {
                    truth.kappa[static_cast<std::size_t>(i)](j, k) = 0.4 * u(rng);
                    at.kappa[static_cast<std::size_t>(i)](j, k) = 0.3 * u(rng);
                }
        MisfitProblem problem(basis, YFamily::hermite_rescaled, 2, 2);
        problem.add_energies({2.3, 3.4});
        problem.set_reference(truth, ObservationSet::all, 3);
        PotentialRep grad;
        problem.evaluate_with_gradient(at, grad);
        const double h = 1e-5;
        at.kappa[1](1, 1) += h;
        const double op = problem.evaluate(at).objective;
        at.kappa[1](1, 1) -= 2 * h;
        const double om = problem.evaluate(at).objective;
        const double fd = (op - om) / (2 * h);
        const double rel = std::abs(fd - grad.kappa[1](1, 1)) /
                           std::max(std::abs(fd), 1e-12);
        report("adjoint gradient matches central difference", rel < 1e-5, rel);
    }
    std::printf(failures ? "verify: %d check(s) failed\n" : "verify: all checks passed\n",
                failures);
    return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scattering and reconstruction for the 2-D domain-wall Dirac slab"};
    app.require_subcommand(1);

    // forward
    std::string fw_preset = "exp1_small";
    double fw_energy = 2.7;
    bool fw_flux = false;
    auto* fw = app.add_subcommand("forward", "Solve one slab and print the transfer matrix");
    fw->add_option("--preset", fw_preset, "experiment preset supplying the potential");
    fw->add_option("--energy", fw_energy, "energy of the solve (> 0)");
    fw->add_flag("--smatrix", fw_flux, "print the flux-normalized scattering matrix instead");

    // invert-linear
    double il_xi = 1.1;
    int il_kmax = 3;
    unsigned il_seed = 17;
    auto* il = app.add_subcommand("invert-linear",
                                  "Scalar first-order inversion round trip at one frequency");
    il->add_option("--xi", il_xi, "exchanged frequency (> 0, away from sqrt(2n))");
    il->add_option("--kmax", il_kmax, "highest transverse channel to recover");
    il->add_option("--seed", il_seed, "seed for the random scalar potential");

    // reconstruct
    std::string rc_preset = "exp1_small", rc_obs, rc_out;
    int rc_nx = 0, rc_ny = 0, rc_ne = 0, rc_iters = 0;
    double rc_sigma2 = -1.0, rc_eta = 0.0, rc_stop = -1.0;
    std::uint64_t rc_seed = 0;
    bool rc_quiet = false;
    auto* rc = app.add_subcommand("reconstruct", "Run a gradient-descent reconstruction");
    rc->add_option("--preset", rc_preset, "experiment preset to start from");
    rc->add_option("--nx", rc_nx, "override: longitudinal profile count");
    rc->add_option("--ny", rc_ny, "override: transverse channel count");
    rc->add_option("--ne", rc_ne, "override: number of energies");
    rc->add_option("--obs", rc_obs, "override: observation set (all|low|diag|trans|refl)");
    rc->add_option("--sigma2", rc_sigma2, "override: noise variance on observed entries");
    rc->add_option("--seed", rc_seed, "override: noise seed");
    rc->add_option("--iters", rc_iters, "override: iteration cap");
    rc->add_option("--eta", rc_eta, "override: fixed initial step size");
    rc->add_option("--stop-tracking", rc_stop, "override: tracking stop threshold");
    rc->add_option("--out", rc_out, "write the run history to this JSON file");
    rc->add_flag("--quiet", rc_quiet, "print only the final summary line");

    // verify
    auto* vf = app.add_subcommand("verify", "Run quick self-checks and report PASS/FAIL");

    CLI11_PARSE(app, argc, argv);

    try {
        if (fw->parsed()) return cmd_forward(fw_preset, fw_energy, fw_flux);
        if (il->parsed()) return cmd_invert_linear(il_xi, il_kmax, il_seed);
        if (rc->parsed()) {
            ExperimentConfig c = experiment_preset(rc_preset);
            apply_overrides(c, rc_nx, rc_ny, rc_ne, rc_obs, rc_sigma2, rc_seed, rc_iters,
                            rc_eta, rc_stop);
            return cmd_reconstruct(c, rc_out, rc_quiet);
        }
        if (vf->parsed()) return cmd_verify();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
