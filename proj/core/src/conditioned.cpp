#include "invar/sim/conditioned.hpp"

#include "invar/certify/dyson.hpp"
#include "invar/support/num_format.hpp"
#include "invar/support/parallel.hpp"
#include "invar/support/rng.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace invar {

namespace {

/// Shared closed-loop driver. Runs every path on its own substream,
/// classifying against `domain` at every step; stores strided snapshots.
PathEnsemble run_ensemble(const Domain& domain, const DriftFn& drift, const DiffusionFn& diffusion,
                          const Vec& x0, int n_paths, double dt, double t_end,
                          const std::optional<Domain>& target, std::uint64_t seed, int stride,
                          int threads) {
    if (n_paths < 1) throw std::invalid_argument("simulate: n_paths >= 1 required");
    if (!(dt > 0.0) || !(t_end > 0.0)) throw std::invalid_argument("simulate: dt, t_end > 0 required");

    PathEnsemble ensemble;
    ensemble.dt = dt;
    ensemble.t_end = t_end;
    ensemble.seed = seed;
    ensemble.stride = stride > 0 ? stride : (n_paths <= 100 ? 1 : 10);
    ensemble.paths.resize(n_paths);

    const auto n_steps = static_cast<long>(std::ceil(t_end / dt - 1e-12));

    parallel_for(static_cast<std::size_t>(n_paths), threads, [&](std::size_t p) {
        PhiloxRng rng(seed, PhiloxRng::stream_id(0, static_cast<std::uint32_t>(p)));
        PathEnsemble::Path path;
        Vec x = x0;
        path.steps.push_back(0);
        path.states.push_back(x);

        for (long k = 0; k < n_steps; ++k) {
            const double t = k * dt;
            const double step = std::min(dt, t_end - t);
            const Vec f = drift(t, x);
            const Mat sigma = diffusion(t, x);
            Vec noise(sigma.cols());
            for (Eigen::Index i = 0; i < noise.size(); ++i) noise[i] = rng.next_normal();
            x += f * step + std::sqrt(step) * (sigma * noise);
            if (!x.allFinite())
                throw std::runtime_error("simulate: non-finite state at step " + std::to_string(k + 1));

            const bool exited = domain.classify(x) != Region::Interior;
            const bool last = k + 1 == n_steps;
            if (exited || last || (k + 1) % ensemble.stride == 0) {
                path.steps.push_back(k + 1);
                path.states.push_back(x);
            }
            if (exited) {
                path.exit_step = k + 1;
                break;
            }
        }
        path.final_state = path.states.back();
        if (!path.exit_step && target)
            path.terminal_in_target = target->classify(path.final_state) == Region::Interior;
        ensemble.paths[p] = std::move(path);
    });
    return ensemble;
}

}  // namespace

PathEnsemble simulate_conditioned_finite(const ProblemSpec& spec, const ScoreField& score,
                                         int n_paths, double dt, std::uint64_t seed, int stride,
                                         int threads) {
    if (!spec.horizon.is_finite())
        throw std::invalid_argument("simulate_conditioned_finite: finite horizon required");
    const double T = spec.horizon.T();
    DriftFn drift = [&spec, &score](double t, const Vec& x) {
        return (spec.dynamics.drift(t, x) + score.sample(t, x)).eval();
    };
    DiffusionFn diffusion = [&spec](double t, const Vec& x) { return spec.dynamics.diffusion(t, x); };
    std::optional<Domain> target = spec.target ? spec.target : std::optional<Domain>(spec.domain);
    return run_ensemble(spec.domain, drift, diffusion, spec.x0, n_paths, dt, T, target, seed,
                        stride, threads);
}

PathEnsemble simulate_conditioned_infinite(const ProblemSpec& spec, const ScoreField& score,
                                           int n_paths, double dt, double t_end,
                                           std::uint64_t seed, int stride, int threads) {
    DriftFn score_fn = [&score](double t, const Vec& x) { return score.sample(t, x); };
    DriftFn drift = [&spec, score_fn](double t, const Vec& x) {
        return (spec.dynamics.drift(t, x) + score_fn(t, x)).eval();
    };
    DiffusionFn diffusion = [&spec](double t, const Vec& x) { return spec.dynamics.diffusion(t, x); };
    return run_ensemble(spec.domain, drift, diffusion, spec.x0, n_paths, dt, t_end, std::nullopt,
                        seed, stride, threads);
}

PathEnsemble simulate_conditioned_infinite(const ProblemSpec& spec, const DriftFn& score_fn,
                                           int n_paths, double dt, double t_end,
                                           std::uint64_t seed, int stride, int threads) {
    DriftFn drift = [&spec, &score_fn](double t, const Vec& x) {
        return (spec.dynamics.drift(t, x) + score_fn(t, x)).eval();
    };
    DiffusionFn diffusion = [&spec](double t, const Vec& x) { return spec.dynamics.diffusion(t, x); };
    return run_ensemble(spec.domain, drift, diffusion, spec.x0, n_paths, dt, t_end, std::nullopt,
                        seed, stride, threads);
}

PathEnsemble simulate_dyson(const Vec& x0, double dt, double t_end, int n_runs,
                            std::uint64_t seed, int stride, int threads) {
    const int n = static_cast<int>(x0.size());
    for (int i = 0; i + 1 < n; ++i)
        if (!(x0[i] < x0[i + 1]))
            throw std::invalid_argument("simulate_dyson: x0 must be strictly ordered");
    // Box is irrelevant for classification; make it generous around x0.
    const double span = std::max(1.0, (x0.maxCoeff() - x0.minCoeff())) * 50.0;
    const Domain chamber = Domain::weyl_chamber(
        n, Box{Vec::Constant(n, x0.minCoeff() - span), Vec::Constant(n, x0.maxCoeff() + span)});
    DriftFn drift = [](double, const Vec& x) { return dyson_drift(x); };
    DiffusionFn diffusion = [n](double, const Vec&) { return Mat::Identity(n, n).eval(); };
    return run_ensemble(chamber, drift, diffusion, x0, n_runs, dt, t_end, std::nullopt, seed,
                        stride, threads);
}

PathEnsemble simulate_prior(const ProblemSpec& spec, int n_paths, double dt, double t_end,
                            std::uint64_t seed, int stride, int threads) {
    DriftFn drift = [&spec](double t, const Vec& x) { return spec.dynamics.drift(t, x); };
    DiffusionFn diffusion = [&spec](double t, const Vec& x) { return spec.dynamics.diffusion(t, x); };
    std::optional<Domain> target =
        spec.target ? spec.target
                    : (spec.horizon.is_finite() ? std::optional<Domain>(spec.domain) : std::nullopt);
    return run_ensemble(spec.domain, drift, diffusion, spec.x0, n_paths, dt, t_end, target, seed,
                        stride, threads);
}

std::vector<DtRefinementRow> dt_refinement_check(const ProblemSpec& spec, const ScoreField& score,
                                                 const std::vector<double>& dts, int n_paths,
                                                 std::uint64_t seed, int threads) {
    if (dts.empty()) throw std::invalid_argument("dt_refinement_check: need at least one dt");
    std::vector<DtRefinementRow> rows;
    rows.reserve(dts.size());
    for (const double dt : dts) {
        const PathEnsemble ens =
            simulate_conditioned_finite(spec, score, n_paths, dt, seed, 0, threads);
        long exits = 0;
        for (const auto& p : ens.paths) exits += p.exit_step ? 1 : 0;
        const double frac = static_cast<double>(exits) / n_paths;
        rows.push_back({dt, frac, std::sqrt(frac * (1.0 - frac) / n_paths)});
    }
    return rows;
}

void write_paths_csv(const PathEnsemble& ensemble, int state_dim, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "# schema_version 1\n";
    out << "path_id,step,t";
    for (int a = 0; a < state_dim; ++a) out << ",x" << (a + 1);
    out << '\n';
    for (std::size_t p = 0; p < ensemble.paths.size(); ++p) {
        const auto& pp = ensemble.paths[p];
        for (std::size_t k = 0; k < pp.steps.size(); ++k) {
            out << p << ',' << pp.steps[k] << ','
                << format_double(std::min(pp.steps[k] * ensemble.dt, ensemble.t_end));
            for (int a = 0; a < state_dim; ++a) out << ',' << format_double(pp.states[k][a]);
            out << '\n';
        }
    }
}

}  // namespace invar
