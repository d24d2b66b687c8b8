#include "invar/cli/commands.hpp"

#include "invar/certify/certify.hpp"
#include "invar/certify/score.hpp"
#include "invar/eig/analytic.hpp"
#include "invar/eig/eigenpair.hpp"
#include "invar/pde/feynman_kac.hpp"
#include "invar/pde/field.hpp"
#include "invar/pde/series.hpp"
#include "invar/problem/validate.hpp"
#include "invar/sim/stats.hpp"
#include "invar/support/num_format.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>

namespace invar::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Session {
    RunConfig cfg;
    fs::path out;

    fs::path field_csv() const { return out / "field.csv"; }
    fs::path field_meta() const { return out / "field_meta.json"; }
    fs::path eigen_csv() const { return out / "eigen.csv"; }
    fs::path eigen_meta() const { return out / "eigen_meta.json"; }
    fs::path validation() const { return out / "validation.json"; }
    fs::path cert_report() const { return out / "certify_report.json"; }
    fs::path law_csv() const { return out / "control_law.csv"; }
    fs::path paths_csv() const { return out / "paths.csv"; }
    fs::path stats_json() const { return out / "sim_stats.json"; }
    fs::path summary() const { return out / "summary.json"; }
};

Session make_session(const RunConfig& config, const Options& opts) {
    Session s{config, fs::path(opts.out_dir.value_or(config.out_dir))};
    if (opts.seed) {
        s.cfg.mc.seed = *opts.seed;
        s.cfg.sim.seed = *opts.seed;
        s.cfg.eigen.seed = *opts.seed;
    }
    if (opts.stride) s.cfg.sim.stride = *opts.stride;
    fs::create_directories(s.out);
    return s;
}

[[noreturn]] void usage_error(const std::string& msg) { throw std::invalid_argument(msg); }

bool finite_horizon(const Session& s) { return s.cfg.problem->horizon.is_finite(); }

/// Closed-form h(t, x) for the series solver; throws a usage error when the
/// domain/target pair has no closed form. `min_time_to_go` is the smallest
/// positive horizon gap among the evaluated slices; it sets the truncation
/// order the auto rule must cover.
std::function<double(double, const Vec&)> make_series_h(const Session& s, double min_time_to_go,
                                                        int& truncation_used) {
    const ProblemSpec& spec = *s.cfg.problem;
    const double T = spec.horizon.T();
    if (spec.domain.is_rectangle()) {
        const auto& rect = spec.domain.as_rectangle();
        const Vec lo = rect.lower;
        const Vec ell = rect.upper - rect.lower;
        Vec b = ell;
        if (spec.target) {
            if (!spec.target->is_rectangle())
                usage_error("series solver on a rectangle needs a rectangular target");
            const auto& t = spec.target->as_rectangle();
            if (((t.lower - lo).cwiseAbs().maxCoeff()) > 1e-12 * ell.maxCoeff())
                usage_error("series solver needs the target anchored at the domain's lower corner");
            b = t.upper - lo;
            if ((b.array() > ell.array()).any())
                usage_error("series solver needs the target inside the domain");
        }
        const int fixed_m = s.cfg.truncation;
        truncation_used =
            fixed_m > 0 ? fixed_m : rect_truncation_order(ell.maxCoeff(), min_time_to_go);
        return [lo, ell, b, T, fixed_m](double t, const Vec& x) {
            const int m = fixed_m > 0 ? fixed_m : rect_truncation_order(ell.maxCoeff(), T - t);
            return h_rect_series(ell, b, T, t, (x - lo).eval(), m);
        };
    }
    if (spec.domain.is_disk()) {
        const auto& disk = spec.domain.as_disk();
        if (disk.center.cwiseAbs().maxCoeff() > 0.0)
            usage_error("series solver supports origin-centered disks only");
        if (!spec.target || !spec.target->is_annulus())
            usage_error("series solver on a disk needs an annular target");
        const auto& ring = spec.target->as_annulus();
        if (std::abs(ring.r2 - disk.radius) > 1e-12 * disk.radius)
            usage_error("series solver needs the annulus outer radius to match the disk");
        const int k = s.cfg.truncation > 0
                          ? s.cfg.truncation
                          : annulus_truncation_order(disk.radius, min_time_to_go);
        truncation_used = k;
        auto series = std::make_shared<AnnulusSeries>(ring.r1, ring.r2, k);
        return [series, T](double t, const Vec& x) { return series->value(T, t, x.norm()); };
    }
    usage_error("series solver supports rectangle and disk domains only");
}

/// Closed-form eigenpair for the analytic solver.
AnalyticEigenpair make_analytic_eigenpair(const Session& s) {
    const ProblemSpec& spec = *s.cfg.problem;
    if (spec.domain.is_rectangle()) {
        const auto& rect = spec.domain.as_rectangle();
        const Vec lo = rect.lower;
        AnalyticEigenpair anchored = analytic_eigenpair_rect((rect.upper - rect.lower).eval());
        if (lo.cwiseAbs().maxCoeff() == 0.0) return anchored;
        AnalyticEigenpair shifted;
        shifted.lambda0 = anchored.lambda0;
        shifted.psi0 = [anchored, lo](const Vec& x) { return anchored.psi0((x - lo).eval()); };
        shifted.grad_log_psi0 = [anchored, lo](const Vec& x) {
            return anchored.grad_log_psi0((x - lo).eval());
        };
        return shifted;
    }
    if (spec.domain.is_disk()) {
        const auto& disk = spec.domain.as_disk();
        if (disk.center.cwiseAbs().maxCoeff() > 0.0)
            usage_error("eigen-analytic supports origin-centered disks only");
        return analytic_eigenpair_disk(disk.radius);
    }
    if (spec.domain.is_weyl_chamber())
        return analytic_eigenpair_weyl(spec.domain.as_weyl_chamber().dimension);
    usage_error("eigen-analytic supports rectangle, disk, and Weyl-chamber domains");
}

/// Clamped score closure for analytic eigenpairs (used by simulate).
DriftFn make_analytic_score(const Session& s, const AnalyticEigenpair& pair) {
    const DynamicsField dynamics = s.cfg.problem->dynamics;
    return [dynamics, pair](double t, const Vec& x) {
        Vec score = sigma_to_Sigma(dynamics, t, x) * pair.grad_log_psi0(x);
        const double mag = score.norm();
        if (mag > kScoreClamp) score *= kScoreClamp / mag;
        return score;
    };
}

EigenPair sample_analytic_on_grid(const AnalyticEigenpair& pair, const Grid& grid) {
    EigenPair out;
    out.lambda0 = pair.lambda0;
    out.psi0.resize(static_cast<Eigen::Index>(grid.num_interior()));
    for (std::size_t r = 0; r < grid.num_interior(); ++r)
        out.psi0[static_cast<Eigen::Index>(r)] = pair.psi0(grid.node_coord(grid.interior_nodes()[r]));
    const double sup = out.psi0.cwiseAbs().maxCoeff();
    if (!(sup > 0.0)) usage_error("analytic eigenfunction vanished on every grid node");
    out.psi0 /= sup;
    return out;
}

void check_grid_matches_meta(const Grid& grid, const fs::path& meta_path) {
    std::ifstream in(meta_path);
    if (!in) usage_error("missing artifact " + meta_path.string() + "; run solve first");
    const json meta = json::parse(in);
    const auto counts = meta.at("grid").at("counts").get<std::vector<int>>();
    if (static_cast<int>(counts.size()) != grid.dim())
        usage_error("artifact grid does not match the config");
    for (int a = 0; a < grid.dim(); ++a)
        if (counts[a] != grid.counts()[a]) usage_error("artifact grid does not match the config");
}

ScoreField load_score(const Session& s, const Grid& grid) {
    if (finite_horizon(s)) {
        check_grid_matches_meta(grid, s.field_meta());
        const SpaceTimeField field = read_field_csv(grid, s.field_csv().string());
        return ScoreField::finite(field, grid, s.cfg.problem->dynamics);
    }
    check_grid_matches_meta(grid, s.eigen_meta());
    const EigenPair pair =
        read_eigenpair_csv(grid, s.eigen_csv().string(), s.eigen_meta().string());
    return ScoreField::infinite(pair.psi0, grid, s.cfg.problem->dynamics);
}

void append_if_present(json& doc, const char* key, const fs::path& path) {
    std::ifstream in(path);
    if (!in) return;
    doc[key] = nlohmann::ordered_json::parse(in);
}

}  // namespace

int cmd_validate(const RunConfig& config, const Options& opts, std::ostream& log) {
    const Session s = make_session(config, opts);
    const ValidationReport report = validate_spec(*s.cfg.problem, s.cfg.validate.samples,
                                                  s.cfg.validate.ellipticity_tol, s.cfg.mc.seed);
    json doc;
    doc["schema_version"] = 1;
    doc["kind"] = "validation_report";
    auto rows = json::array();
    for (const auto& c : report.checks) {
        const std::string status = c.status == CheckStatus::Pass   ? "PASS"
                                   : c.status == CheckStatus::Warn ? "WARN"
                                                                   : "FAIL";
        json row;
        row["name"] = c.name;
        row["status"] = status;
        row["detail"] = c.detail;
        row["value"] = c.value;
        if (c.witness.size() > 0)
            row["witness"] = std::vector<double>(c.witness.data(), c.witness.data() + c.witness.size());
        rows.push_back(std::move(row));
        log << "[" << status << "] " << c.name << (c.detail.empty() ? "" : ": " + c.detail)
            << "\n";
    }
    doc["checks"] = std::move(rows);
    std::ofstream out(s.validation());
    out << doc.dump(2) << '\n';

    if (report.any_fail()) return kExitValidationFailure;
    if (report.any_warn() && !opts.allow_warn) return kExitValidationFailure;
    return kExitOk;
}

int cmd_solve(const RunConfig& config, const Options& opts, std::ostream& log) {
    const Session s = make_session(config, opts);
    const ProblemSpec& spec = *s.cfg.problem;
    const Grid grid = Grid::over_domain(spec.domain, s.cfg.grid_spacing);

    switch (s.cfg.solver) {
        case SolverKind::Series: {
            auto times =
                graded_time_grid(spec.horizon.T(), s.cfg.time_slices, s.cfg.terminal_slices);
            const double min_gap = spec.horizon.T() - times[times.size() - 2];
            int truncation = 0;
            const auto h = make_series_h(s, min_gap, truncation);
            SpaceTimeField field = field_from_function(grid, spec, std::move(times), h);
            field.meta.solver = "series";
            field.meta.truncation = truncation;
            write_field_csv(field, grid, s.field_csv().string());
            write_field_meta(field, grid, s.field_meta().string());
            log << "solve: series field, " << field.num_slices() << " slices, "
                << grid.num_interior() << " interior nodes\n";
            return kExitOk;
        }
        case SolverKind::FeynmanKac: {
            SpaceTimeField field = feynman_kac_field(
                spec, grid,
                graded_time_grid(spec.horizon.T(), s.cfg.time_slices, s.cfg.terminal_slices),
                s.cfg.mc.n_paths, s.cfg.mc.dt, s.cfg.mc.seed, opts.threads);
            write_field_csv(field, grid, s.field_csv().string());
            write_field_meta(field, grid, s.field_meta().string());
            log << "solve: feynman-kac field, " << field.num_slices() << " slices, "
                << grid.num_interior() << " interior nodes, " << s.cfg.mc.n_paths
                << " paths/node\n";
            return kExitOk;
        }
        case SolverKind::EigenAnalytic: {
            const AnalyticEigenpair analytic = make_analytic_eigenpair(s);
            const EigenPair pair = sample_analytic_on_grid(analytic, grid);
            write_eigenpair_csv(pair, grid, s.eigen_csv().string());
            write_eigenpair_meta(pair, grid, s.cfg.eigen.seed, "eigen-analytic",
                                 s.eigen_meta().string());
            log << "solve: analytic eigenpair, lambda0 = " << format_double(pair.lambda0) << "\n";
            return kExitOk;
        }
        case SolverKind::EigenNumeric: {
            const GeneratorMatrix gen = discretize_generator(grid, spec.dynamics, 0.0);
            const EigenPair pair =
                principal_eigenpair(gen, s.cfg.eigen.tol, s.cfg.eigen.max_iter, s.cfg.eigen.seed);
            write_eigenpair_csv(pair, grid, s.eigen_csv().string());
            write_eigenpair_meta(pair, grid, s.cfg.eigen.seed, "eigen-numeric",
                                 s.eigen_meta().string());
            log << "solve: numeric eigenpair, lambda0 = " << format_double(pair.lambda0)
                << ", residual = " << format_double(pair.residual) << ", "
                << pair.iterations << " iterations\n";
            return kExitOk;
        }
    }
    return kExitUsage;
}

int cmd_certify(const RunConfig& config, const Options& opts, std::ostream& log) {
    const Session s = make_session(config, opts);
    const Grid grid = Grid::over_domain(s.cfg.problem->domain, s.cfg.grid_spacing);
    const ScoreField score = load_score(s, grid);
    const auto [report, law] = certify_problem(*s.cfg.problem, score, s.cfg.certify_tolerance);
    write_certification_json(report, s.cert_report().string());
    write_control_law_csv(law, grid.dim(), s.law_csv().string());
    const bool certified = report.verdict == Verdict::Certified;
    log << "certify: " << (certified ? "CERTIFIED" : "FALSIFIED") << ", "
        << report.nodes_checked << " nodes, max rel residual "
        << format_double(report.witness_rel_residual) << "\n";
    return certified ? kExitOk : kExitFalsified;
}

int cmd_simulate(const RunConfig& config, const Options& opts, std::ostream& log) {
    const Session s = make_session(config, opts);
    const ProblemSpec& spec = *s.cfg.problem;
    if (s.cfg.sim.n_paths < 1) usage_error("simulate: sim.n_paths must be >= 1");

    PathEnsemble ensemble;
    if (finite_horizon(s)) {
        const Grid grid = Grid::over_domain(spec.domain, s.cfg.grid_spacing);
        const ScoreField score = load_score(s, grid);
        ensemble = simulate_conditioned_finite(spec, score, s.cfg.sim.n_paths, s.cfg.sim.dt,
                                               s.cfg.sim.seed, s.cfg.sim.stride, opts.threads);
    } else if (s.cfg.solver == SolverKind::EigenAnalytic) {
        const AnalyticEigenpair pair = make_analytic_eigenpair(s);
        ensemble = simulate_conditioned_infinite(spec, make_analytic_score(s, pair),
                                                 s.cfg.sim.n_paths, s.cfg.sim.dt, s.cfg.sim.t_end,
                                                 s.cfg.sim.seed, s.cfg.sim.stride, opts.threads);
    } else {
        const Grid grid = Grid::over_domain(spec.domain, s.cfg.grid_spacing);
        const ScoreField score = load_score(s, grid);
        ensemble = simulate_conditioned_infinite(spec, score, s.cfg.sim.n_paths, s.cfg.sim.dt,
                                                 s.cfg.sim.t_end, s.cfg.sim.seed, s.cfg.sim.stride,
                                                 opts.threads);
    }

    write_paths_csv(ensemble, spec.dynamics.state_dim, s.paths_csv().string());
    const std::optional<Domain> target =
        spec.target ? spec.target
                    : (finite_horizon(s) ? std::optional<Domain>(spec.domain) : std::nullopt);
    const SimStats stats = exit_statistics(ensemble, spec.domain, target);
    write_stats_json(stats, ensemble, s.stats_json().string());
    log << "simulate: " << stats.n_paths << " paths, exit fraction "
        << format_double(stats.exit_fraction);
    if (stats.has_target)
        log << ", terminal-hit fraction " << format_double(stats.terminal_hit_fraction);
    log << "\n";
    return kExitOk;
}

int cmd_report(const RunConfig& config, const Options& opts, std::ostream& log) {
    const Session s = make_session(config, opts);
    json doc;
    doc["schema_version"] = 1;
    doc["kind"] = "summary";
    doc["solver"] = solver_name(s.cfg.solver);
    append_if_present(doc, "validation", s.validation());
    append_if_present(doc, "field_meta", s.field_meta());
    append_if_present(doc, "eigen_meta", s.eigen_meta());
    append_if_present(doc, "certification", s.cert_report());
    append_if_present(doc, "simulation", s.stats_json());
    if (doc.size() <= 3) {
        log << "report: no artifacts found in " << s.out.string() << "\n";
        return kExitUsage;
    }
    std::ofstream out(s.summary());
    out << doc.dump(2) << '\n';
    log << "report: wrote " << s.summary().string() << "\n";
    return kExitOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const std::string usage =
        "usage: invar <validate|solve|certify|simulate|report> --config <file>\n"
        "             [--out DIR] [--seed N] [--threads K] [--stride K] [--allow-warn]\n";
    if (args.empty()) {
        err << usage;
        return kExitUsage;
    }
    const std::string command = args[0];
    Options opts;
    for (std::size_t i = 1; i < args.size(); ++i) {
        const std::string& a = args[i];
        auto next = [&]() -> const std::string& {
            if (i + 1 >= args.size()) throw std::invalid_argument("missing value for " + a);
            return args[++i];
        };
        try {
            if (a == "--config") opts.config_path = next();
            else if (a == "--out") opts.out_dir = next();
            else if (a == "--seed") opts.seed = std::stoull(next());
            else if (a == "--threads") opts.threads = std::stoi(next());
            else if (a == "--stride") opts.stride = std::stoi(next());
            else if (a == "--allow-warn") opts.allow_warn = true;
            else {
                err << "unknown flag " << a << "\n" << usage;
                return kExitUsage;
            }
        } catch (const std::exception& e) {
            err << "bad argument: " << e.what() << "\n";
            return kExitUsage;
        }
    }
    if (opts.config_path.empty()) {
        err << "--config is required\n" << usage;
        return kExitUsage;
    }

    try {
        const RunConfig config = run_config_from_file(opts.config_path);
        if (command == "validate") return cmd_validate(config, opts, out);
        if (command == "solve") return cmd_solve(config, opts, out);
        if (command == "certify") return cmd_certify(config, opts, out);
        if (command == "simulate") return cmd_simulate(config, opts, out);
        if (command == "report") return cmd_report(config, opts, out);
        err << "unknown command '" << command << "'\n" << usage;
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace invar::cli
