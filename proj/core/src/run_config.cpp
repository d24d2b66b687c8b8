#include "invar/cli/run_config.hpp"

#include "invar/problem/spec_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace invar {

std::string solver_name(SolverKind kind) {
    switch (kind) {
        case SolverKind::Series: return "series";
        case SolverKind::FeynmanKac: return "feynman-kac";
        case SolverKind::EigenAnalytic: return "eigen-analytic";
        case SolverKind::EigenNumeric: return "eigen-numeric";
    }
    return "?";
}

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument("run config: " + msg); }

void check_keys(const json& obj, const std::string& where, std::set<std::string> allowed) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) bad("unknown key '" + key + "' in " + where);
}

SolverKind solver_from(const std::string& name) {
    if (name == "series") return SolverKind::Series;
    if (name == "feynman-kac") return SolverKind::FeynmanKac;
    if (name == "eigen-analytic") return SolverKind::EigenAnalytic;
    if (name == "eigen-numeric") return SolverKind::EigenNumeric;
    bad("unknown solver '" + name + "'");
}

}  // namespace

RunConfig run_config_from_json(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        bad(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) bad("root must be an object");
    check_keys(doc, "root",
               {"schema_version", "problem", "solver", "grid", "time_slices", "terminal_slices",
                "truncation", "mc", "sim", "eigen", "validate", "certify", "out_dir"});
    if (!doc.contains("problem")) bad("missing 'problem'");

    RunConfig cfg;
    cfg.problem = std::make_shared<ProblemSpec>(problem_spec_from_json(doc.at("problem").dump()));
    cfg.solver = solver_from(doc.value("solver", "series"));

    const bool finite = cfg.problem->horizon.is_finite();
    const bool finite_solver =
        cfg.solver == SolverKind::Series || cfg.solver == SolverKind::FeynmanKac;
    if (finite != finite_solver)
        bad("solver '" + solver_name(cfg.solver) + "' is incompatible with a " +
            (finite ? "finite" : "infinite") + " horizon");

    const int dim = cfg.problem->domain.dim();
    cfg.grid_spacing = Vec::Constant(dim, 0.05);
    if (doc.contains("grid")) {
        check_keys(doc.at("grid"), "grid", {"spacing"});
        const json& sp = doc.at("grid").at("spacing");
        if (sp.is_number()) {
            cfg.grid_spacing = Vec::Constant(dim, sp.get<double>());
        } else if (sp.is_array() && static_cast<int>(sp.size()) == dim) {
            for (int a = 0; a < dim; ++a) cfg.grid_spacing[a] = sp[a].get<double>();
        } else {
            bad("grid.spacing must be a number or a per-axis array");
        }
        if (!(cfg.grid_spacing.array() > 0.0).all()) bad("grid.spacing must be positive");
    }
    cfg.time_slices = doc.value("time_slices", cfg.time_slices);
    if (cfg.time_slices < 2) bad("time_slices must be >= 2");
    cfg.terminal_slices = doc.value("terminal_slices", 0);
    if (cfg.terminal_slices < 0) bad("terminal_slices must be >= 0");
    cfg.truncation = doc.value("truncation", 0);

    if (doc.contains("mc")) {
        check_keys(doc.at("mc"), "mc", {"n_paths", "dt", "seed"});
        cfg.mc.n_paths = doc.at("mc").value("n_paths", cfg.mc.n_paths);
        cfg.mc.dt = doc.at("mc").value("dt", cfg.mc.dt);
        cfg.mc.seed = doc.at("mc").value("seed", cfg.mc.seed);
    }
    if (doc.contains("sim")) {
        check_keys(doc.at("sim"), "sim", {"n_paths", "dt", "t_end", "seed", "stride"});
        cfg.sim.n_paths = doc.at("sim").value("n_paths", cfg.sim.n_paths);
        cfg.sim.dt = doc.at("sim").value("dt", cfg.sim.dt);
        cfg.sim.t_end = doc.at("sim").value("t_end", cfg.sim.t_end);
        cfg.sim.seed = doc.at("sim").value("seed", cfg.sim.seed);
        cfg.sim.stride = doc.at("sim").value("stride", cfg.sim.stride);
    }
    if (doc.contains("eigen")) {
        check_keys(doc.at("eigen"), "eigen", {"tol", "max_iter", "seed"});
        cfg.eigen.tol = doc.at("eigen").value("tol", cfg.eigen.tol);
        cfg.eigen.max_iter = doc.at("eigen").value("max_iter", cfg.eigen.max_iter);
        cfg.eigen.seed = doc.at("eigen").value("seed", cfg.eigen.seed);
    }
    if (doc.contains("validate")) {
        check_keys(doc.at("validate"), "validate", {"samples", "ellipticity_tol"});
        cfg.validate.samples = doc.at("validate").value("samples", cfg.validate.samples);
        cfg.validate.ellipticity_tol =
            doc.at("validate").value("ellipticity_tol", cfg.validate.ellipticity_tol);
    }
    if (doc.contains("certify")) {
        check_keys(doc.at("certify"), "certify", {"tolerance"});
        cfg.certify_tolerance = doc.at("certify").value("tolerance", cfg.certify_tolerance);
    }
    cfg.out_dir = doc.value("out_dir", cfg.out_dir);
    return cfg;
}

RunConfig run_config_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return run_config_from_json(ss.str());
}

}  // namespace invar
