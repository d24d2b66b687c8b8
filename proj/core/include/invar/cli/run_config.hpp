#pragma once

#include "invar/problem/problem_spec.hpp"

#include <cstdint>
#include <memory>
#include <string>

namespace invar {

enum class SolverKind { Series, FeynmanKac, EigenAnalytic, EigenNumeric };

std::string solver_name(SolverKind kind);

/// Whole-run document: problem spec, solver selection, discretization and
/// Monte Carlo parameters, certification tolerance, output directory.
/// Solver selection must match the horizon (series / feynman-kac need a
/// finite horizon, the eigen solvers an infinite one); unknown keys are
/// rejected.
struct RunConfig {
    std::shared_ptr<ProblemSpec> problem;
    SolverKind solver = SolverKind::Series;

    Vec grid_spacing;  // per-axis; scalar configs broadcast
    int time_slices = 33;
    int terminal_slices = 0;  // extra slices geometrically refining toward T
    int truncation = 0;       // 0: choose from the mode-decay rule per slice

    struct {
        int n_paths = 1000;
        double dt = 1e-3;
        std::uint64_t seed = 0;
    } mc;

    struct {
        int n_paths = 100;
        double dt = 1e-3;
        double t_end = 10.0;  // infinite-horizon runs stop here
        std::uint64_t seed = 0;
        int stride = 0;  // 0: auto (1 up to 100 paths, else 10)
    } sim;

    struct {
        double tol = 1e-10;
        int max_iter = 500;
        std::uint64_t seed = 0;
    } eigen;

    struct {
        int samples = 1000;
        double ellipticity_tol = 1e-12;
    } validate;

    double certify_tolerance = 1e-6;
    std::string out_dir = ".";
};

RunConfig run_config_from_json(const std::string& json_text);
RunConfig run_config_from_file(const std::string& path);

}  // namespace invar
