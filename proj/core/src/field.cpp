#include "invar/pde/field.hpp"

#include "invar/support/num_format.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace invar {

void SpaceTimeField::enforce_probability_bounds(const Grid& grid) {
    constexpr double delta = 1e-6;
    const int last = num_slices() - 1;
    for (int j = 0; j < num_slices(); ++j) {
        Vec& v = slices[j];
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            if (!(v[i] > -delta && v[i] < 1.0 + delta))
                throw std::runtime_error("field value outside [0,1] probability band");
            v[i] = std::clamp(v[i], 0.0, 1.0);
            if (j < last && grid.is_boundary(static_cast<std::size_t>(i))) v[i] = 0.0;
        }
    }
}

bool terminal_indicator(const ProblemSpec& spec, const Vec& x) {
    const Domain& target = spec.target ? *spec.target : spec.domain;
    return target.classify(x) == Region::Interior;
}

std::vector<double> graded_time_grid(double T, int base_slices, int terminal_refinement) {
    if (base_slices < 2) throw std::invalid_argument("time grid needs at least 2 slices");
    std::vector<double> times(base_slices);
    for (int j = 0; j < base_slices; ++j)
        times[j] = T * static_cast<double>(j) / (base_slices - 1);
    times.back() = T;
    double gap = T / (base_slices - 1);
    std::vector<double> extra;
    for (int k = 0; k < terminal_refinement; ++k) {
        gap *= 0.5;
        extra.push_back(T - gap);
    }
    times.insert(times.end() - 1, extra.begin(), extra.end());
    return times;
}

SpaceTimeField field_from_function(const Grid& grid, const ProblemSpec& spec,
                                   std::vector<double> times,
                                   const std::function<double(double, const Vec&)>& h) {
    if (times.size() < 2) throw std::invalid_argument("field needs at least 2 time slices");
    if (!spec.horizon.is_finite()) throw std::invalid_argument("field requires a finite horizon");
    const int n_time_slices = static_cast<int>(times.size());

    SpaceTimeField field;
    field.times = std::move(times);

    field.slices.assign(n_time_slices, Vec::Zero(static_cast<Eigen::Index>(grid.num_nodes())));
    for (int j = 0; j < n_time_slices; ++j) {
        Vec& v = field.slices[j];
        const bool terminal = j == n_time_slices - 1;
        for (std::size_t node = 0; node < grid.num_nodes(); ++node) {
            const Vec x = grid.node_coord(node);
            if (terminal) {
                v[static_cast<Eigen::Index>(node)] = terminal_indicator(spec, x) ? 1.0 : 0.0;
            } else if (grid.is_interior(node)) {
                v[static_cast<Eigen::Index>(node)] = h(field.times[j], x);
            }
        }
    }
    field.enforce_probability_bounds(grid);
    return field;
}

SpaceTimeField field_from_function(const Grid& grid, const ProblemSpec& spec, int n_time_slices,
                                   const std::function<double(double, const Vec&)>& h) {
    return field_from_function(grid, spec,
                               graded_time_grid(spec.horizon.T(), n_time_slices, 0), h);
}

void write_field_csv(const SpaceTimeField& field, const Grid& grid, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "# schema_version 1\n";
    out << "t";
    for (int a = 0; a < grid.dim(); ++a) out << ",x" << (a + 1);
    out << ",value\n";
    for (std::size_t j = 0; j < field.times.size(); ++j) {
        for (std::size_t node = 0; node < grid.num_nodes(); ++node) {
            const Vec x = grid.node_coord(node);
            out << format_double(field.times[j]);
            for (int a = 0; a < grid.dim(); ++a) out << ',' << format_double(x[a]);
            out << ',' << format_double(field.slices[j][static_cast<Eigen::Index>(node)]) << '\n';
        }
    }
}

void write_field_meta(const SpaceTimeField& field, const Grid& grid, const std::string& path) {
    nlohmann::ordered_json meta;
    meta["schema_version"] = 1;
    meta["kind"] = "space_time_field";
    meta["solver"] = field.meta.solver;
    meta["seed"] = field.meta.seed;
    meta["dt"] = field.meta.dt;
    meta["n_paths"] = field.meta.n_paths;
    meta["truncation"] = field.meta.truncation;
    meta["n_time_slices"] = field.num_slices();
    meta["grid"]["counts"] = std::vector<int>(grid.counts().data(),
                                              grid.counts().data() + grid.counts().size());
    meta["grid"]["spacing"] = std::vector<double>(grid.spacing().data(),
                                                  grid.spacing().data() + grid.spacing().size());
    meta["grid"]["origin"] = std::vector<double>(grid.origin().data(),
                                                 grid.origin().data() + grid.origin().size());
    meta["grid"]["num_interior"] = grid.num_interior();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << meta.dump(2) << '\n';
}

SpaceTimeField read_field_csv(const Grid& grid, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    SpaceTimeField field;
    std::string line;
    std::size_t node = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 't') continue;
        std::istringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != static_cast<std::size_t>(grid.dim()) + 2)
            throw std::runtime_error("field CSV row width mismatch");
        const double t = row.front();
        if (field.times.empty() || t != field.times.back()) {
            if (!field.times.empty() && node != grid.num_nodes())
                throw std::runtime_error("field CSV slice is incomplete");
            field.times.push_back(t);
            field.slices.emplace_back(Vec::Zero(static_cast<Eigen::Index>(grid.num_nodes())));
            node = 0;
        }
        field.slices.back()[static_cast<Eigen::Index>(node)] = row.back();
        ++node;
    }
    if (field.times.empty() || node != grid.num_nodes())
        throw std::runtime_error("field CSV is empty or truncated");
    return field;
}

}  // namespace invar
