#include "invar/eig/eigenpair.hpp"

#include "invar/support/num_format.hpp"
#include "invar/support/rng.hpp"

#include <Eigen/SparseLU>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace invar {

namespace {

double residual_inf(const Eigen::SparseMatrix<double>& A, const Vec& v, double lambda) {
    return (A * v - lambda * v).cwiseAbs().maxCoeff() / v.cwiseAbs().maxCoeff();
}

}  // namespace

EigenPair principal_eigenpair(const GeneratorMatrix& gen, double tol, int max_iter,
                              std::uint64_t seed) {
    const Eigen::Index n = gen.L.rows();
    if (n == 0 || gen.L.cols() != n)
        throw std::invalid_argument("principal_eigenpair: generator must be square and nonempty");
    if (!(tol > 0.0) || max_iter < 1)
        throw std::invalid_argument("principal_eigenpair: bad tolerance or iteration budget");

    Eigen::SparseMatrix<double> A = (-gen.L).eval();
    A.makeCompressed();

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("principal_eigenpair: singular factorization (lambda = 0?)");

    // Strictly positive start guarantees overlap with the positive principal mode.
    PhiloxRng rng(seed, /*stream=*/0x9e1);
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + 0.01 * rng.next_uniform();
    v /= v.norm();

    double lambda = v.dot(A * v);
    int used = 0;
    bool converged = false;
    for (int it = 1; it <= max_iter; ++it) {
        Vec w = lu.solve(v);
        if (!w.allFinite()) throw std::runtime_error("principal_eigenpair: solve produced non-finite");
        w /= w.norm();
        const double lambda_new = w.dot(A * w) / w.squaredNorm();
        const bool lambda_settled = std::abs(lambda_new - lambda) < tol;
        lambda = lambda_new;
        v = std::move(w);
        used = it;
        if (lambda_settled && residual_inf(A, v, lambda) < 10.0 * tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw std::runtime_error("principal_eigenpair: no convergence in " +
                                 std::to_string(max_iter) + " iterations");

    // Sup-normalize with the max-magnitude entry positive.
    Eigen::Index arg_max = 0;
    v.cwiseAbs().maxCoeff(&arg_max);
    v /= v[arg_max];

    if (!(v.minCoeff() > 0.0))
        throw std::runtime_error(
            "principal_eigenpair: converged mode changes sign; not the principal eigenfunction");

    EigenPair pair;
    pair.lambda0 = lambda;
    pair.psi0 = std::move(v);
    pair.residual = residual_inf(A, pair.psi0, lambda);
    pair.iterations = used;
    return pair;
}

void write_eigenpair_csv(const EigenPair& pair, const Grid& grid, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "# schema_version 1\n";
    for (int a = 0; a < grid.dim(); ++a) out << (a ? "," : "") << "x" << (a + 1);
    out << ",psi0\n";
    for (std::size_t r = 0; r < grid.num_interior(); ++r) {
        const Vec x = grid.node_coord(grid.interior_nodes()[r]);
        for (int a = 0; a < grid.dim(); ++a) out << (a ? "," : "") << format_double(x[a]);
        out << ',' << format_double(pair.psi0[static_cast<Eigen::Index>(r)]) << '\n';
    }
}

void write_eigenpair_meta(const EigenPair& pair, const Grid& grid, std::uint64_t seed,
                          const std::string& solver, const std::string& path) {
    nlohmann::ordered_json meta;
    meta["schema_version"] = 1;
    meta["kind"] = "eigenpair";
    meta["solver"] = solver;
    meta["lambda0"] = pair.lambda0;
    meta["residual"] = pair.residual;
    meta["iterations"] = pair.iterations;
    meta["seed"] = seed;
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

EigenPair read_eigenpair_csv(const Grid& grid, const std::string& csv_path,
                             const std::string& meta_path) {
    EigenPair pair;
    {
        std::ifstream meta_in(meta_path);
        if (!meta_in) throw std::runtime_error("cannot open " + meta_path);
        nlohmann::json meta = nlohmann::json::parse(meta_in);
        pair.lambda0 = meta.at("lambda0").get<double>();
        pair.residual = meta.at("residual").get<double>();
        pair.iterations = meta.at("iterations").get<int>();
    }
    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open " + csv_path);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
        const auto pos = line.find_last_of(',');
        values.push_back(std::stod(line.substr(pos + 1)));
    }
    if (values.size() != grid.num_interior())
        throw std::runtime_error("eigenpair CSV does not match the grid interior");
    pair.psi0 = Eigen::Map<Vec>(values.data(), static_cast<Eigen::Index>(values.size()));
    return pair;
}

}  // namespace invar
