#include "invar/certify/certify.hpp"
#include "invar/certify/dyson.hpp"
#include "invar/certify/hjb.hpp"
#include "invar/certify/range_test.hpp"
#include "invar/certify/score.hpp"
#include "invar/eig/analytic.hpp"
#include "invar/pde/series.hpp"
#include "invar/support/rng.hpp"

#include <doctest.h>

#include <Eigen/SVD>

#include <cmath>
#include <numbers>

using namespace invar;

namespace {

Vec v1(double a) { return Vec::Constant(1, a); }

Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

Vec sample_psi_interior(const Grid& grid, const std::function<double(const Vec&)>& psi) {
    Vec out(static_cast<Eigen::Index>(grid.num_interior()));
    for (std::size_t r = 0; r < grid.num_interior(); ++r)
        out[static_cast<Eigen::Index>(r)] = psi(grid.node_coord(grid.interior_nodes()[r]));
    return out;
}

}  // namespace

TEST_CASE("infinite-horizon score reproduces pi cot(pi x) off the boundary band") {
    const Grid grid = Grid::over_domain(Domain::hyper_rectangle(Vec::Zero(1), v1(1.0)), 1e-3);
    const auto pair = analytic_eigenpair_rect(v1(1.0));
    const Vec psi = sample_psi_interior(grid, pair.psi0);
    const ScoreField score = ScoreField::infinite(psi, grid, make_brownian(1));
    CHECK(score.time_invariant());

    for (std::size_t r = 0; r < grid.num_interior(); ++r) {
        const std::size_t node = grid.interior_nodes()[r];
        if (grid.interior_depth(node) < 5) continue;
        const double x = grid.node_coord(node)[0];
        const double expected = std::numbers::pi / std::tan(std::numbers::pi * x);
        if (std::abs(expected) > 0.9 * kScoreClamp) continue;
        CHECK(score.at_node(0, node)[0] ==
              doctest::Approx(expected).epsilon(1e-4).scale(std::max(1.0, std::abs(expected))));
    }
    // Midpoint score vanishes; odd symmetry about the center.
    const double mid = score.sample(0.0, v1(0.5))[0];
    CHECK(std::abs(mid) < 1e-9);
    for (double x : {0.2, 0.35, 0.45}) {
        CHECK(score.sample(0.0, v1(x))[0] ==
              doctest::Approx(-score.sample(0.0, v1(1.0 - x))[0]).epsilon(1e-9));
    }
}

TEST_CASE("scaling psi0 by a positive constant leaves the score unchanged") {
    const Grid grid = Grid::over_domain(Domain::hyper_rectangle(Vec::Zero(1), v1(1.0)), 0.01);
    const auto pair = analytic_eigenpair_rect(v1(1.0));
    const Vec psi = sample_psi_interior(grid, pair.psi0);
    const ScoreField base = ScoreField::infinite(psi, grid, make_brownian(1));

    const ScoreField doubled = ScoreField::infinite((4.0 * psi).eval(), grid, make_brownian(1));
    const ScoreField fracd = ScoreField::infinite((3.0 * psi).eval(), grid, make_brownian(1));
    for (std::size_t node : grid.interior_nodes()) {
        CHECK(base.at_node(0, node)[0] == doubled.at_node(0, node)[0]);  // power of two: exact
        CHECK(base.at_node(0, node)[0] ==
              doctest::Approx(fracd.at_node(0, node)[0]).epsilon(1e-14));
    }
}

TEST_CASE("disk score points inward along the radius") {
    const Grid grid = Grid::over_domain(Domain::disk(v2(0, 0), 1.0), 0.02);
    const auto pair = analytic_eigenpair_disk(1.0);
    Vec psi = sample_psi_interior(grid, pair.psi0);
    psi /= psi.maxCoeff();
    const ScoreField score = ScoreField::infinite(psi, grid, make_brownian(2));
    for (double r : {0.3, 0.5, 0.8}) {
        const Vec s = score.sample(0.0, v2(r, 0.0));
        CHECK(s[0] < 0.0);  // negative radial component: push toward the center
    }
}

TEST_CASE("spatially constant slice yields zero score; degenerate Sigma zeroes off-channels") {
    ProblemSpec spec(make_spring_damper(1.0, 1.0), Domain::hyper_rectangle(v2(0, 0), v2(2, 2)),
                     std::nullopt, Horizon::finite(1.0), v2(1, 1));
    const Grid grid = Grid::over_domain(spec.domain, 0.1);
    SpaceTimeField field;
    field.times = {0.0, 0.5, 1.0};
    field.slices.assign(3, Vec::Zero(static_cast<Eigen::Index>(grid.num_nodes())));
    // Constant over the interior, zero on the boundary band.
    for (int j = 0; j < 3; ++j)
        for (std::size_t node : grid.interior_nodes())
            field.slices[j][static_cast<Eigen::Index>(node)] = j == 2 ? 1.0 : 0.5;

    const ScoreField score = ScoreField::finite(field, grid, spec.dynamics);
    for (std::size_t node : grid.interior_nodes()) {
        // First component vanishes identically: Sigma restricts the score to
        // the noise channel.
        CHECK(score.at_node(0, node)[0] == 0.0);
        CHECK(score.at_node(1, node)[0] == 0.0);
        if (grid.interior_depth(node) >= 2) CHECK(score.at_node(1, node)[1] == 0.0);
    }
}

TEST_CASE("finite-horizon 1D score pushes inward near both walls") {
    const Vec ell = v1(std::numbers::pi);
    ProblemSpec spec(make_brownian(1), Domain::hyper_rectangle(Vec::Zero(1), ell), std::nullopt,
                     Horizon::finite(2.0), v1(1.0));
    const Grid grid = Grid::over_domain(spec.domain, std::numbers::pi / 200.0);
    SpaceTimeField field;
    field.times = {0.0, 1.0, 2.0};
    field.slices.assign(3, Vec::Zero(static_cast<Eigen::Index>(grid.num_nodes())));
    for (int j = 0; j < 3; ++j)
        for (std::size_t node : grid.interior_nodes()) {
            const double x = grid.node_coord(node)[0];
            field.slices[j][static_cast<Eigen::Index>(node)] =
                h_rect_series(ell, ell, 2.0, field.times[j], v1(x), 200);
        }
    const ScoreField score = ScoreField::finite(field, grid, spec.dynamics);
    CHECK(score.sample(0.0, v1(0.2))[0] > 0.0);
    CHECK(score.sample(0.0, v1(std::numbers::pi - 0.2))[0] < 0.0);
}

TEST_CASE("range_test pinned examples") {
    // Identity input matrix: unique controller u = s.
    {
        const Vec s = v2(0.7, -0.3);
        const auto rt = range_test(Mat::Identity(2, 2), s, 1e-6);
        CHECK(rt.in_range);
        CHECK(rt.residual <= 1e-12);
        CHECK((rt.u - s).norm() <= 1e-12);
        CHECK(rt.rank == 2);
        CHECK(rt.nullspace.cols() == 0);
    }
    // Orthogonal column: falsified with unit residual and zero min-norm u.
    {
        Mat g(2, 1);
        g << 0, 1;
        const auto rt = range_test(g, v2(1, 0), 1e-6);
        CHECK_FALSE(rt.in_range);
        CHECK(rt.residual == doctest::Approx(1.0));
        CHECK(rt.u.norm() <= 1e-12);
    }
    // Wide full-row-rank: pseudoinverse picks the shortest solution.
    {
        Mat g(1, 2);
        g << 1, 1;
        const auto rt = range_test(g, Vec::Constant(1, 2.0), 1e-6);
        CHECK(rt.in_range);
        CHECK(rt.u[0] == doctest::Approx(1.0));
        CHECK(rt.u[1] == doctest::Approx(1.0));
        CHECK(rt.nullspace.cols() == 1);
        CHECK((g * rt.nullspace).norm() <= 1e-10 * g.norm());
    }
    CHECK_THROWS_AS(range_test(Mat::Identity(2, 2), Vec::Constant(2, std::nan("")), 1e-6),
                    std::invalid_argument);
}

TEST_CASE("certify verdict agrees with a brute-force rank oracle on random nodes") {
    PhiloxRng rng(515, 0);
    auto random_mat = [&](int r, int c) {
        return Mat::NullaryExpr(r, c, [&](Eigen::Index, Eigen::Index) { return rng.next_normal(); });
    };
    int checked = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_uniform() * 2.001);  // 2..4
        const int m = 1 + static_cast<int>(rng.next_uniform() * 3.001);  // 1..4
        const int rank = 1 + static_cast<int>(rng.next_uniform() * (std::min(n, m) - 0.001));
        const Mat G = random_mat(n, rank) * random_mat(rank, m);
        const bool make_solvable = rng.next_uniform() < 0.5;
        Vec s;
        if (make_solvable) {
            s = G * random_mat(m, 1);
        } else {
            s = random_mat(n, 1);
        }
        const double tol = 1e-6;
        const auto rt = range_test(G, s, tol);

        // Oracle: rank([G | s]) == rank(G) iff s is in the range, with the
        // same singular-value cutoff.
        Mat augmented(n, m + 1);
        augmented << G, s;
        const auto rank_of = [&](const Mat& M) {
            Eigen::JacobiSVD<Mat> svd(M);
            const auto& sv = svd.singularValues();
            int r = 0;
            for (Eigen::Index i = 0; i < sv.size(); ++i)
                if (sv[i] > kRankCutoff * sv[0]) ++r;
            return r;
        };
        // Skip near-degenerate cases where both definitions hinge on noise.
        if (!make_solvable && rt.residual < 10 * tol * std::max(1.0, s.norm())) continue;
        ++checked;
        CHECK(rt.in_range == (rank_of(augmented) == rank_of(G)));
    }
    CHECK(checked >= 40);
}

TEST_CASE("min-norm solutions cannot be shortened along the nullspace") {
    PhiloxRng rng(616, 0);
    for (int trial = 0; trial < 30; ++trial) {
        Mat G = Mat::NullaryExpr(2, 3, [&](Eigen::Index, Eigen::Index) { return rng.next_normal(); });
        const Vec s = G * Vec::NullaryExpr(3, [&](Eigen::Index) { return rng.next_normal(); });
        const auto rt = range_test(G, s, 1e-8);
        REQUIRE(rt.in_range);
        for (int k = 0; k < rt.nullspace.cols(); ++k) {
            for (double a : {-1.0, -0.1, 0.1, 1.0}) {
                const Vec perturbed = rt.u + a * rt.nullspace.col(k);
                CHECK(perturbed.norm() >= rt.u.norm() - 1e-12);
            }
        }
    }
}

TEST_CASE("certify_problem on identity-input data certifies with u equal to the score") {
    const Vec ell = v1(1.0);
    ProblemSpec spec(make_brownian(1), Domain::hyper_rectangle(Vec::Zero(1), ell), std::nullopt,
                     Horizon::infinite(), v1(0.5));
    const Grid grid = Grid::over_domain(spec.domain, 0.01);
    const Vec psi = sample_psi_interior(grid, analytic_eigenpair_rect(ell).psi0);
    const ScoreField score = ScoreField::infinite(psi, grid, spec.dynamics);
    const auto [report, law] = certify_problem(spec, score, kCertifyTolDefault);
    CHECK(report.verdict == Verdict::Certified);
    CHECK(report.nodes_above_tol == 0);
    CHECK(report.full_row_rank_everywhere);
    for (const auto& node : law.nodes) CHECK(node.residual <= 1e-10);
}

TEST_CASE("zero input matrix is falsified with the score norm as witness residual") {
    DynamicsField dyn = make_brownian(1);
    dyn.input_matrix = [](double, const Vec&) { return Mat::Zero(1, 1).eval(); };
    ProblemSpec spec(dyn, Domain::hyper_rectangle(Vec::Zero(1), v1(1.0)), std::nullopt,
                     Horizon::infinite(), v1(0.5));
    const Grid grid = Grid::over_domain(spec.domain, 0.05);
    const Vec psi = sample_psi_interior(grid, analytic_eigenpair_rect(v1(1.0)).psi0);
    const ScoreField score = ScoreField::infinite(psi, grid, spec.dynamics);
    const auto [report, law] = certify_problem(spec, score, kCertifyTolDefault);
    CHECK(report.verdict == Verdict::Falsified);
    CHECK_FALSE(report.full_row_rank_everywhere);
    // Witness carries the untouched score norm.
    double max_norm = 0.0;
    for (std::size_t node : grid.interior_nodes())
        max_norm = std::max(max_norm, score.at_node(0, node).norm());
    CHECK(report.witness_abs_residual == doctest::Approx(max_norm));
}

TEST_CASE("hjb residual vanishes for the exact log-transform and flags corruption") {
    const Vec ell = v1(std::numbers::pi);
    ProblemSpec spec(make_brownian(1), Domain::hyper_rectangle(Vec::Zero(1), ell), std::nullopt,
                     Horizon::finite(1.0), v1(1.5));
    const Grid grid = Grid::over_domain(spec.domain, std::numbers::pi / 400.0);
    auto h_fn = [&](double t, const Vec& x) { return h_rect_series(ell, ell, 1.0, t, x, 300); };
    const SpaceTimeField field = field_from_function(grid, spec, 81, h_fn);
    const double residual = hjb_residual(field, grid, spec.dynamics, kScoreFloorRel, 0.3, 0.3);
    CHECK(residual <= 1e-2);

    // Deliberate corruption: h^2 is not a log-transform solution.
    SpaceTimeField corrupted = field;
    for (auto& slice : corrupted.slices) slice = slice.cwiseProduct(slice);
    const double bad = hjb_residual(corrupted, grid, spec.dynamics, kScoreFloorRel, 0.3, 0.3);
    CHECK(bad > 10.0 * residual);

    // Standing hypothesis guard: spring-damper has G G' = Sigma, the
    // single-input planar Brownian field does not.
    ProblemSpec mismatch(make_single_input_brownian(v2(0, 1)),
                         Domain::hyper_rectangle(v2(0, 0), v2(2, 2)), std::nullopt,
                         Horizon::finite(1.0), v2(1, 1));
    const Grid g2 = Grid::over_domain(mismatch.domain, 0.5);
    SpaceTimeField f2;
    f2.times = {0.0, 0.5, 1.0};
    f2.slices.assign(3, Vec::Ones(static_cast<Eigen::Index>(g2.num_nodes())));
    CHECK_THROWS_AS(hjb_residual(f2, g2, mismatch.dynamics), std::invalid_argument);
}

TEST_CASE("spatially constant field has zero hjb residual") {
    ProblemSpec spec(make_brownian(2), Domain::hyper_rectangle(v2(0, 0), v2(2, 2)), std::nullopt,
                     Horizon::finite(1.0), v2(1, 1));
    const Grid grid = Grid::over_domain(spec.domain, 0.1);
    SpaceTimeField field;
    field.times = {0.0, 0.5, 1.0};
    field.slices.assign(3, (0.5 * Vec::Ones(static_cast<Eigen::Index>(grid.num_nodes()))).eval());
    CHECK(hjb_residual(field, grid, spec.dynamics) == 0.0);
}

TEST_CASE("dyson drift matches pinned values and antisymmetry") {
    Vec x(3);
    x << 1, 2, 3;
    const Vec u = dyson_drift(x);
    CHECK(u[0] == doctest::Approx(-1.5));
    CHECK(u[1] == doctest::Approx(0.0));
    CHECK(u[2] == doctest::Approx(1.5));

    Vec pair = v2(0.3, 1.9);
    const Vec u2 = dyson_drift(pair);
    CHECK(u2[0] == doctest::Approx(1.0 / (0.3 - 1.9)));
    CHECK(u2[0] + u2[1] == doctest::Approx(0.0));

    PhiloxRng rng(8, 0);
    for (int k = 0; k < 20; ++k) {
        Vec y(4);
        y << rng.next_normal(), 2 + rng.next_normal(), 4 + rng.next_normal(), 6 + rng.next_normal();
        std::sort(y.data(), y.data() + 4);
        CHECK(dyson_drift(y).sum() == doctest::Approx(0.0).epsilon(1e-12));
    }
    Vec coincident(2);
    coincident << 1.0, 1.0;
    CHECK_THROWS_AS(dyson_drift(coincident), std::domain_error);
}

TEST_CASE("dyson drift is the gradient of log vandermonde") {
    PhiloxRng rng(9, 0);
    const double h = 1e-6;
    for (int k = 0; k < 100; ++k) {
        Vec x(3);
        x << -1.5 - rng.next_uniform(), rng.next_uniform() - 0.5, 1.5 + rng.next_uniform();
        const Vec u = dyson_drift(x);
        for (int a = 0; a < 3; ++a) {
            Vec p = x, m = x;
            p[a] += h;
            m[a] -= h;
            const double fd = (std::log(vandermonde(p)) - std::log(vandermonde(m))) / (2.0 * h);
            CHECK(u[a] == doctest::Approx(fd).epsilon(1e-8).scale(std::max(1.0, std::abs(u[a]))));
        }
    }
}
