#include "invar/pde/bessel.hpp"
#include "invar/pde/carre_du_champ.hpp"
#include "invar/pde/field.hpp"
#include "invar/pde/generator.hpp"
#include "invar/pde/grid.hpp"
#include "invar/pde/quadrature.hpp"
#include "invar/pde/residual.hpp"
#include "invar/pde/series.hpp"
#include "invar/support/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace invar;

namespace {

Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

Vec v1(double a) { return Vec::Constant(1, a); }

}  // namespace

TEST_CASE("grid nodes reproduce origin + index * spacing and land on faces") {
    const Domain seg = Domain::hyper_rectangle(Vec::Zero(1), Vec::Constant(1, std::numbers::pi));
    const Grid g = Grid::over_domain(seg, std::numbers::pi / 10.0);
    CHECK(g.counts()[0] == 11);
    CHECK(g.num_interior() == 9);
    for (std::size_t i = 0; i < g.num_nodes(); ++i)
        CHECK(g.node_coord(i)[0] == g.origin()[0] + g.multi_index(i)[0] * g.spacing()[0]);
    CHECK(g.is_boundary(0));
    CHECK(g.is_boundary(10));
}

TEST_CASE("1D generator row is the textbook second-difference stencil") {
    const Domain seg = Domain::hyper_rectangle(Vec::Zero(1), Vec::Constant(1, 1.0));
    const double h = 0.1;
    const Grid g = Grid::over_domain(seg, h);
    const auto gen = discretize_generator(g, make_brownian(1), 0.0);
    const Mat dense = Mat(gen.L);
    const double c = 1.0 / (2.0 * h * h);
    for (int r = 0; r < dense.rows(); ++r) {
        CHECK(dense(r, r) == doctest::Approx(-2.0 * c));
        if (r > 0) CHECK(dense(r, r - 1) == doctest::Approx(c));
        if (r + 1 < dense.cols()) CHECK(dense(r, r + 1) == doctest::Approx(c));
    }
}

TEST_CASE("constant drift adds the central first-difference stencil") {
    const double h = 0.1, c_drift = 0.7;
    DynamicsField dyn = make_brownian(1);
    dyn.drift = [c_drift](double, const Vec&) { return Vec::Constant(1, c_drift); };
    const Grid g = Grid::over_domain(Domain::hyper_rectangle(Vec::Zero(1), Vec::Constant(1, 1.0)), h);
    const Mat dense = Mat(discretize_generator(g, dyn, 0.0).L);
    const double cs = 1.0 / (2.0 * h * h), cf = c_drift / (2.0 * h);
    const int r = 4;
    CHECK(dense(r, r - 1) == doctest::Approx(cs - cf));
    CHECK(dense(r, r + 1) == doctest::Approx(cs + cf));
    CHECK(dense(r, r) == doctest::Approx(-2.0 * cs));
}

TEST_CASE("generator applied to a linear function returns the drift component") {
    // f = (0.01 - x2, 0): L[x1] = f1. Central differences are exact on linears.
    const Grid g = Grid::over_domain(Domain::hyper_rectangle(v2(-1, -1), v2(1, 1)), 0.05);
    const auto gen = discretize_generator(g, make_linear_drift(0.01), 0.0);
    Vec phi(static_cast<Eigen::Index>(g.num_interior()));
    for (std::size_t r = 0; r < g.num_interior(); ++r)
        phi[static_cast<Eigen::Index>(r)] = g.node_coord(g.interior_nodes()[r])[0];
    const Vec lphi = apply_generator(gen, phi);
    for (std::size_t r = 0; r < g.num_interior(); ++r) {
        const std::size_t node = g.interior_nodes()[r];
        if (g.interior_depth(node) < 2) continue;  // stencil truncation rows
        const Vec x = g.node_coord(node);
        CHECK(lphi[static_cast<Eigen::Index>(r)] == doctest::Approx(0.01 - x[1]).epsilon(1e-10));
    }
}

TEST_CASE("generator with cross-correlated diffusion is exact on quadratics") {
    DynamicsField dyn;
    dyn.state_dim = dyn.input_dim = dyn.noise_dim = 2;
    dyn.drift = [](double, const Vec&) { return Vec::Zero(2).eval(); };
    dyn.input_matrix = [](double, const Vec&) { return Mat::Identity(2, 2).eval(); };
    Mat s(2, 2);
    s << 1.0, 0.3, 0.0, 0.8;  // Sigma has off-diagonal 0.3*0.8 terms
    dyn.diffusion = [s](double, const Vec&) { return s; };
    const Mat Sigma = s * s.transpose();

    const Grid g = Grid::over_domain(Domain::hyper_rectangle(v2(0, 0), v2(1, 1)), 0.1);
    const auto gen = discretize_generator(g, dyn, 0.0);
    // phi = x1 x2: L[phi] = Sigma_12 exactly, cross stencil is exact on bilinears.
    Vec phi(static_cast<Eigen::Index>(g.num_interior()));
    for (std::size_t r = 0; r < g.num_interior(); ++r) {
        const Vec x = g.node_coord(g.interior_nodes()[r]);
        phi[static_cast<Eigen::Index>(r)] = x[0] * x[1];
    }
    const Vec lphi = apply_generator(gen, phi);
    for (std::size_t r = 0; r < g.num_interior(); ++r) {
        if (g.interior_depth(g.interior_nodes()[r]) < 2) continue;
        CHECK(lphi[static_cast<Eigen::Index>(r)] == doctest::Approx(Sigma(0, 1)).epsilon(1e-10));
    }
}

TEST_CASE("apply_generator basics: zero input, sine eigenfunction, constant field") {
    const double ell = std::numbers::pi;
    const double h = ell / 200.0;
    const Grid g = Grid::over_domain(Domain::hyper_rectangle(Vec::Zero(1), v1(ell)), h);
    const auto gen = discretize_generator(g, make_brownian(1), 0.0);
    const auto n_int = static_cast<Eigen::Index>(g.num_interior());

    CHECK(apply_generator(gen, Vec::Zero(n_int)).norm() == 0.0);
    CHECK_THROWS_AS(apply_generator(gen, Vec::Zero(n_int + 1)), std::invalid_argument);

    // phi = sin(pi x / ell) is an eigenfunction: L phi = -(pi/ell)^2/2 phi.
    Vec phi(n_int);
    for (std::size_t r = 0; r < g.num_interior(); ++r)
        phi[static_cast<Eigen::Index>(r)] =
            std::sin(std::numbers::pi * g.node_coord(g.interior_nodes()[r])[0] / ell);
    const Vec lphi = apply_generator(gen, phi);
    const double rate = -0.5 * std::numbers::pi * std::numbers::pi / (ell * ell);
    for (Eigen::Index i = 0; i < n_int; ++i)
        CHECK(lphi[i] == doctest::Approx(rate * phi[i]).epsilon(5e-4));

    // Constant 1: zero except where the stencil is truncated by the boundary.
    const Vec lone = apply_generator(gen, Vec::Ones(n_int));
    for (std::size_t r = 0; r < g.num_interior(); ++r) {
        const auto i = static_cast<Eigen::Index>(r);
        if (g.interior_depth(g.interior_nodes()[r]) >= 2) {
            CHECK(lone[i] == 0.0);
        } else {
            CHECK(std::abs(lone[i]) > 0.0);
        }
    }
}

TEST_CASE("bessel_j matches pinned values and zero table") {
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(std::abs(bessel_j(0, 2.4048)) < 5e-5);
    CHECK(std::abs(bessel_j(0, 5.5201)) < 5e-5);
    CHECK(bessel_j(0, 2.4048) == doctest::Approx(1.3268284301e-5).epsilon(1e-4));

    const auto zeros = bessel_j0_zeros(7);
    CHECK(zeros[0] == doctest::Approx(2.4048255576957728).epsilon(1e-10));
    CHECK(zeros[1] == doctest::Approx(5.5200781102863106).epsilon(1e-10));
    CHECK(zeros[2] == doctest::Approx(8.6537279129110122).epsilon(1e-10));
    for (const double z : zeros) CHECK(std::abs(bessel_j(0, z)) <= 1e-10);
    for (std::size_t k = 1; k < zeros.size(); ++k) CHECK(zeros[k] > zeros[k - 1]);
    // Consecutive gaps approach pi.
    for (std::size_t k = 4; k < zeros.size(); ++k)
        CHECK(zeros[k] - zeros[k - 1] == doctest::Approx(std::numbers::pi).epsilon(0.02));
}

TEST_CASE("adaptive quadrature nails smooth integrals") {
    CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-12) ==
          doctest::Approx(2.0).epsilon(1e-11));
    CHECK(adaptive_simpson([](double x) { return std::exp(-x * x); }, -6.0, 6.0, 1e-12) ==
          doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-11));
}

TEST_CASE("annulus coefficients match the quadrature oracle") {
    const auto c = annulus_coefficients(1.0, 2.0, 3);
    // Frozen with an independent high-order quadrature at 1e-12 tolerance.
    CHECK(c[0] == doctest::Approx(0.83221866693385647).epsilon(1e-8));
    CHECK(c[1] == doctest::Approx(-1.7262708802036162).epsilon(1e-8));
    CHECK(c[2] == doctest::Approx(1.1343619083085906).epsilon(1e-8));
    CHECK_THROWS_AS(annulus_coefficients(2.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("annulus mode norms satisfy the closed-form weighted norm") {
    // int_0^r2 J0(z_k r / r2)^2 r dr = (r2^2 / 2) J1(z_k)^2.
    const double r2 = 2.0;
    const auto zeros = bessel_j0_zeros(4);
    for (const double zk : zeros) {
        const double num = adaptive_simpson(
            [&](double r) {
                const double j = bessel_j(0, zk * r / r2);
                return j * j * r;
            },
            0.0, r2, 1e-12);
        const double closed = 0.5 * r2 * r2 * bessel_j(1, zk) * bessel_j(1, zk);
        CHECK(num == doctest::Approx(closed).epsilon(1e-8));
    }
}

TEST_CASE("annulus coefficients approach the full-disk limit as r1 -> 0") {
    const double r2 = 2.0;
    const auto c = annulus_coefficients(1e-8, r2, 1);
    const double z1 = bessel_j0_zeros(1)[0];
    CHECK(c[0] == doctest::Approx(2.0 / (z1 * bessel_j(1, z1))).epsilon(1e-6));
}

TEST_CASE("rectangle series vanishes on faces and is symmetric for b = ell") {
    const Vec ell = v1(std::numbers::pi);
    const Vec b = v1(std::numbers::pi / 3.0);
    CHECK(h_rect_series(ell, b, 3.0, 1.0, v1(0.0), 100) == 0.0);
    CHECK(h_rect_series(ell, b, 3.0, 1.0, v1(std::numbers::pi), 100) == doctest::Approx(0.0).epsilon(1e-12));

    for (double x : {0.3, 0.9, 1.4}) {
        const double a = h_rect_series(ell, ell, 2.0, 0.5, v1(x), 200);
        const double bb = h_rect_series(ell, ell, 2.0, 0.5, v1(std::numbers::pi - x), 200);
        CHECK(a == doctest::Approx(bb).epsilon(1e-10));
    }
    CHECK_THROWS_AS(h_rect_series(ell, b, 1.0, 2.0, v1(1.0), 10), std::invalid_argument);
    CHECK_THROWS_AS(h_rect_series(ell, b, 1.0, 0.0, v1(4.0), 10), std::invalid_argument);
}

TEST_CASE("rectangle series pins the frozen midpoint value") {
    // Independent 30-digit evaluation of the 1D sum, ell = pi, b = pi/3,
    // T - t = 3, x = pi/2.
    const double h = h_rect_series(v1(std::numbers::pi), v1(std::numbers::pi / 3.0), 3.0, 0.0,
                                   v1(std::numbers::pi / 2.0), 200);
    CHECK(h == doctest::Approx(0.071023954027910021).epsilon(1e-12));
}

TEST_CASE("rectangle series is nonincreasing in the horizon") {
    const Vec ell = v1(1.0);
    double prev = 1.0;
    for (double gap = 0.05; gap <= 3.0; gap += 0.05) {
        const double h = h_rect_series(ell, ell, gap, 0.0, v1(0.3), 400);
        CHECK(h <= prev + 1e-12);
        prev = h;
    }
}

TEST_CASE("annulus series vanishes at the rim and is mode-1 dominated for long gaps") {
    AnnulusSeries series(1.0, 2.0, 60);
    CHECK(series.value(1.0, 0.5, 2.0) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK_THROWS_AS(series.value(1.0, 0.5, 2.5), std::invalid_argument);

    // For T - t = 3 the k = 1 mode dominates: shape proportional to J0.
    const double z1 = series.zeros()[0];
    const double ref = series.value(3.0, 0.0, 1.0) / bessel_j(0, z1 * 1.0 / 2.0);
    for (double r : {0.3, 0.6, 1.3, 1.6}) {
        const double shape = series.value(3.0, 0.0, r) / bessel_j(0, z1 * r / 2.0);
        CHECK(shape == doctest::Approx(ref).epsilon(0.01));
    }
}

TEST_CASE("pde residual of series fields shrinks at second order") {
    const Vec ell = v1(std::numbers::pi);
    const Vec b = v1(std::numbers::pi / 3.0);
    ProblemSpec spec(make_brownian(1), Domain::hyper_rectangle(Vec::Zero(1), ell),
                     Domain::hyper_rectangle(Vec::Zero(1), b), Horizon::finite(1.0),
                     v1(1.5));
    auto h_fn = [&](double t, const Vec& x) { return h_rect_series(ell, b, 1.0, t, x, 400); };

    auto residual_at = [&](double h_space, int slices) {
        const Grid g = Grid::over_domain(spec.domain, h_space);
        const SpaceTimeField f = field_from_function(g, spec, slices, h_fn);
        return pde_residual(f, g, spec.dynamics, 0.3);
    };
    const double coarse = residual_at(std::numbers::pi / 100.0, 41);
    const double fine = residual_at(std::numbers::pi / 200.0, 81);
    CHECK(fine <= 1e-3);
    CHECK(coarse / fine >= 3.0);

    // Constant-in-space field with zero drift: residual only reflects the
    // time derivative, zero for a time-constant field away from truncation.
    const Grid g = Grid::over_domain(spec.domain, std::numbers::pi / 50.0);
    SpaceTimeField constant;
    constant.times = {0.0, 0.5, 1.0};
    constant.slices.assign(3, Vec::Ones(static_cast<Eigen::Index>(g.num_nodes())));
    double worst_deep = 0.0;
    {
        const auto gen = discretize_generator(g, spec.dynamics, 0.5);
        Vec interior = Vec::Ones(static_cast<Eigen::Index>(g.num_interior()));
        const Vec lh = apply_generator(gen, interior);
        for (std::size_t r = 0; r < g.num_interior(); ++r)
            if (g.interior_depth(g.interior_nodes()[r]) >= 2)
                worst_deep = std::max(worst_deep, std::abs(lh[static_cast<Eigen::Index>(r)]));
    }
    CHECK(worst_deep == 0.0);
    CHECK_THROWS_AS(pde_residual(SpaceTimeField{}, g, spec.dynamics), std::invalid_argument);
}

TEST_CASE("vandermonde evaluates the pinned determinants") {
    Vec x(3);
    x << 1, 2, 3;
    CHECK(vandermonde(x) == 2.0);
    Vec y(2);
    y << 0, 1;
    CHECK(vandermonde(y) == 1.0);
    Vec z(3);
    z << 1, 1, 3;
    CHECK(vandermonde(z) == 0.0);
    CHECK_THROWS_AS(vandermonde(Vec::Zero(1)), std::invalid_argument);
}

TEST_CASE("vandermonde is discretely harmonic on the chamber") {
    // Central second differences are exact on cubics, so the lattice
    // Laplacian of the n = 3 determinant vanishes identically.
    PhiloxRng rng(2024, 0);
    const double h = 0.05;
    for (int k = 0; k < 100; ++k) {
        Vec x(3);
        x << -1.0 - rng.next_uniform(), rng.next_uniform() - 0.4, 1.0 + rng.next_uniform();
        double lap = 0.0;
        for (int a = 0; a < 3; ++a) {
            Vec p = x, m = x;
            p[a] += h;
            m[a] -= h;
            lap += (vandermonde(p) - 2.0 * vandermonde(x) + vandermonde(m)) / (h * h);
        }
        CHECK(std::abs(lap) <= 1e-9);
    }
}

TEST_CASE("carre du champ identity holds exactly and ignores the drift") {
    PhiloxRng rng(31, 0);
    const int n = 3;
    auto random_quadratic = [&]() {
        Quadratic q;
        q.c = rng.next_normal();
        q.g = Vec::NullaryExpr(n, [&](Eigen::Index) { return rng.next_normal(); });
        Mat h = Mat::NullaryExpr(n, n, [&](Eigen::Index, Eigen::Index) { return rng.next_normal(); });
        q.H = 0.5 * (h + h.transpose());
        return q;
    };
    for (int trial = 0; trial < 100; ++trial) {
        Mat a = Mat::NullaryExpr(n, n, [&](Eigen::Index, Eigen::Index) { return rng.next_normal(); });
        const Mat Sigma = a * a.transpose() + 0.1 * Mat::Identity(n, n);
        const Mat A = Mat::NullaryExpr(n, n, [&](Eigen::Index, Eigen::Index) { return rng.next_normal(); });
        const Vec b = Vec::NullaryExpr(n, [&](Eigen::Index) { return rng.next_normal(); });
        const Quadratic phi = random_quadratic();
        const Quadratic psi = random_quadratic();
        const Vec x = Vec::NullaryExpr(n, [&](Eigen::Index) { return rng.next_normal(); });

        const auto pair = carre_du_champ_check(Sigma, A, b, phi, psi, x);
        const double scale = std::max({1.0, std::abs(pair.lhs), std::abs(pair.rhs)});
        CHECK(std::abs(pair.lhs - pair.rhs) <= 1e-12 * scale);

        // Drift independence: a different linear drift leaves both sides alone.
        const Mat A2 = Mat::NullaryExpr(n, n, [&](Eigen::Index, Eigen::Index) { return rng.next_normal(); });
        const auto pair2 = carre_du_champ_check(Sigma, A2, (2.0 * b).eval(), phi, psi, x);
        CHECK(std::abs(pair2.lhs - pair.lhs) <= 1e-12 * scale);
    }
}

TEST_CASE("carre du champ pinned simple cases") {
    const int n = 2;
    Quadratic x1;  // phi(x) = x1
    x1.c = 0.0;
    x1.g = v2(1, 0);
    x1.H = Mat::Zero(n, n);
    const auto pair = carre_du_champ_check(Mat::Identity(n, n), Mat::Zero(n, n), Vec::Zero(n),
                                           x1, x1, v2(0.3, -0.7));
    CHECK(pair.lhs == doctest::Approx(0.5));
    CHECK(pair.rhs == doctest::Approx(0.5));

    Quadratic q1, q2;  // x1^2 and x2^2 under diagonal Sigma: orthogonal gradients
    q1.c = q2.c = 0.0;
    q1.g = Vec::Zero(n);
    q2.g = Vec::Zero(n);
    q1.H = Mat::Zero(n, n);
    q2.H = Mat::Zero(n, n);
    q1.H(0, 0) = 2.0;
    q2.H(1, 1) = 2.0;
    Mat diag = Mat::Zero(n, n);
    diag(0, 0) = 2.0;
    diag(1, 1) = 3.0;
    const auto pair2 = carre_du_champ_check(diag, Mat::Zero(n, n), Vec::Zero(n), q1, q2, v2(1.5, -2.5));
    CHECK(pair2.lhs == doctest::Approx(0.0));
    CHECK(pair2.rhs == doctest::Approx(0.0));
}

TEST_CASE("field enforces bounds and boundary zeros; CSV round-trips") {
    const Vec ell = v1(1.0);
    ProblemSpec spec(make_brownian(1), Domain::hyper_rectangle(Vec::Zero(1), ell), std::nullopt,
                     Horizon::finite(1.0), v1(0.5));
    const Grid g = Grid::over_domain(spec.domain, 0.05);
    auto h_fn = [&](double t, const Vec& x) { return h_rect_series(ell, ell, 1.0, t, x, 100); };
    SpaceTimeField f = field_from_function(g, spec, 5, h_fn);

    for (int j = 0; j < f.num_slices(); ++j)
        for (Eigen::Index i = 0; i < f.slices[j].size(); ++i) {
            CHECK(f.slices[j][i] >= 0.0);
            CHECK(f.slices[j][i] <= 1.0);
        }
    // Terminal slice is the exact indicator; interior nodes of X_T = X get 1.
    for (std::size_t node = 0; node < g.num_nodes(); ++node) {
        const double v = f.slices.back()[static_cast<Eigen::Index>(node)];
        CHECK((v == 0.0 || v == 1.0));
        if (g.is_boundary(node)) {
            for (int j = 0; j + 1 < f.num_slices(); ++j)
                CHECK(f.slices[j][static_cast<Eigen::Index>(node)] == 0.0);
        }
    }

    const std::string path = "field_roundtrip_test.csv";
    write_field_csv(f, g, path);
    const SpaceTimeField back = read_field_csv(g, path);
    REQUIRE(back.num_slices() == f.num_slices());
    for (int j = 0; j < f.num_slices(); ++j)
        CHECK((back.slices[j] - f.slices[j]).cwiseAbs().maxCoeff() == 0.0);
    std::remove(path.c_str());
}
