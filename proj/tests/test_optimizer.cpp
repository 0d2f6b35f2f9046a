#include <doctest.h>

#include <cmath>

#include "l2dwk/optimizer.hpp"
#include "test_util.hpp"

using namespace l2dwk;

namespace {

Matrix random_symmetric(Rng& rng, int l, double scale) {
    Matrix h(l, l);
    for (int i = 0; i < l; ++i)
        for (int j = i; j < l; ++j) {
            const double v = scale * (2.0 * rng.unit() - 1.0);
            h.at(i, j) = v;
            h.at(j, i) = v;
        }
    return h;
}

Matrix random_psd(Rng& rng, int l, double scale) {
    Matrix a(l, l);
    for (double& v : a.data) v = scale * (2.0 * rng.unit() - 1.0);
    Matrix h(l, l);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) {
            double s = 0.0;
            for (int k = 0; k < l; ++k) s += a.at(k, i) * a.at(k, j);
            h.at(i, j) = s;
        }
    return h;
}

Matrix random_indefinite(Rng& rng, int l, double scale) {
    for (;;) {
        Matrix h = random_symmetric(rng, l, scale);
        if (testutil::min_eigenvalue(h) < -0.05) return h;
    }
}

std::vector<double> random_vector(Rng& rng, int l, double scale) {
    std::vector<double> q(l);
    for (double& v : q) v = scale * (2.0 * rng.unit() - 1.0);
    return q;
}

}  // namespace

TEST_CASE("project_simplex hand cases") {
    const ClassifierWeights symmetric = project_simplex({0.6, 0.6});
    CHECK(symmetric.w[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(symmetric.w[1] == doctest::Approx(0.5).epsilon(1e-12));

    const ClassifierWeights clipped = project_simplex({1.5, -0.5});
    CHECK(clipped.w[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(clipped.w[1] == doctest::Approx(0.0));
}

TEST_CASE("project_simplex is the identity on feasible points and always feasible") {
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const int l = 1 + static_cast<int>(rng.below(8));
        const std::vector<double> p = testutil::random_simplex(rng, l);
        const ClassifierWeights projected = project_simplex(p);
        for (int j = 0; j < l; ++j)
            CHECK(std::abs(projected.w[j] - p[j]) <= 1e-12);

        const std::vector<double> arbitrary = random_vector(rng, l, 3.0);
        const ClassifierWeights w = project_simplex(arbitrary);
        w.validate();
    }
}

TEST_CASE("linear objectives pick the best vertex") {
    QuadraticObjective obj({-1.0, 1.0}, Matrix(2, 2));
    SolverOptions opts;
    const auto [w, f] = solve_simplex_qp(obj, opts);
    CHECK(w.w[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(f == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("identity quadratic term yields the barycenter") {
    Matrix eye(3, 3);
    for (int i = 0; i < 3; ++i) eye.at(i, i) = 1.0;
    QuadraticObjective obj({0.0, 0.0, 0.0}, std::move(eye));
    const auto [w, f] = solve_simplex_qp(obj, SolverOptions{});
    for (int j = 0; j < 3; ++j) CHECK(w.w[j] == doctest::Approx(1.0 / 3).epsilon(1e-7));
    CHECK(f == doctest::Approx(1.0 / 3).epsilon(1e-9));
}

TEST_CASE("brute force enumerator basics") {
    QuadraticObjective obj({-1.0, 1.0}, Matrix(2, 2));
    const auto [w, f] = brute_force_simplex(obj, 0.5);
    CHECK(w.w[0] == doctest::Approx(1.0));
    CHECK(f == doctest::Approx(-1.0));

    CHECK_THROWS_AS(brute_force_simplex(obj, 0.3), std::invalid_argument);
    QuadraticObjective big(std::vector<double>(5, 0.0), Matrix(5, 5));
    CHECK_THROWS_AS(brute_force_simplex(big, 0.5), std::invalid_argument);
}

TEST_CASE("solver matches the grid oracle on random 3x3 instances") {
    Rng rng(42);
    SolverOptions opts;
    for (int trial = 0; trial < 100; ++trial) {
        const bool psd = trial % 2 == 0;
        Matrix h = psd ? random_psd(rng, 3, 1.5) : random_indefinite(rng, 3, 1.5);
        QuadraticObjective obj(random_vector(rng, 3, 2.0), std::move(h));
        opts.seed = trial;
        const auto [w, f] = solve_simplex_qp(obj, opts);
        const auto [bw, bf] = brute_force_simplex(obj, 0.01);
        CHECK(f <= bf + 1e-3);
        if (psd) {
            // convex case: the solver is near exact, so it bounds the lattice
            CHECK(f <= bf + 1e-6);
        }
        w.validate();
    }
}

TEST_CASE("returned objective never exceeds any canonical start") {
    Rng rng(43);
    for (int trial = 0; trial < 40; ++trial) {
        const int l = 2 + static_cast<int>(rng.below(5));
        Matrix h = random_symmetric(rng, l, 2.0);
        QuadraticObjective obj(random_vector(rng, l, 2.0), std::move(h));
        const auto [w, f] = solve_simplex_qp(obj, SolverOptions{});
        CHECK(f <= obj.value(std::vector<double>(l, 1.0 / l)) + 1e-12);
        for (int j = 0; j < l; ++j) {
            std::vector<double> v(l, 0.0);
            v[j] = 1.0;
            CHECK(f <= obj.value(v) + 1e-12);
        }
    }
}

TEST_CASE("scaling the objective leaves the argmin unchanged") {
    Rng rng(44);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix h = random_psd(rng, 3, 1.0);
        const std::vector<double> q = random_vector(rng, 3, 1.0);
        QuadraticObjective obj(q, h);
        Matrix h3 = h;
        for (double& v : h3.data) v *= 3.0;
        std::vector<double> q3 = q;
        for (double& v : q3) v *= 3.0;
        QuadraticObjective scaled(std::move(q3), std::move(h3));
        const auto [w1, f1] = solve_simplex_qp(obj, SolverOptions{});
        const auto [w2, f2] = solve_simplex_qp(scaled, SolverOptions{});
        // argmin invariance up to the first-order solver's positional accuracy
        for (int j = 0; j < 3; ++j) CHECK(std::abs(w1.w[j] - w2.w[j]) <= 1e-4);
        CHECK(f2 == doctest::Approx(3.0 * f1).epsilon(1e-6));
    }
}

TEST_CASE("non-finite objectives are rejected") {
    QuadraticObjective bad_q({std::nan(""), 0.0}, Matrix(2, 2));
    CHECK_THROWS_AS(solve_simplex_qp(bad_q, SolverOptions{}), std::invalid_argument);
    Matrix h(2, 2);
    h.at(0, 1) = std::numeric_limits<double>::infinity();
    QuadraticObjective bad_h({0.0, 0.0}, std::move(h));
    CHECK_THROWS_AS(solve_simplex_qp(bad_h, SolverOptions{}), std::invalid_argument);
}

TEST_CASE("objective construction symmetrizes H and checks dimensions") {
    Matrix h(2, 2);
    h.at(0, 1) = 1.0;
    h.at(1, 0) = 3.0;
    QuadraticObjective obj({0.0, 0.0}, std::move(h));
    CHECK(obj.H.at(0, 1) == doctest::Approx(2.0));
    CHECK(obj.H.at(1, 0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(QuadraticObjective({0.0, 0.0}, Matrix(3, 3)), std::invalid_argument);
}

TEST_CASE("PSD diagnostics agree with the eigenvalue oracle") {
    Rng rng(45);
    SolverOptions opts;
    for (int trial = 0; trial < 10; ++trial) {
        Matrix psd = random_psd(rng, 4, 1.0);
        for (int i = 0; i < 4; ++i) psd.at(i, i) += 0.1;
        QuadraticObjective convex(random_vector(rng, 4, 1.0), psd);
        SolverDiagnostics diag;
        solve_simplex_qp(convex, opts, &diag);
        CHECK(diag.hessian_psd);
        CHECK(std::abs(diag.min_eigenvalue - testutil::min_eigenvalue(psd)) <= 1e-4);

        Matrix indef = random_indefinite(rng, 4, 1.0);
        const double true_min = testutil::min_eigenvalue(indef);
        QuadraticObjective nonconvex(random_vector(rng, 4, 1.0), indef);
        solve_simplex_qp(nonconvex, opts, &diag);
        CHECK_FALSE(diag.hessian_psd);
        CHECK(std::abs(diag.min_eigenvalue - true_min) <= 1e-4);
    }
}

TEST_CASE("brute force lattice objective is reachable by the solver on the lattice") {
    // the lattice is a subset of the simplex, so its minimizer can never be
    // below the true minimum; check against a dense-grid refinement
    Rng rng(46);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix h = random_psd(rng, 2, 1.0);
        QuadraticObjective obj(random_vector(rng, 2, 1.0), std::move(h));
        const auto coarse = brute_force_simplex(obj, 0.25);
        const auto fine = brute_force_simplex(obj, 0.01);
        CHECK(coarse.second >= fine.second - 1e-12);
    }
}
