#pragma once

#include <utility>
#include <vector>

#include "l2dwk/oracle.hpp"

namespace l2dwk {

/// minimize q'w + w'H w over the probability simplex. H is symmetrized on
/// construction; it is allowed to be indefinite (the kernel-weighted
/// disagreement objective generally is).
struct QuadraticObjective {
    std::vector<double> q;
    Matrix H;

    QuadraticObjective(std::vector<double> linear, Matrix quadratic);

    int size() const { return static_cast<int>(q.size()); }
    double value(const std::vector<double>& w) const;
    std::vector<double> gradient(const std::vector<double>& w) const;
};

struct SolverOptions {
    int max_iters = 500;
    double step_tolerance = 1e-12;
    double objective_tolerance = 1e-12;
    int restarts = 8;
    uint64_t seed = 0;

    void validate() const;
};

struct SolverDiagnostics {
    int iterations = 0;       // accepted steps summed over restarts
    int restarts = 0;
    bool hessian_psd = false; // smallest-eigenvalue estimate >= -1e-8
    double min_eigenvalue = 0.0;
    double objective = 0.0;
};

/// Euclidean projection onto the probability simplex (sort-and-threshold),
/// renormalized so the output satisfies the simplex invariants.
ClassifierWeights project_simplex(const std::vector<double>& v);

/// Projected-gradient descent with Armijo backtracking from multiple starts
/// (barycenter, the best-linear vertex, remaining vertices in index order,
/// then seeded random simplex points, `restarts` in total). The objective is
/// non-increasing across accepted steps; ties among restarts resolve to the
/// lowest objective, then the lexicographically smallest w. Deterministic
/// given the seed.
std::pair<ClassifierWeights, double> solve_simplex_qp(const QuadraticObjective& obj,
                                                      const SolverOptions& opts,
                                                      SolverDiagnostics* diag = nullptr);

/// Exhaustive evaluation on the lattice {w : w_j = k * grid_step, sum = 1}.
/// Test oracle; requires L <= 4 and grid_step dividing 1.
std::pair<ClassifierWeights, double> brute_force_simplex(const QuadraticObjective& obj,
                                                         double grid_step);

/// Cheap smallest-eigenvalue estimate of a symmetric matrix (two power
/// iterations: spectral radius, then the shifted matrix).
double smallest_eigenvalue_estimate(const Matrix& h);

}  // namespace l2dwk
