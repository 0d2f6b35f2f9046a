#pragma once

#include <string>
#include <utility>
#include <vector>

#include "l2dwk/diversity.hpp"
#include "l2dwk/optimizer.hpp"

namespace l2dwk {

enum class UpdateRule { hinge, exp };

std::string to_string(UpdateRule rule);
UpdateRule update_rule_from_string(const std::string& name);

struct L2DWKConfig {
    double lambda = 0.5;  // diversity regularization strength
    KernelSpec kernel = KernelSpec::linear();
    DiversityKind diversity = DiversityKind::disagreement;
    bool df_negate = false;  // flip the sign of the double-fault term
    UpdateRule update = UpdateRule::hinge;
    int max_iters = 50;  // T
    double alpha_tolerance = 1e-6;
    bool early_stop = true;  // alpha-change stop (the zero-error stop always applies)
    double ridge = 0.0;      // optional r*I added to H for guaranteed convexity
    SolverOptions solver;

    void validate() const;
};

enum class StopReason { max_iters, alpha_converged, zero_error };

std::string to_string(StopReason reason);

/// One row per self-training iteration. vote_error drives the stopping rule;
/// margin_error (fraction of samples with margin <= 0) feeds the hinge update.
/// The two coincide for binary problems but can differ for C > 2.
struct IterationRecord {
    int t = 0;
    double vote_error = 0.0;
    double margin_error = 0.0;
    double alpha_change = 0.0;  // L1 distance between consecutive alphas
    double objective = 0.0;
    bool hessian_psd = false;
    int solver_iterations = 0;  // accepted steps summed over restarts
    int solver_restarts = 0;
    double alpha_sum = 0.0;  // of the post-update alpha
    double alpha_min = 0.0;
};

struct TrainReport {
    std::vector<IterationRecord> iterations;
    ClassifierWeights final_w;
    KernelWeights final_alpha;
    StopReason stop_reason = StopReason::max_iters;
};

/// Assembles the standard-form objective for the current kernel weights:
/// q = -weighted_ones_row, H = -lambda * kernelized diversity (+ ridge I).
QuadraticObjective build_objective(const OracleMatrix& o, const KernelWeights& alpha,
                                   const L2DWKConfig& cfg);

/// Non-kernelized baseline: argmin_w -P w - lambda w' D w on the simplex,
/// with plain accuracy P and plain diversity D.
std::pair<ClassifierWeights, double> qpd(const OracleMatrix& o, double lambda,
                                         DiversityKind kind, const SolverOptions& opts,
                                         bool df_negate = false, double ridge = 0.0);

/// alpha*_i = 1 / (N epsilon) where m_i <= 0, else 0. epsilon must be the
/// fraction of samples with m_i <= 0 so the entries sum to 1; epsilon = 0 is
/// the caller-intercepted zero-error path.
std::vector<double> hinge_alpha_star(const std::vector<double>& m, double epsilon, int n);

/// Boosting-style reweighting: theta = ln((1 - eps) / eps) / 2 and
/// alpha*_i proportional to prev_i * exp(-theta m_i), normalized.
std::vector<double> exp_alpha_star(const std::vector<double>& prev_star,
                                   const std::vector<double>& m, double epsilon);

/// alpha_{t+1} = beta_t alpha* + (1 - beta_t) alpha_t with beta_t = 1/t;
/// the damping keeps the sum telescoping to 1 at every iteration.
KernelWeights update_alpha(const KernelWeights& alpha, const std::vector<double>& alpha_star,
                           int t);

/// The self-training loop: alternate between solving for classifier weights
/// given the kernel weights and reweighting the kernel weights from the
/// ensemble's errors. Stops on zero ensemble error, on the alpha change
/// dropping below alpha_tolerance (unless disabled), or after T iterations.
std::pair<ClassifierWeights, TrainReport> run_l2dwk(const PredictionMatrix& preds,
                                                    const std::vector<int>& labels,
                                                    const L2DWKConfig& cfg);

/// Learned-weights file (text, version 1; see docs/formats.md).
struct WeightsFile {
    std::string method;
    std::string stop_reason = "none";
    ClassifierWeights weights;
    KernelWeights alpha;            // may be empty for non-kernel methods
    std::string config_echo;
};

void save_weights(const WeightsFile& wf, const std::string& path);
WeightsFile load_weights(const std::string& path);

void save_report_csv(const TrainReport& report, const std::string& path);

}  // namespace l2dwk
