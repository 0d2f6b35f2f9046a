#include "l2dwk/l2dwk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace l2dwk {

std::string to_string(UpdateRule rule) { return rule == UpdateRule::hinge ? "hinge" : "exp"; }

UpdateRule update_rule_from_string(const std::string& name) {
    if (name == "hinge") return UpdateRule::hinge;
    if (name == "exp") return UpdateRule::exp;
    throw std::invalid_argument("unknown update rule '" + name + "' (expected hinge|exp)");
}

std::string to_string(StopReason reason) {
    switch (reason) {
        case StopReason::max_iters: return "max_iters";
        case StopReason::alpha_converged: return "alpha_converged";
        case StopReason::zero_error: return "zero_error";
    }
    return "?";
}

void L2DWKConfig::validate() const {
    if (lambda < 0.0) throw std::invalid_argument("L2DWKConfig: lambda must be >= 0");
    if (max_iters < 1) throw std::invalid_argument("L2DWKConfig: max_iters must be >= 1");
    if (alpha_tolerance < 0.0)
        throw std::invalid_argument("L2DWKConfig: alpha_tolerance must be >= 0");
    if (ridge < 0.0) throw std::invalid_argument("L2DWKConfig: ridge must be >= 0");
    kernel.validate();
    solver.validate();
}

namespace {

Matrix scaled_diversity(const DiversityMatrix& d, double lambda, bool negate, double ridge) {
    Matrix h = d.entries;
    const double factor = negate ? lambda : -lambda;
    for (double& v : h.data) v *= factor;
    for (int i = 0; i < h.n_rows; ++i) h.at(i, i) += ridge;
    return h;
}

}  // namespace

QuadraticObjective build_objective(const OracleMatrix& o, const KernelWeights& alpha,
                                   const L2DWKConfig& cfg) {
    cfg.validate();
    std::vector<double> q = weighted_ones_row(cfg.kernel, alpha, o);
    for (double& v : q) v = -v;
    const DiversityMatrix d = cfg.diversity == DiversityKind::disagreement
                                  ? kernel_disagreement(cfg.kernel, alpha, o)
                                  : kernel_double_fault(cfg.kernel, alpha, o);
    const bool negate = cfg.df_negate && cfg.diversity == DiversityKind::double_fault;
    return QuadraticObjective(std::move(q), scaled_diversity(d, cfg.lambda, negate, cfg.ridge));
}

std::pair<ClassifierWeights, double> qpd(const OracleMatrix& o, double lambda,
                                         DiversityKind kind, const SolverOptions& opts,
                                         bool df_negate, double ridge) {
    if (lambda < 0.0) throw std::invalid_argument("qpd: lambda must be >= 0");
    std::vector<double> q = accuracy_vector(o);
    for (double& v : q) v = -v;
    const DiversityMatrix d =
        kind == DiversityKind::disagreement ? disagreement_matrix(o) : double_fault_matrix(o);
    const bool negate = df_negate && kind == DiversityKind::double_fault;
    QuadraticObjective obj(std::move(q), scaled_diversity(d, lambda, negate, ridge));
    return solve_simplex_qp(obj, opts);
}

std::vector<double> hinge_alpha_star(const std::vector<double>& m, double epsilon, int n) {
    if (n < 1 || static_cast<int>(m.size()) != n)
        throw std::invalid_argument("hinge_alpha_star: margin length != N");
    if (!(epsilon > 0.0) || epsilon > 1.0)
        throw std::invalid_argument(
            "hinge_alpha_star: epsilon must be in (0, 1]; epsilon = 0 is the zero-error stop");
    std::vector<double> star(m.size(), 0.0);
    const double weight = 1.0 / (n * epsilon);
    for (size_t i = 0; i < m.size(); ++i)
        if (m[i] <= 0.0) star[i] = weight;
    return star;
}

std::vector<double> exp_alpha_star(const std::vector<double>& prev_star,
                                   const std::vector<double>& m, double epsilon) {
    if (prev_star.size() != m.size())
        throw std::invalid_argument("exp_alpha_star: size mismatch");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::invalid_argument("exp_alpha_star: epsilon must be in (0, 1)");
    require_simplex(prev_star, "exp_alpha_star: prev_star");
    const double theta = 0.5 * std::log((1.0 - epsilon) / epsilon);
    std::vector<double> star(m.size());
    double z = 0.0;
    for (size_t i = 0; i < m.size(); ++i) {
        star[i] = prev_star[i] * std::exp(-theta * m[i]);
        z += star[i];
    }
    if (!(z > 0.0)) throw std::runtime_error("exp_alpha_star: normalization underflow");
    for (double& v : star) v /= z;
    return star;
}

KernelWeights update_alpha(const KernelWeights& alpha, const std::vector<double>& alpha_star,
                           int t) {
    if (t < 1) throw std::invalid_argument("update_alpha: t must be >= 1");
    if (alpha.alpha.size() != alpha_star.size())
        throw std::invalid_argument("update_alpha: size mismatch");
    alpha.validate();
    require_simplex(alpha_star, "update_alpha: alpha_star");
    const double beta = 1.0 / t;
    KernelWeights next{std::vector<double>(alpha_star.size())};
    for (size_t i = 0; i < alpha_star.size(); ++i)
        next.alpha[i] = beta * alpha_star[i] + (1.0 - beta) * alpha.alpha[i];
    return next;
}

std::pair<ClassifierWeights, TrainReport> run_l2dwk(const PredictionMatrix& preds,
                                                    const std::vector<int>& labels,
                                                    const L2DWKConfig& cfg) {
    cfg.validate();
    if (preds.n_rows < 1 || preds.n_cols < 1)
        throw std::invalid_argument("run_l2dwk: empty prediction matrix");
    const int n = preds.n_rows;
    const OracleMatrix o = oracle_matrix(preds, labels);

    KernelWeights alpha = KernelWeights::uniform(n);
    std::vector<double> prev_star = alpha.alpha;  // base of the exp-rule recursion

    TrainReport report;
    ClassifierWeights w;
    for (int t = 1; t <= cfg.max_iters; ++t) {
        const QuadraticObjective obj = build_objective(o, alpha, cfg);
        SolverDiagnostics diag;
        auto [wt, objective] = solve_simplex_qp(obj, cfg.solver, &diag);
        w = std::move(wt);

        std::vector<double> m = margins(o, w);
        // A vote-wrong row has margin <= 0 in exact arithmetic, but the vote
        // and the margin are accumulated in different orders; snap float dust
        // at the zero boundary so ties land in the hinge support.
        for (double& mi : m)
            if (std::abs(mi) <= 1e-12) mi = 0.0;
        const double vote_error = ensemble_error(preds, labels, w);
        int at_risk = 0;
        for (double mi : m)
            if (mi <= 0.0) ++at_risk;
        const double margin_error = static_cast<double>(at_risk) / n;

        IterationRecord rec;
        rec.t = t;
        rec.vote_error = vote_error;
        rec.margin_error = margin_error;
        rec.objective = objective;
        rec.hessian_psd = diag.hessian_psd;
        rec.solver_iterations = diag.iterations;
        rec.solver_restarts = diag.restarts;

        if (vote_error == 0.0) {
            rec.alpha_sum = std::accumulate(alpha.alpha.begin(), alpha.alpha.end(), 0.0);
            rec.alpha_min = *std::min_element(alpha.alpha.begin(), alpha.alpha.end());
            report.iterations.push_back(rec);
            report.stop_reason = StopReason::zero_error;
            report.final_w = w;
            report.final_alpha = alpha;
            return {std::move(w), std::move(report)};
        }

        std::vector<double> star;
        if (cfg.update == UpdateRule::hinge) {
            // misvoted rows land in the margin support, so margin_error > 0 here
            if (at_risk == 0)
                throw std::logic_error("run_l2dwk: nonzero vote error with empty hinge support");
            star = hinge_alpha_star(m, margin_error, n);
        } else {
            const double eps = std::clamp(vote_error, 1e-6, 1.0 - 1e-6);
            star = exp_alpha_star(prev_star, m, eps);
            prev_star = star;
        }
        KernelWeights next = update_alpha(alpha, star, t);
        double change = 0.0;
        for (int i = 0; i < n; ++i) change += std::abs(next.alpha[i] - alpha.alpha[i]);
        alpha = std::move(next);

        rec.alpha_change = change;
        rec.alpha_sum = std::accumulate(alpha.alpha.begin(), alpha.alpha.end(), 0.0);
        rec.alpha_min = *std::min_element(alpha.alpha.begin(), alpha.alpha.end());
        report.iterations.push_back(rec);

        if (cfg.early_stop && change < cfg.alpha_tolerance) {
            report.stop_reason = StopReason::alpha_converged;
            report.final_w = w;
            report.final_alpha = alpha;
            return {std::move(w), std::move(report)};
        }
    }
    report.stop_reason = StopReason::max_iters;
    report.final_w = w;
    report.final_alpha = alpha;
    return {std::move(w), std::move(report)};
}

namespace {
constexpr const char* kWeightsMagic = "l2dwk-weights";
constexpr const char* kWeightsVersion = "v1";
}  // namespace

void save_weights(const WeightsFile& wf, const std::string& path) {
    std::ostringstream out;
    out << kWeightsMagic << ' ' << kWeightsVersion << '\n';
    out << "method " << wf.method << '\n';
    out << "stop_reason " << wf.stop_reason << '\n';
    out << "config " << (wf.config_echo.empty() ? "-" : wf.config_echo) << '\n';
    out << "classifiers " << wf.weights.size() << '\n';
    out << "weights";
    for (double v : wf.weights.w) out << ' ' << format_double(v);
    out << '\n';
    out << "samples " << wf.alpha.size() << '\n';
    if (wf.alpha.size() > 0) {
        out << "alpha";
        for (double v : wf.alpha.alpha) out << ' ' << format_double(v);
        out << '\n';
    }
    atomic_write_text(path, out.str());
}

WeightsFile load_weights(const std::string& path) {
    std::istringstream in(read_text_file(path));
    const auto fail = [&path](const std::string& why) -> std::runtime_error {
        return std::runtime_error(path + ": " + why);
    };
    std::string magic, version, key;
    if (!(in >> magic >> version) || magic != kWeightsMagic) throw fail("not a weights file");
    if (version != kWeightsVersion)
        throw fail("unsupported weights format version '" + version + "'");
    WeightsFile wf;
    if (!(in >> key >> wf.method) || key != "method") throw fail("missing method");
    if (!(in >> key >> wf.stop_reason) || key != "stop_reason") throw fail("missing stop_reason");
    if (!(in >> key) || key != "config") throw fail("missing config");
    std::getline(in, wf.config_echo);
    if (!wf.config_echo.empty() && wf.config_echo.front() == ' ')
        wf.config_echo.erase(wf.config_echo.begin());
    int l = 0;
    if (!(in >> key >> l) || key != "classifiers" || l < 1) throw fail("missing classifier count");
    if (!(in >> key) || key != "weights") throw fail("missing weights");
    wf.weights.w.resize(l);
    for (int j = 0; j < l; ++j)
        if (!(in >> wf.weights.w[j])) throw fail("truncated weights");
    int n = 0;
    if (!(in >> key >> n) || key != "samples" || n < 0) throw fail("missing sample count");
    if (n > 0) {
        if (!(in >> key) || key != "alpha") throw fail("missing alpha");
        wf.alpha.alpha.resize(n);
        for (int i = 0; i < n; ++i)
            if (!(in >> wf.alpha.alpha[i])) throw fail("truncated alpha");
    }
    wf.weights.validate();
    return wf;
}

void save_report_csv(const TrainReport& report, const std::string& path) {
    std::ostringstream out;
    out << "t,vote_error,margin_error,alpha_change,objective,hessian_psd,"
           "solver_iterations,solver_restarts,alpha_sum,alpha_min\n";
    for (const IterationRecord& rec : report.iterations) {
        out << rec.t << ',' << format_double(rec.vote_error) << ','
            << format_double(rec.margin_error) << ',' << format_double(rec.alpha_change) << ','
            << format_double(rec.objective) << ',' << (rec.hessian_psd ? 1 : 0) << ','
            << rec.solver_iterations << ',' << rec.solver_restarts << ','
            << format_double(rec.alpha_sum) << ',' << format_double(rec.alpha_min) << '\n';
    }
    atomic_write_text(path, out.str());
}

}  // namespace l2dwk
