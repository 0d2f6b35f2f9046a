#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "l2dwk/bench.hpp"

namespace {

using namespace l2dwk;

/// Command-line misuse detected after flag parsing (e.g. an unknown method
/// name); mapped to exit code 2 like CLI11's own parse errors.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct KernelFlags {
    std::string kernel = "linear";
    double kernel_c = std::nan("");  // unset: linear -> 0, poly -> 1
    double sigma = 1.0;
    int degree = 2;

    KernelSpec resolve() const {
        if (kernel == "linear") return KernelSpec::linear(std::isnan(kernel_c) ? 0.0 : kernel_c);
        if (kernel == "gauss") return KernelSpec::gaussian(sigma);
        if (kernel == "poly")
            return KernelSpec::polynomial(std::isnan(kernel_c) ? 1.0 : kernel_c, degree);
        throw UsageError("unknown kernel '" + kernel + "' (expected linear|gauss|poly)");
    }
};

void add_kernel_flags(CLI::App* cmd, KernelFlags& kf) {
    cmd->add_option("--kernel", kf.kernel, "Kernel: linear|gauss|poly")
        ->check(CLI::IsMember({"linear", "gauss", "poly"}));
    cmd->add_option("--kernel-c", kf.kernel_c, "Kernel shift c (default: 0 linear, 1 poly)");
    cmd->add_option("--sigma", kf.sigma, "Gaussian kernel width")->check(CLI::PositiveNumber);
    cmd->add_option("--degree", kf.degree, "Polynomial kernel degree")
        ->check(CLI::PositiveNumber);
}

struct CombineCommon {
    double lambda = 0.5;
    std::string diversity = "dis";
    bool df_negate = false;
    std::string update = "hinge";
    int iters = 50;
    double alpha_tol = 1e-6;
    bool no_early_stop = false;
    double ridge = 0.0;
    int restarts = 8;
    uint64_t seed = 0;

    void apply(L2DWKConfig& cfg) const {
        cfg.lambda = lambda;
        cfg.diversity = diversity_kind_from_string(diversity);
        cfg.df_negate = df_negate;
        cfg.update = update_rule_from_string(update);
        cfg.max_iters = iters;
        cfg.alpha_tolerance = alpha_tol;
        cfg.early_stop = !no_early_stop;
        cfg.ridge = ridge;
        cfg.solver.restarts = restarts;
        cfg.solver.seed = seed;
    }
};

void add_combine_flags(CLI::App* cmd, CombineCommon& cc) {
    cmd->add_option("--lambda", cc.lambda, "Diversity regularization strength")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--diversity", cc.diversity, "Diversity measure: dis|df")
        ->check(CLI::IsMember({"dis", "df"}));
    cmd->add_flag("--df-negate", cc.df_negate, "Flip the sign of the double-fault term");
    cmd->add_option("--update", cc.update, "Kernel-weight update rule: hinge|exp")
        ->check(CLI::IsMember({"hinge", "exp"}));
    cmd->add_option("--iters", cc.iters, "Max self-training iterations")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--alpha-tol", cc.alpha_tol, "Alpha-change convergence tolerance")
        ->check(CLI::NonNegativeNumber);
    cmd->add_flag("--no-early-stop", cc.no_early_stop, "Disable the alpha-change stop");
    cmd->add_option("--ridge", cc.ridge, "Ridge added to the quadratic term")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--restarts", cc.restarts, "Solver restarts")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", cc.seed, "Random seed");
}

std::vector<int> bootstrap_indices(int n, uint64_t seed) {
    Rng rng(seed);
    std::vector<int> picks(n);
    for (int i = 0; i < n; ++i) picks[i] = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
    return picks;
}

int run_app(int argc, char** argv) {
    CLI::App app{"Ensemble combination by accuracy + weighted-kernel diversity optimization"};
    app.require_subcommand(1);

    // ---- pool train / pool predict ----
    CLI::App* pool_cmd = app.add_subcommand("pool", "Train or apply base-classifier pools");
    pool_cmd->require_subcommand(1);

    struct {
        std::string data, out, method = "bagging";
        int trees = 301, max_depth = 0, min_leaf = 1, mtry = 0, label_col = -1;
        uint64_t seed = 0;
    } pt;
    CLI::App* pool_train = pool_cmd->add_subcommand("train", "Train a pool of CART trees");
    pool_train->add_option("--data", pt.data, "Training CSV")->required();
    pool_train->add_option("--out", pt.out, "Output pool file")->required();
    pool_train->add_option("--method", pt.method, "bagging|random_subspace")
        ->check(CLI::IsMember({"bagging", "random_subspace"}));
    pool_train->add_option("--trees", pt.trees, "Pool size L")->check(CLI::PositiveNumber);
    pool_train->add_option("--max-depth", pt.max_depth, "Max tree depth (0 = unlimited)")
        ->check(CLI::NonNegativeNumber);
    pool_train->add_option("--min-leaf", pt.min_leaf, "Min samples per leaf")
        ->check(CLI::PositiveNumber);
    pool_train->add_option("--mtry", pt.mtry,
                           "Features per split for random_subspace (0 = ceil(sqrt(d)))")
        ->check(CLI::NonNegativeNumber);
    pool_train->add_option("--label-col", pt.label_col, "Label column index (-1 = last)");
    pool_train->add_option("--seed", pt.seed, "Random seed");
    pool_train->callback([&pt] {
        const Dataset ds = load_csv(pt.data, pt.label_col);
        PoolParams params;
        params.trees = pt.trees;
        params.method = pool_method_from_string(pt.method);
        params.mtry = pt.mtry;
        params.max_depth = pt.max_depth;
        params.min_leaf = pt.min_leaf;
        const ClassifierPool pool = train_pool(ds, params, pt.seed);
        save_pool(pool, pt.out);
        std::cout << "pool: L=" << pool.size() << " method=" << to_string(pool.method)
                  << " seed=" << pool.seed << " classes=" << pool.class_count
                  << " features=" << pool.n_features << " -> " << pt.out << "\n";
    });

    struct {
        std::string pool, data, out;
        int label_col = -1;
    } pp;
    CLI::App* pool_predict_cmd =
        pool_cmd->add_subcommand("predict", "Dump pool predictions as CSV");
    pool_predict_cmd->add_option("--pool", pp.pool, "Pool file")->required();
    pool_predict_cmd->add_option("--data", pp.data, "Input CSV")->required();
    pool_predict_cmd->add_option("--out", pp.out, "Output predictions CSV")->required();
    pool_predict_cmd->add_option("--label-col", pp.label_col, "Label column index (-1 = last)");
    pool_predict_cmd->callback([&pp] {
        const ClassifierPool pool = load_pool(pp.pool);
        const Dataset ds = load_csv(pp.data, pp.label_col);
        save_prediction_csv(pool_predict(pool, ds), pp.out);
        std::cout << "predictions: " << ds.rows() << " rows x " << pool.size()
                  << " classifiers -> " << pp.out << "\n";
    });

    // ---- combine ----
    struct {
        std::string pool, preds, data, out, report, method = "l2dwk";
        int label_col = -1;
        KernelFlags kf;
        CombineCommon cc;
    } cb;
    CLI::App* combine = app.add_subcommand("combine", "Learn classifier weights");
    combine->add_option("--pool", cb.pool, "Pool file");
    combine->add_option("--preds", cb.preds,
                        "Validation predictions CSV (skips the pool and the bootstrap)");
    combine->add_option("--data", cb.data, "Training CSV (labels + bootstrap source)")
        ->required();
    combine->add_option("--out", cb.out, "Output weights file")->required();
    combine->add_option("--method", cb.method, "l2dwk|qpd")
        ->check(CLI::IsMember({"l2dwk", "qpd"}));
    combine->add_option("--report", cb.report, "Per-iteration training report CSV");
    combine->add_option("--label-col", cb.label_col, "Label column index (-1 = last)");
    add_kernel_flags(combine, cb.kf);
    add_combine_flags(combine, cb.cc);
    combine->callback([&cb] {
        if (cb.pool.empty() == cb.preds.empty())
            throw UsageError("combine needs exactly one of --pool or --preds");
        const Dataset ds = load_csv(cb.data, cb.label_col);

        PredictionMatrix valid_preds;
        std::vector<int> valid_labels;
        if (!cb.pool.empty()) {
            const ClassifierPool pool = load_pool(cb.pool);
            const std::vector<int> picks =
                bootstrap_indices(ds.rows(), derive_seed(cb.cc.seed, 0, 13));
            const Dataset validation = subset(ds, picks);
            valid_preds = pool_predict(pool, validation);
            valid_labels = validation.labels;
        } else {
            valid_preds = load_prediction_csv(cb.preds, 0);
            if (valid_preds.n_rows != ds.rows())
                throw std::runtime_error("--preds rows (" + std::to_string(valid_preds.n_rows) +
                                         ") do not match --data rows (" +
                                         std::to_string(ds.rows()) + ")");
            valid_preds.class_count = std::max(valid_preds.class_count, ds.class_count);
            valid_labels = ds.labels;
        }

        L2DWKConfig cfg;
        cb.cc.apply(cfg);
        cfg.kernel = cb.kf.resolve();

        WeightsFile wf;
        std::ostringstream echo;
        if (cb.method == "qpd") {
            const OracleMatrix o = oracle_matrix(valid_preds, valid_labels);
            auto [w, objective] =
                qpd(o, cfg.lambda, cfg.diversity, cfg.solver, cfg.df_negate, cfg.ridge);
            wf.weights = std::move(w);
            echo << "method=qpd lambda=" << cfg.lambda
                 << " diversity=" << to_string(cfg.diversity) << " seed=" << cb.cc.seed;
        } else {
            auto [w, report] = run_l2dwk(valid_preds, valid_labels, cfg);
            wf.weights = std::move(w);
            wf.alpha = report.final_alpha;
            wf.stop_reason = to_string(report.stop_reason);
            echo << "method=l2dwk kernel=" << cfg.kernel.name() << " lambda=" << cfg.lambda
                 << " diversity=" << to_string(cfg.diversity)
                 << " update=" << to_string(cfg.update) << " iters=" << cfg.max_iters
                 << " seed=" << cb.cc.seed;
            if (!cb.report.empty()) save_report_csv(report, cb.report);
        }
        wf.method = cb.method;
        wf.config_echo = echo.str();
        save_weights(wf, cb.out);
        std::cout << "weights: L=" << wf.weights.size() << " stop=" << wf.stop_reason << " -> "
                  << cb.out << "\n";
    });

    // ---- eval ----
    struct {
        std::string pool, preds, weights, data;
        int label_col = -1;
    } ev;
    CLI::App* eval_cmd = app.add_subcommand("eval", "Weighted-vote accuracy on a dataset");
    eval_cmd->add_option("--pool", ev.pool, "Pool file");
    eval_cmd->add_option("--preds", ev.preds, "Predictions CSV (skips the pool)");
    eval_cmd->add_option("--weights", ev.weights, "Weights file")->required();
    eval_cmd->add_option("--data", ev.data, "Test CSV")->required();
    eval_cmd->add_option("--label-col", ev.label_col, "Label column index (-1 = last)");
    eval_cmd->callback([&ev] {
        if (ev.pool.empty() == ev.preds.empty())
            throw UsageError("eval needs exactly one of --pool or --preds");
        const Dataset ds = load_csv(ev.data, ev.label_col);
        const WeightsFile wf = load_weights(ev.weights);
        PredictionMatrix preds;
        if (!ev.pool.empty()) {
            const ClassifierPool pool = load_pool(ev.pool);
            if (pool.size() != wf.weights.size())
                throw std::runtime_error("weights length " + std::to_string(wf.weights.size()) +
                                         " does not match pool size " +
                                         std::to_string(pool.size()));
            preds = pool_predict(pool, ds);
        } else {
            preds = load_prediction_csv(ev.preds, ds.class_count);
            if (preds.n_cols != wf.weights.size())
                throw std::runtime_error("weights length does not match prediction columns");
            if (preds.n_rows != ds.rows())
                throw std::runtime_error("prediction rows do not match data rows");
        }
        const double accuracy = 1.0 - ensemble_error(preds, ds.labels, wf.weights);
        std::printf("%.4f\n", accuracy);
    });

    // ---- bench ----
    struct {
        std::string data, report, methods_str, pool_method = "bagging", name;
        std::vector<std::string> methods;
        int folds = 10, trees = 301, max_depth = 0, min_leaf = 1, mtry = 0, label_col = -1;
        bool timing = false;
        KernelFlags kf;
        CombineCommon cc;
    } bn;
    CLI::App* bench_cmd = app.add_subcommand("bench", "Cross-validated method comparison");
    bench_cmd->add_option("--data", bn.data, "Dataset CSV")->required();
    bench_cmd->add_option("--methods", bn.methods, "Comma-separated method list")
        ->required()
        ->delimiter(',');
    bench_cmd->add_option("--folds", bn.folds, "Cross-validation folds")
        ->check(CLI::Range(2, 1000000));
    bench_cmd->add_option("--report", bn.report, "Report CSV path (default: stdout)");
    bench_cmd->add_option("--name", bn.name, "Dataset name in the report");
    bench_cmd->add_option("--pool-method", bn.pool_method, "bagging|random_subspace")
        ->check(CLI::IsMember({"bagging", "random_subspace"}));
    bench_cmd->add_option("--trees", bn.trees, "Pool size L")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--max-depth", bn.max_depth, "Max tree depth (0 = unlimited)")
        ->check(CLI::NonNegativeNumber);
    bench_cmd->add_option("--min-leaf", bn.min_leaf, "Min samples per leaf")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--mtry", bn.mtry, "Features per split (0 = ceil(sqrt(d)))")
        ->check(CLI::NonNegativeNumber);
    bench_cmd->add_option("--label-col", bn.label_col, "Label column index (-1 = last)");
    bench_cmd->add_flag("--timing", bn.timing,
                        "Record wall-clock training seconds (breaks byte-identical reruns)");
    add_kernel_flags(bench_cmd, bn.kf);
    add_combine_flags(bench_cmd, bn.cc);
    bench_cmd->callback([&bn] {
        for (const std::string& m : bn.methods)
            if (!is_bench_method(m)) {
                std::string valid;
                for (const std::string& v : bench_method_names()) valid += " " + v;
                throw UsageError("unknown method '" + m + "'; valid methods:" + valid);
            }
        const Dataset ds = load_csv(bn.data, bn.label_col);
        BenchConfig cfg;
        cfg.dataset_name = bn.name.empty() ? bn.data : bn.name;
        cfg.folds = bn.folds;
        cfg.methods = bn.methods;
        cfg.seed = bn.cc.seed;
        cfg.pool.trees = bn.trees;
        cfg.pool.method = pool_method_from_string(bn.pool_method);
        cfg.pool.max_depth = bn.max_depth;
        cfg.pool.min_leaf = bn.min_leaf;
        cfg.pool.mtry = bn.mtry;
        bn.cc.apply(cfg.combine);
        cfg.kernel_c = std::isnan(bn.kf.kernel_c) ? 0.0 : bn.kf.kernel_c;
        cfg.poly_c = std::isnan(bn.kf.kernel_c) ? 1.0 : bn.kf.kernel_c;
        cfg.sigma = bn.kf.sigma;
        cfg.degree = bn.kf.degree;
        cfg.timing = bn.timing;

        const BenchReport report = run_bench(ds, cfg);
        if (bn.report.empty()) {
            std::cout << bench_csv(report);
        } else {
            write_bench_csv(report, bn.report);
            std::cout << "report: " << report.rows.size() << " rows -> " << bn.report << "\n";
        }
        std::cout << "method            mean_acc   stddev\n";
        for (const BenchAggregate& agg : report.aggregates)
            std::printf("%-16s  %.6f  %.6f\n", agg.method.c_str(), agg.mean_accuracy,
                        agg.stddev_accuracy);
    });

    // ---- synth ----
    struct {
        std::string out;
        int classes = 3, n_per_class = 100, dim = 2;
        double spread = 1.0, sep = 5.0;
        uint64_t seed = 0;
    } sy;
    CLI::App* synth = app.add_subcommand("synth", "Generate a Gaussian-blob dataset CSV");
    synth->add_option("--out", sy.out, "Output CSV")->required();
    synth->add_option("--classes", sy.classes, "Number of blob centers")
        ->check(CLI::Range(2, 1000));
    synth->add_option("--n-per-class", sy.n_per_class, "Samples per class")
        ->check(CLI::PositiveNumber);
    synth->add_option("--dim", sy.dim, "Feature dimension")->check(CLI::Range(2, 10000));
    synth->add_option("--spread", sy.spread, "Gaussian spread")->check(CLI::PositiveNumber);
    synth->add_option("--sep", sy.sep, "Center circle radius")->check(CLI::PositiveNumber);
    synth->add_option("--seed", sy.seed, "Random seed");
    synth->callback([&sy] {
        std::vector<std::vector<double>> centers;
        for (int c = 0; c < sy.classes; ++c) {
            std::vector<double> center(sy.dim, 0.0);
            const double angle = 6.283185307179586 * c / sy.classes;
            center[0] = sy.sep * std::cos(angle);
            center[1] = sy.sep * std::sin(angle);
            centers.push_back(std::move(center));
        }
        const Dataset ds = make_blobs(sy.n_per_class, centers, sy.spread, sy.seed);
        save_csv(ds, sy.out);
        std::cout << "blobs: N=" << ds.rows() << " d=" << ds.cols() << " C=" << ds.class_count
                  << " -> " << sy.out << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) { return run_app(argc, argv); }
