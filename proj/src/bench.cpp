#include "l2dwk/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace l2dwk {

const std::vector<std::string>& bench_method_names() {
    static const std::vector<std::string> names = {
        "uniform", "best", "majority", "qpd", "l2dwk-linear", "l2dwk-gauss", "l2dwk-poly"};
    return names;
}

bool is_bench_method(const std::string& name) {
    const auto& names = bench_method_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

namespace {

KernelSpec kernel_for_method(const std::string& method, const BenchConfig& cfg) {
    if (method == "l2dwk-linear") return KernelSpec::linear(cfg.kernel_c);
    if (method == "l2dwk-gauss") return KernelSpec::gaussian(cfg.sigma);
    if (method == "l2dwk-poly") return KernelSpec::polynomial(cfg.poly_c, cfg.degree);
    throw std::invalid_argument("no kernel for method " + method);
}

int effective_size(const ClassifierWeights& w) {
    int count = 0;
    for (double v : w.w)
        if (v > 1e-4) ++count;
    return count;
}

std::string format_fixed(double v, int digits) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

}  // namespace

ClassifierWeights learn_method_weights(const std::string& method,
                                       const PredictionMatrix& valid_preds,
                                       const std::vector<int>& valid_labels,
                                       const BenchConfig& cfg, uint64_t solver_seed,
                                       TrainReport* report) {
    const int l = valid_preds.n_cols;
    if (method == "uniform" || method == "majority") return ClassifierWeights::uniform(l);
    if (method == "best") {
        const OracleMatrix o = oracle_matrix(valid_preds, valid_labels);
        const std::vector<double> p = accuracy_vector(o);
        const int best = static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
        ClassifierWeights w{std::vector<double>(l, 0.0)};
        w.w[best] = 1.0;
        return w;
    }
    if (method == "qpd") {
        const OracleMatrix o = oracle_matrix(valid_preds, valid_labels);
        SolverOptions opts = cfg.combine.solver;
        opts.seed = solver_seed;
        return qpd(o, cfg.combine.lambda, cfg.combine.diversity, opts, cfg.combine.df_negate,
                   cfg.combine.ridge)
            .first;
    }
    if (method.rfind("l2dwk-", 0) == 0) {
        L2DWKConfig run_cfg = cfg.combine;
        run_cfg.kernel = kernel_for_method(method, cfg);
        run_cfg.solver.seed = solver_seed;
        auto [w, rep] = run_l2dwk(valid_preds, valid_labels, run_cfg);
        if (report) *report = std::move(rep);
        return w;
    }
    throw std::invalid_argument("unknown method '" + method + "'");
}

BenchReport run_bench(const Dataset& ds, const BenchConfig& cfg) {
    if (cfg.methods.empty()) throw std::invalid_argument("run_bench: no methods given");
    for (const std::string& m : cfg.methods)
        if (!is_bench_method(m)) throw std::invalid_argument("unknown method '" + m + "'");

    const FoldPlan plan = stratified_kfold(ds, cfg.folds, derive_seed(cfg.seed, 0, 10));
    BenchReport report;

    for (int fold = 0; fold < cfg.folds; ++fold) {
        const uint64_t fold_seed = derive_seed(cfg.seed, static_cast<uint64_t>(fold), 11);
        const Dataset train = subset(ds, fold_train_indices(plan, fold));
        const Dataset test = subset(ds, fold_test_indices(plan, fold));

        const ClassifierPool pool = train_pool(train, cfg.pool, derive_seed(fold_seed, 0, 12));
        const Dataset validation = bootstrap(train, derive_seed(fold_seed, 0, 13));
        const PredictionMatrix valid_preds = pool_predict(pool, validation);
        const PredictionMatrix test_preds = pool_predict(pool, test);

        for (const std::string& method : cfg.methods) {
            const auto started = std::chrono::steady_clock::now();
            const ClassifierWeights w = learn_method_weights(
                method, valid_preds, validation.labels, cfg, derive_seed(fold_seed, 0, 14));
            const auto finished = std::chrono::steady_clock::now();

            BenchRow row;
            row.dataset = cfg.dataset_name;
            row.fold = fold;
            row.method = method;
            row.test_accuracy = 1.0 - ensemble_error(test_preds, test.labels, w);
            row.train_seconds =
                cfg.timing ? std::chrono::duration<double>(finished - started).count() : 0.0;
            row.effective_l = effective_size(w);
            report.rows.push_back(std::move(row));
        }
    }

    for (const std::string& method : cfg.methods) {
        BenchAggregate agg;
        agg.method = method;
        std::vector<double> acc;
        for (const BenchRow& row : report.rows)
            if (row.method == method) acc.push_back(row.test_accuracy);
        double mean = 0.0;
        for (double a : acc) mean += a;
        mean /= acc.size();
        double var = 0.0;
        for (double a : acc) var += (a - mean) * (a - mean);
        agg.mean_accuracy = mean;
        agg.stddev_accuracy = std::sqrt(var / acc.size());
        report.aggregates.push_back(std::move(agg));
    }
    return report;
}

std::string bench_csv(const BenchReport& report) {
    std::ostringstream out;
    out << "dataset,fold,method,test_accuracy,train_seconds,effective_l\n";
    for (const BenchRow& row : report.rows)
        out << row.dataset << ',' << row.fold << ',' << row.method << ','
            << format_fixed(row.test_accuracy, 6) << ',' << format_fixed(row.train_seconds, 3)
            << ',' << row.effective_l << '\n';
    for (const BenchAggregate& agg : report.aggregates)
        out << "#agg," << agg.method << ',' << format_fixed(agg.mean_accuracy, 6) << ','
            << format_fixed(agg.stddev_accuracy, 6) << '\n';
    return out.str();
}

void write_bench_csv(const BenchReport& report, const std::string& path) {
    atomic_write_text(path, bench_csv(report));
}

}  // namespace l2dwk
