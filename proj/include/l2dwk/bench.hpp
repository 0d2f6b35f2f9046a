#pragma once

#include <string>
#include <vector>

#include "l2dwk/l2dwk.hpp"
#include "l2dwk/pool.hpp"

namespace l2dwk {

/// Combination methods the benchmark knows. l2dwk-* variants pick the kernel;
/// the update rule, lambda and solver settings come from the shared config.
const std::vector<std::string>& bench_method_names();
bool is_bench_method(const std::string& name);

struct BenchConfig {
    std::string dataset_name = "data";
    int folds = 10;
    std::vector<std::string> methods;
    uint64_t seed = 0;
    PoolParams pool;
    L2DWKConfig combine;     // kernel field is overridden per l2dwk-* method
    double kernel_c = 0.0;   // linear shift
    double poly_c = 1.0;
    double sigma = 1.0;
    int degree = 2;
    bool timing = false;     // wall-clock seconds in the CSV (breaks byte-identical reruns)
};

struct BenchRow {
    std::string dataset;
    int fold = 0;
    std::string method;
    double test_accuracy = 0.0;
    double train_seconds = 0.0;  // weight-learning time; 0 unless timing enabled
    int effective_l = 0;         // count of w_j > 1e-4
};

struct BenchAggregate {
    std::string method;
    double mean_accuracy = 0.0;
    double stddev_accuracy = 0.0;  // population stddev over folds
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<BenchAggregate> aggregates;
};

/// Per fold: train a pool on the train split, bootstrap a validation set from
/// it, learn weights per method on the validation predictions, evaluate by
/// weighted vote on the test split. Row order is (dataset, fold, method);
/// all randomness derives from the config seed.
BenchReport run_bench(const Dataset& ds, const BenchConfig& cfg);

/// Data rows first, then `#agg,...` comment lines with per-method aggregates.
std::string bench_csv(const BenchReport& report);
void write_bench_csv(const BenchReport& report, const std::string& path);

/// Learns weights for one method name on validation predictions. Exposed for
/// the combine command and tests.
ClassifierWeights learn_method_weights(const std::string& method,
                                       const PredictionMatrix& valid_preds,
                                       const std::vector<int>& valid_labels,
                                       const BenchConfig& cfg, uint64_t solver_seed,
                                       TrainReport* report = nullptr);

}  // namespace l2dwk
