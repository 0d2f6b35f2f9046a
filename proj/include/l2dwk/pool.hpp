#pragma once

#include <string>
#include <vector>

#include "l2dwk/oracle.hpp"
#include "l2dwk/tree.hpp"

namespace l2dwk {

enum class PoolMethod { bagging, random_subspace };

std::string to_string(PoolMethod m);
PoolMethod pool_method_from_string(const std::string& name);

/// A fixed set of trained base classifiers plus the provenance needed to
/// reproduce it (method, seed, tree parameters).
struct ClassifierPool {
    std::vector<DecisionTree> trees;
    PoolMethod method = PoolMethod::bagging;
    uint64_t seed = 0;
    int mtry = 0;  // 0 = all features
    int n_features = 0;
    int class_count = 0;
    TreeParams tree_params;

    int size() const { return static_cast<int>(trees.size()); }
};

struct PoolParams {
    int trees = 301;
    PoolMethod method = PoolMethod::bagging;
    int mtry = 0;       // random_subspace default: ceil(sqrt(d))
    int max_depth = 0;  // 0 = unlimited
    int min_leaf = 1;
};

/// Trains L trees, each on an independent bootstrap of ds. random_subspace
/// additionally subsamples mtry features per split. Tree i draws its seeds
/// from derive_seed(seed, i), so results do not depend on training order.
ClassifierPool train_pool(const Dataset& ds, const PoolParams& params, uint64_t seed);

/// N x L matrix of class indices, column j from tree j.
PredictionMatrix pool_predict(const ClassifierPool& pool, const Dataset& ds);

/// Text pool format, version 1; see docs/formats.md. load(save(p)) reproduces
/// predictions exactly.
void save_pool(const ClassifierPool& pool, const std::string& path);
ClassifierPool load_pool(const std::string& path);

}  // namespace l2dwk
