#pragma once

#include <cstdint>
#include <vector>

#include "l2dwk/dataset.hpp"

namespace l2dwk {

/// feature < 0 marks a leaf; leaves carry per-class sample counts.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    std::vector<int64_t> counts;
};

struct DecisionTree {
    std::vector<TreeNode> nodes;
    int root = 0;
    int n_features = 0;
    int class_count = 0;
};

struct TreeParams {
    int max_depth = 0;  // 0 = unlimited
    int min_leaf = 1;
    int mtry = 0;       // features considered per split; 0 = all
};

/// Greedy CART: binary splits minimizing weighted Gini impurity. Threshold
/// candidates are midpoints between consecutive distinct sorted values.
/// Recursion stops at max_depth, min_leaf, or a pure node. With mtry > 0 each
/// split draws a seeded random feature subset.
DecisionTree train_tree(const Dataset& ds, const TreeParams& params, uint64_t seed);

/// Routes by threshold comparisons (x[f] <= threshold goes left); returns the
/// argmax of leaf counts, ties toward the smaller class index.
int predict_tree(const DecisionTree& tree, const double* x, int arity);

}  // namespace l2dwk
