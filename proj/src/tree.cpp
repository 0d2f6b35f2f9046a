#include "l2dwk/tree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace l2dwk {
namespace {

struct SplitChoice {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double gini = std::numeric_limits<double>::infinity();
};

double gini_from_counts(const std::vector<int64_t>& counts, int64_t total) {
    double g = 1.0;
    for (int64_t c : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(total);
        g -= p * p;
    }
    return g;
}

class TreeBuilder {
public:
    TreeBuilder(const Dataset& ds, const TreeParams& params, uint64_t seed)
        : ds_(ds), params_(params), rng_(seed) {}

    DecisionTree build() {
        DecisionTree tree;
        tree.n_features = ds_.cols();
        tree.class_count = ds_.class_count;
        std::vector<int> indices(ds_.rows());
        std::iota(indices.begin(), indices.end(), 0);
        grow(tree, indices, 0);
        return tree;
    }

private:
    int grow(DecisionTree& tree, const std::vector<int>& indices, int depth) {
        std::vector<int64_t> counts(ds_.class_count, 0);
        for (int i : indices) ++counts[ds_.labels[i]];
        const int64_t n = static_cast<int64_t>(indices.size());
        const bool pure = std::count_if(counts.begin(), counts.end(),
                                        [](int64_t c) { return c > 0; }) <= 1;
        const bool depth_capped = params_.max_depth > 0 && depth >= params_.max_depth;

        SplitChoice split;
        if (!pure && !depth_capped && n >= 2 * params_.min_leaf)
            split = best_split(indices);

        const int id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        if (!split.found) {
            tree.nodes[id].counts = std::move(counts);
            return id;
        }

        std::vector<int> left_idx, right_idx;
        for (int i : indices) {
            if (ds_.features.at(i, split.feature) <= split.threshold)
                left_idx.push_back(i);
            else
                right_idx.push_back(i);
        }
        tree.nodes[id].feature = split.feature;
        tree.nodes[id].threshold = split.threshold;
        const int left = grow(tree, left_idx, depth + 1);
        const int right = grow(tree, right_idx, depth + 1);
        tree.nodes[id].left = left;
        tree.nodes[id].right = right;
        return id;
    }

    std::vector<int> candidate_features() {
        std::vector<int> feats(ds_.cols());
        std::iota(feats.begin(), feats.end(), 0);
        if (params_.mtry <= 0 || params_.mtry >= ds_.cols()) return feats;
        // Partial Fisher-Yates, then sort so tie-breaking stays index-ordered.
        for (int i = 0; i < params_.mtry; ++i) {
            const int j = i + static_cast<int>(rng_.below(static_cast<uint64_t>(feats.size() - i)));
            std::swap(feats[i], feats[j]);
        }
        feats.resize(params_.mtry);
        std::sort(feats.begin(), feats.end());
        return feats;
    }

    SplitChoice best_split(const std::vector<int>& indices) {
        SplitChoice best;
        const int64_t n = static_cast<int64_t>(indices.size());
        std::vector<std::pair<double, int>> order(indices.size());
        std::vector<int64_t> left_counts(ds_.class_count);
        std::vector<int64_t> right_counts(ds_.class_count);

        for (int f : candidate_features()) {
            for (size_t i = 0; i < indices.size(); ++i)
                order[i] = {ds_.features.at(indices[i], f), ds_.labels[indices[i]]};
            std::sort(order.begin(), order.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

            std::fill(left_counts.begin(), left_counts.end(), 0);
            std::fill(right_counts.begin(), right_counts.end(), 0);
            for (const auto& [v, y] : order) ++right_counts[y];

            for (size_t i = 0; i + 1 < order.size(); ++i) {
                ++left_counts[order[i].second];
                --right_counts[order[i].second];
                if (order[i].first == order[i + 1].first) continue;
                const int64_t nl = static_cast<int64_t>(i) + 1;
                const int64_t nr = n - nl;
                if (nl < params_.min_leaf || nr < params_.min_leaf) continue;
                const double g = (static_cast<double>(nl) * gini_from_counts(left_counts, nl) +
                                  static_cast<double>(nr) * gini_from_counts(right_counts, nr)) /
                                 static_cast<double>(n);
                if (g < best.gini) {
                    best.found = true;
                    best.gini = g;
                    best.feature = f;
                    best.threshold = order[i].first + 0.5 * (order[i + 1].first - order[i].first);
                }
            }
        }
        return best;
    }

    const Dataset& ds_;
    const TreeParams& params_;
    Rng rng_;
};

}  // namespace

DecisionTree train_tree(const Dataset& ds, const TreeParams& params, uint64_t seed) {
    if (ds.rows() < 1) throw std::invalid_argument("train_tree: empty dataset");
    if (params.min_leaf < 1) throw std::invalid_argument("train_tree: min_leaf must be >= 1");
    return TreeBuilder(ds, params, seed).build();
}

int predict_tree(const DecisionTree& tree, const double* x, int arity) {
    if (arity != tree.n_features)
        throw std::invalid_argument("predict_tree: arity " + std::to_string(arity) +
                                    " does not match training arity " +
                                    std::to_string(tree.n_features));
    int id = tree.root;
    while (tree.nodes[id].feature >= 0) {
        const TreeNode& node = tree.nodes[id];
        id = x[node.feature] <= node.threshold ? node.left : node.right;
    }
    const std::vector<int64_t>& counts = tree.nodes[id].counts;
    int best = 0;
    for (int c = 1; c < static_cast<int>(counts.size()); ++c)
        if (counts[c] > counts[best]) best = c;
    return best;
}

}  // namespace l2dwk
