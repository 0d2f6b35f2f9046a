#pragma once

#include <string>
#include <vector>

#include "l2dwk/common.hpp"

namespace l2dwk {

/// Per-column categorical encoding. Empty `categories` means the column is
/// numeric; otherwise code k decodes to categories[k] (first-appearance order).
struct ColumnCodec {
    std::vector<std::string> categories;
    bool categorical() const { return !categories.empty(); }
};

/// Tabular classification dataset. Features are parsed reals (categorical
/// columns are ordinal-encoded by first appearance), labels are class codes
/// in [0, class_count).
struct Dataset {
    Matrix features;                         // N x d
    std::vector<int> labels;                 // length N
    int class_count = 0;                     // C
    std::vector<std::string> feature_names;  // length d
    std::vector<ColumnCodec> feature_codecs; // length d
    std::vector<std::string> label_values;   // code -> original label token

    int rows() const { return features.n_rows; }
    int cols() const { return features.n_cols; }

    /// Original string token for a categorical feature cell.
    std::string decode_feature(int row, int col) const;
    std::string decode_label(int row) const;
};

/// Stratified fold assignment: fold_of[i] in [0, k) for every sample.
struct FoldPlan {
    std::vector<int> fold_of;
    int k = 0;
    uint64_t seed = 0;
};

/// Loads a comma-separated UTF-8 file. label_column: 0-based index, or -1 for
/// the last column. An optional header row is detected when no field of the
/// first line parses as a number. Numeric columns are parsed as reals;
/// fully non-numeric columns are ordinal-encoded by first appearance; a column
/// mixing the two is an error naming the offending row. Labels are always
/// encoded by first appearance.
Dataset load_csv(const std::string& path, int label_column = -1);

/// Writes a Dataset back out as CSV (header + rows; categorical cells and
/// labels are decoded to their original tokens).
void save_csv(const Dataset& ds, const std::string& path);

/// Deterministic stratified k-fold assignment: per-class counts across folds
/// differ by at most one and every fold is nonempty. Requires 2 <= k <= N.
FoldPlan stratified_kfold(const Dataset& ds, int k, uint64_t seed);

Dataset subset(const Dataset& ds, const std::vector<int>& row_indices);
std::vector<int> fold_train_indices(const FoldPlan& plan, int fold);
std::vector<int> fold_test_indices(const FoldPlan& plan, int fold);

/// N rows sampled uniformly with replacement; deterministic given seed.
Dataset bootstrap(const Dataset& ds, uint64_t seed);

/// Synthetic Gaussian clusters, one class per center.
Dataset make_blobs(int n_per_class, const std::vector<std::vector<double>>& centers,
                   double spread, uint64_t seed);

}  // namespace l2dwk
