#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "l2dwk/common.hpp"

namespace l2dwk {

/// Raw base-classifier outputs: entry (i, j) is classifier j's class index on
/// sample i.
struct PredictionMatrix {
    int n_rows = 0;
    int n_cols = 0;
    int class_count = 0;
    std::vector<int> entries;

    PredictionMatrix() = default;
    PredictionMatrix(int rows, int cols, int classes)
        : n_rows(rows), n_cols(cols), class_count(classes),
          entries(static_cast<size_t>(rows) * cols, 0) {}

    int& at(int i, int j) { return entries[static_cast<size_t>(i) * n_cols + j]; }
    int at(int i, int j) const { return entries[static_cast<size_t>(i) * n_cols + j]; }
    const int* row(int i) const { return entries.data() + static_cast<size_t>(i) * n_cols; }
};

/// Correctness indicators: +1 where classifier j is right on sample i, -1
/// where it is wrong. The sole input to all combination math.
struct OracleMatrix {
    int n_rows = 0;
    int n_cols = 0;
    std::vector<int8_t> entries;

    OracleMatrix() = default;
    OracleMatrix(int rows, int cols)
        : n_rows(rows), n_cols(cols), entries(static_cast<size_t>(rows) * cols, 1) {}

    int8_t& at(int i, int j) { return entries[static_cast<size_t>(i) * n_cols + j]; }
    int8_t at(int i, int j) const { return entries[static_cast<size_t>(i) * n_cols + j]; }
};

/// Convex-combination weights over classifiers: nonnegative, summing to 1.
struct ClassifierWeights {
    std::vector<double> w;

    static ClassifierWeights uniform(int l);
    void validate() const { require_simplex(w, "ClassifierWeights"); }
    int size() const { return static_cast<int>(w.size()); }
};

OracleMatrix oracle_matrix(const PredictionMatrix& preds, const std::vector<int>& labels);

/// m_i = sum_j w_j O_ij, the weighted correct-minus-wrong mass; in [-1, 1].
std::vector<double> margins(const OracleMatrix& oracle, const ClassifierWeights& weights);

/// Signed per-classifier accuracy P_j = (1/N) sum_i O_ij, in [-1, 1].
/// Conventional [0,1] accuracy is (P_j + 1) / 2.
std::vector<double> accuracy_vector(const OracleMatrix& oracle);

/// Class with the largest weighted vote; ties toward the smaller class index.
int weighted_vote(const int* preds_row, int n_classifiers, const ClassifierWeights& weights,
                  int class_count);

/// Rows where the weighted vote misses the label (1 = misvoted).
std::vector<uint8_t> misvoted_rows(const PredictionMatrix& preds, const std::vector<int>& labels,
                                   const ClassifierWeights& weights);

/// Fraction of rows where the weighted vote differs from the label.
double ensemble_error(const PredictionMatrix& preds, const std::vector<int>& labels,
                      const ClassifierWeights& weights);

// CSV round trip (rows = samples, columns = classifiers) so externally
// produced predictions can be combined without the tree pool.
void save_prediction_csv(const PredictionMatrix& preds, const std::string& path);
PredictionMatrix load_prediction_csv(const std::string& path, int class_count = 0);
void save_oracle_csv(const OracleMatrix& oracle, const std::string& path);
OracleMatrix load_oracle_csv(const std::string& path);

}  // namespace l2dwk
