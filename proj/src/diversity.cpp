#include "l2dwk/diversity.hpp"

namespace l2dwk {

std::string to_string(DiversityKind kind) {
    return kind == DiversityKind::disagreement ? "dis" : "df";
}

DiversityKind diversity_kind_from_string(const std::string& name) {
    if (name == "dis" || name == "disagreement") return DiversityKind::disagreement;
    if (name == "df" || name == "double_fault") return DiversityKind::double_fault;
    throw std::invalid_argument("unknown diversity kind '" + name + "' (expected dis|df)");
}

DiversityMatrix disagreement_matrix(const OracleMatrix& o) {
    if (o.n_rows < 1) throw std::invalid_argument("disagreement_matrix: empty oracle matrix");
    const int n = o.n_rows;
    const int l = o.n_cols;
    DiversityMatrix d{Matrix(l, l), DiversityKind::disagreement, false};
    for (int i = 0; i < l; ++i) {
        for (int j = i; j < l; ++j) {
            int64_t dot = 0;
            for (int k = 0; k < n; ++k)
                dot += static_cast<int>(o.at(k, i)) * static_cast<int>(o.at(k, j));
            const double v = static_cast<double>(n - dot) / (2.0 * n);
            d.entries.at(i, j) = v;
            d.entries.at(j, i) = v;
        }
    }
    return d;
}

DiversityMatrix double_fault_matrix(const OracleMatrix& o) {
    if (o.n_rows < 1) throw std::invalid_argument("double_fault_matrix: empty oracle matrix");
    const int n = o.n_rows;
    const int l = o.n_cols;
    DiversityMatrix d{Matrix(l, l), DiversityKind::double_fault, false};
    for (int i = 0; i < l; ++i) {
        for (int j = i; j < l; ++j) {
            int64_t both_wrong = 0;
            for (int k = 0; k < n; ++k)
                both_wrong += (o.at(k, i) < 0 && o.at(k, j) < 0) ? 1 : 0;
            const double v = static_cast<double>(both_wrong) / n;
            d.entries.at(i, j) = v;
            d.entries.at(j, i) = v;
        }
    }
    return d;
}

DiversityMatrix kernel_disagreement(const KernelSpec& spec, const KernelWeights& alpha,
                                    const OracleMatrix& o) {
    Matrix gram = weighted_gram(spec, alpha, o);
    for (double& v : gram.data) v = 0.5 * (1.0 - v);
    return DiversityMatrix{std::move(gram), DiversityKind::disagreement, true};
}

DiversityMatrix kernel_double_fault(const KernelSpec& spec, const KernelWeights& alpha,
                                    const OracleMatrix& o) {
    const Matrix gram = weighted_gram(spec, alpha, o);
    const std::vector<double> r = weighted_ones_row(spec, alpha, o);
    const int l = o.n_cols;
    const double scale = 1.0 / (4.0 * o.n_rows);
    DiversityMatrix d{Matrix(l, l), DiversityKind::double_fault, true};
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            d.entries.at(i, j) = scale * (1.0 - r[j] - r[i] + gram.at(i, j));
    return d;
}

double div_value(const ClassifierWeights& weights, const DiversityMatrix& d) {
    if (weights.size() != d.size())
        throw std::invalid_argument("div_value: weight length " + std::to_string(weights.size()) +
                                    " != diversity matrix size " + std::to_string(d.size()));
    double total = 0.0;
    for (int i = 0; i < d.size(); ++i) {
        double row = 0.0;
        for (int j = 0; j < d.size(); ++j) row += d.entries.at(i, j) * weights.w[j];
        total += weights.w[i] * row;
    }
    return total;
}

}  // namespace l2dwk
