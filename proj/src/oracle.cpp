#include "l2dwk/oracle.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace l2dwk {

ClassifierWeights ClassifierWeights::uniform(int l) {
    if (l < 1) throw std::invalid_argument("ClassifierWeights::uniform: need l >= 1");
    return ClassifierWeights{std::vector<double>(l, 1.0 / l)};
}

OracleMatrix oracle_matrix(const PredictionMatrix& preds, const std::vector<int>& labels) {
    if (static_cast<int>(labels.size()) != preds.n_rows)
        throw std::invalid_argument("oracle_matrix: labels length " +
                                    std::to_string(labels.size()) + " != rows " +
                                    std::to_string(preds.n_rows));
    OracleMatrix o(preds.n_rows, preds.n_cols);
    for (int i = 0; i < preds.n_rows; ++i)
        for (int j = 0; j < preds.n_cols; ++j)
            o.at(i, j) = preds.at(i, j) == labels[i] ? int8_t{1} : int8_t{-1};
    return o;
}

std::vector<double> margins(const OracleMatrix& oracle, const ClassifierWeights& weights) {
    if (weights.size() != oracle.n_cols)
        throw std::invalid_argument("margins: weight length != classifier count");
    weights.validate();
    std::vector<double> m(oracle.n_rows);
    for (int i = 0; i < oracle.n_rows; ++i) {
        double s = 0.0;
        for (int j = 0; j < oracle.n_cols; ++j) s += weights.w[j] * oracle.at(i, j);
        m[i] = s;
    }
    return m;
}

std::vector<double> accuracy_vector(const OracleMatrix& oracle) {
    if (oracle.n_rows < 1) throw std::invalid_argument("accuracy_vector: empty oracle matrix");
    std::vector<double> p(oracle.n_cols, 0.0);
    for (int i = 0; i < oracle.n_rows; ++i)
        for (int j = 0; j < oracle.n_cols; ++j) p[j] += oracle.at(i, j);
    for (double& v : p) v /= oracle.n_rows;
    return p;
}

namespace {

int vote_row(const int* preds_row, int n_classifiers, const std::vector<double>& w,
             std::vector<double>& mass) {
    std::fill(mass.begin(), mass.end(), 0.0);
    for (int j = 0; j < n_classifiers; ++j) mass[preds_row[j]] += w[j];
    int best = 0;
    for (int c = 1; c < static_cast<int>(mass.size()); ++c)
        if (mass[c] > mass[best]) best = c;
    return best;
}

}  // namespace

int weighted_vote(const int* preds_row, int n_classifiers, const ClassifierWeights& weights,
                  int class_count) {
    if (weights.size() != n_classifiers)
        throw std::invalid_argument("weighted_vote: weight length != classifier count");
    weights.validate();
    std::vector<double> mass(class_count);
    return vote_row(preds_row, n_classifiers, weights.w, mass);
}

std::vector<uint8_t> misvoted_rows(const PredictionMatrix& preds, const std::vector<int>& labels,
                                   const ClassifierWeights& weights) {
    if (static_cast<int>(labels.size()) != preds.n_rows)
        throw std::invalid_argument("misvoted_rows: labels length != rows");
    if (weights.size() != preds.n_cols)
        throw std::invalid_argument("misvoted_rows: weight length != classifier count");
    weights.validate();
    std::vector<uint8_t> out(preds.n_rows);
    std::vector<double> mass(preds.class_count);
    for (int i = 0; i < preds.n_rows; ++i)
        out[i] = vote_row(preds.row(i), preds.n_cols, weights.w, mass) != labels[i];
    return out;
}

double ensemble_error(const PredictionMatrix& preds, const std::vector<int>& labels,
                      const ClassifierWeights& weights) {
    if (preds.n_rows < 1) throw std::invalid_argument("ensemble_error: empty prediction matrix");
    const std::vector<uint8_t> miss = misvoted_rows(preds, labels, weights);
    int64_t wrong = 0;
    for (uint8_t m : miss) wrong += m;
    return static_cast<double>(wrong) / preds.n_rows;
}

namespace {

std::vector<std::vector<long>> parse_int_csv(const std::string& path) {
    const std::string text = read_text_file(path);
    std::vector<std::vector<long>> rows;
    std::string line;
    size_t lineno = 0;
    std::istringstream in(text);
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<long> row;
        size_t pos = 0;
        while (pos <= line.size()) {
            size_t next = line.find(',', pos);
            if (next == std::string::npos) next = line.size();
            long v = 0;
            auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + next, v);
            if (ec != std::errc() || ptr != line.data() + next)
                throw std::runtime_error(path + ": bad integer at line " + std::to_string(lineno));
            row.push_back(v);
            pos = next + 1;
            if (next == line.size()) break;
        }
        if (!rows.empty() && row.size() != rows[0].size())
            throw std::runtime_error(path + ": ragged row at line " + std::to_string(lineno));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error(path + ": empty file");
    return rows;
}

}  // namespace

void save_prediction_csv(const PredictionMatrix& preds, const std::string& path) {
    std::ostringstream out;
    for (int i = 0; i < preds.n_rows; ++i) {
        for (int j = 0; j < preds.n_cols; ++j) {
            if (j) out << ',';
            out << preds.at(i, j);
        }
        out << '\n';
    }
    atomic_write_text(path, out.str());
}

PredictionMatrix load_prediction_csv(const std::string& path, int class_count) {
    const auto rows = parse_int_csv(path);
    PredictionMatrix preds(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()), 0);
    long max_class = 0;
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) {
            if (rows[i][j] < 0)
                throw std::runtime_error(path + ": negative class index at row " +
                                         std::to_string(i + 1));
            max_class = std::max(max_class, rows[i][j]);
            preds.at(static_cast<int>(i), static_cast<int>(j)) = static_cast<int>(rows[i][j]);
        }
    preds.class_count = class_count > 0 ? class_count : static_cast<int>(max_class) + 1;
    if (max_class >= preds.class_count)
        throw std::runtime_error(path + ": class index " + std::to_string(max_class) +
                                 " exceeds class count " + std::to_string(preds.class_count));
    return preds;
}

void save_oracle_csv(const OracleMatrix& oracle, const std::string& path) {
    std::ostringstream out;
    for (int i = 0; i < oracle.n_rows; ++i) {
        for (int j = 0; j < oracle.n_cols; ++j) {
            if (j) out << ',';
            out << static_cast<int>(oracle.at(i, j));
        }
        out << '\n';
    }
    atomic_write_text(path, out.str());
}

OracleMatrix load_oracle_csv(const std::string& path) {
    const auto rows = parse_int_csv(path);
    OracleMatrix o(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) {
            if (rows[i][j] != 1 && rows[i][j] != -1)
                throw std::runtime_error(path + ": oracle entries must be +1 or -1 (row " +
                                         std::to_string(i + 1) + ")");
            o.at(static_cast<int>(i), static_cast<int>(j)) = static_cast<int8_t>(rows[i][j]);
        }
    return o;
}

}  // namespace l2dwk
