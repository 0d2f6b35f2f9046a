#include "l2dwk/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace l2dwk {
namespace {

std::string strip(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

bool parse_number(const std::string& token, double* out) {
    const std::string t = strip(token);
    if (t.empty()) return false;
    double v = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) return false;
    *out = v;
    return true;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

int encode_token(const std::string& token, std::vector<std::string>& values) {
    for (size_t i = 0; i < values.size(); ++i)
        if (values[i] == token) return static_cast<int>(i);
    values.push_back(token);
    return static_cast<int>(values.size()) - 1;
}

}  // namespace

std::string Dataset::decode_feature(int row, int col) const {
    const ColumnCodec& codec = feature_codecs[col];
    if (!codec.categorical()) return format_double(features.at(row, col));
    const int code = static_cast<int>(features.at(row, col));
    return codec.categories[code];
}

std::string Dataset::decode_label(int row) const { return label_values[labels[row]]; }

Dataset load_csv(const std::string& path, int label_column) {
    const std::string text = read_text_file(path);
    std::vector<std::string> lines;
    {
        std::string cur;
        for (char ch : text) {
            if (ch == '\n') {
                lines.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(ch);
            }
        }
        if (!cur.empty()) lines.push_back(cur);
    }
    while (!lines.empty() && strip(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw std::runtime_error(path + ": empty file");

    std::vector<std::vector<std::string>> rows;
    rows.reserve(lines.size());
    const size_t arity = split_fields(lines[0]).size();
    for (size_t r = 0; r < lines.size(); ++r) {
        std::vector<std::string> fields = split_fields(lines[r]);
        for (std::string& f : fields) f = strip(f);
        if (fields.size() != arity)
            throw std::runtime_error(path + ": row " + std::to_string(r + 1) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(arity));
        rows.push_back(std::move(fields));
    }

    // Header row: first line where no field is numeric.
    bool has_header = true;
    for (const std::string& f : rows[0]) {
        double v;
        if (parse_number(f, &v)) has_header = false;
    }
    std::vector<std::string> column_names(arity);
    if (has_header) {
        column_names = rows[0];
        rows.erase(rows.begin());
        if (rows.empty()) throw std::runtime_error(path + ": header but no data rows");
    } else {
        for (size_t c = 0; c < arity; ++c) column_names[c] = "c" + std::to_string(c);
    }
    const size_t header_offset = has_header ? 2 : 1;  // file line of first data row

    if (arity < 2) throw std::runtime_error(path + ": need at least one feature column and a label column");
    size_t label_col;
    if (label_column < 0) {
        label_col = arity - 1;
    } else if (static_cast<size_t>(label_column) < arity) {
        label_col = static_cast<size_t>(label_column);
    } else {
        throw std::runtime_error(path + ": label column " + std::to_string(label_column) +
                                 " out of range (columns: " + std::to_string(arity) + ")");
    }

    const size_t n = rows.size();
    const size_t d = arity - 1;
    Dataset ds;
    ds.features = Matrix(static_cast<int>(n), static_cast<int>(d));
    ds.labels.resize(n);
    ds.feature_codecs.resize(d);
    ds.feature_names.reserve(d);
    for (size_t c = 0; c < arity; ++c)
        if (c != label_col) ds.feature_names.push_back(column_names[c]);

    size_t out_col = 0;
    for (size_t c = 0; c < arity; ++c) {
        if (c == label_col) {
            for (size_t r = 0; r < n; ++r)
                ds.labels[r] = encode_token(rows[r][c], ds.label_values);
            continue;
        }
        // Column type is decided by the first data row; any later row that
        // disagrees is a mixed-type error naming that row.
        double v0;
        const bool numeric = parse_number(rows[0][c], &v0);
        ColumnCodec& codec = ds.feature_codecs[out_col];
        for (size_t r = 0; r < n; ++r) {
            double v = 0.0;
            const bool ok = parse_number(rows[r][c], &v);
            if (ok != numeric)
                throw std::runtime_error(path + ": column '" + column_names[c] +
                                         "' mixes numeric and non-numeric values at row " +
                                         std::to_string(r + header_offset));
            if (numeric) {
                if (!std::isfinite(v))
                    throw std::runtime_error(path + ": non-finite value in column '" +
                                             column_names[c] + "' at row " +
                                             std::to_string(r + header_offset));
                ds.features.at(static_cast<int>(r), static_cast<int>(out_col)) = v;
            } else {
                if (rows[r][c].empty())
                    throw std::runtime_error(path + ": empty value in column '" + column_names[c] +
                                             "' at row " + std::to_string(r + header_offset));
                ds.features.at(static_cast<int>(r), static_cast<int>(out_col)) =
                    encode_token(rows[r][c], codec.categories);
            }
        }
        ++out_col;
    }
    ds.class_count = static_cast<int>(ds.label_values.size());
    return ds;
}

void save_csv(const Dataset& ds, const std::string& path) {
    std::ostringstream out;
    for (int c = 0; c < ds.cols(); ++c) out << ds.feature_names[c] << ",";
    out << "label\n";
    for (int r = 0; r < ds.rows(); ++r) {
        for (int c = 0; c < ds.cols(); ++c) out << ds.decode_feature(r, c) << ",";
        out << ds.decode_label(r) << "\n";
    }
    atomic_write_text(path, out.str());
}

FoldPlan stratified_kfold(const Dataset& ds, int k, uint64_t seed) {
    const int n = ds.rows();
    if (k < 2 || k > n)
        throw std::invalid_argument("stratified_kfold: k must be in [2, N], got k=" +
                                    std::to_string(k) + " N=" + std::to_string(n));
    std::vector<std::vector<int>> by_class(ds.class_count);
    for (int i = 0; i < n; ++i) by_class[ds.labels[i]].push_back(i);
    for (int c = 0; c < ds.class_count; ++c)
        if (by_class[c].empty())
            throw std::invalid_argument("stratified_kfold: class " + std::to_string(c) +
                                        " has zero instances");

    FoldPlan plan;
    plan.fold_of.assign(n, -1);
    plan.k = k;
    plan.seed = seed;
    Rng rng(seed);
    // Round-robin dealing with a rotating start keeps both per-class and
    // total fold sizes within one of each other.
    int start = 0;
    for (int c = 0; c < ds.class_count; ++c) {
        std::vector<int>& idx = by_class[c];
        rng.shuffle(idx);
        for (size_t p = 0; p < idx.size(); ++p)
            plan.fold_of[idx[p]] = static_cast<int>((start + p) % k);
        start = static_cast<int>((start + idx.size()) % k);
    }
    return plan;
}

std::vector<int> fold_train_indices(const FoldPlan& plan, int fold) {
    std::vector<int> out;
    for (size_t i = 0; i < plan.fold_of.size(); ++i)
        if (plan.fold_of[i] != fold) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<int> fold_test_indices(const FoldPlan& plan, int fold) {
    std::vector<int> out;
    for (size_t i = 0; i < plan.fold_of.size(); ++i)
        if (plan.fold_of[i] == fold) out.push_back(static_cast<int>(i));
    return out;
}

Dataset subset(const Dataset& ds, const std::vector<int>& row_indices) {
    Dataset out;
    out.features = Matrix(static_cast<int>(row_indices.size()), ds.cols());
    out.labels.resize(row_indices.size());
    out.class_count = ds.class_count;
    out.feature_names = ds.feature_names;
    out.feature_codecs = ds.feature_codecs;
    out.label_values = ds.label_values;
    for (size_t r = 0; r < row_indices.size(); ++r) {
        const int src = row_indices[r];
        for (int c = 0; c < ds.cols(); ++c)
            out.features.at(static_cast<int>(r), c) = ds.features.at(src, c);
        out.labels[r] = ds.labels[src];
    }
    return out;
}

Dataset bootstrap(const Dataset& ds, uint64_t seed) {
    if (ds.rows() < 1) throw std::invalid_argument("bootstrap: empty dataset");
    Rng rng(seed);
    std::vector<int> picks(ds.rows());
    for (int i = 0; i < ds.rows(); ++i)
        picks[i] = static_cast<int>(rng.below(static_cast<uint64_t>(ds.rows())));
    return subset(ds, picks);
}

Dataset make_blobs(int n_per_class, const std::vector<std::vector<double>>& centers,
                   double spread, uint64_t seed) {
    if (centers.size() < 2) throw std::invalid_argument("make_blobs: need at least 2 centers");
    if (!(spread > 0.0)) throw std::invalid_argument("make_blobs: spread must be positive");
    if (n_per_class < 1) throw std::invalid_argument("make_blobs: n_per_class must be >= 1");
    const size_t dim = centers[0].size();
    for (const auto& c : centers)
        if (c.size() != dim) throw std::invalid_argument("make_blobs: centers differ in arity");

    Dataset ds;
    const int n = n_per_class * static_cast<int>(centers.size());
    ds.features = Matrix(n, static_cast<int>(dim));
    ds.labels.resize(n);
    ds.class_count = static_cast<int>(centers.size());
    ds.feature_codecs.resize(dim);
    for (size_t j = 0; j < dim; ++j) ds.feature_names.push_back("f" + std::to_string(j));
    for (size_t c = 0; c < centers.size(); ++c) ds.label_values.push_back(std::to_string(c));

    Rng rng(seed);
    int row = 0;
    for (size_t c = 0; c < centers.size(); ++c) {
        for (int i = 0; i < n_per_class; ++i, ++row) {
            for (size_t j = 0; j < dim; ++j)
                ds.features.at(row, static_cast<int>(j)) = centers[c][j] + spread * rng.gaussian();
            ds.labels[row] = static_cast<int>(c);
        }
    }
    return ds;
}

}  // namespace l2dwk
