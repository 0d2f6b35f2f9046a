#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "l2dwk/oracle.hpp"

namespace testutil {

/// Cyclic Jacobi eigenvalues of a symmetric matrix. Independent oracle for
/// PSD checks; the library itself uses power iteration.
inline std::vector<double> jacobi_eigenvalues(l2dwk::Matrix a) {
    const int n = a.n_rows;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a.at(p, q) * a.at(p, q);
        if (off < 1e-24) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a.at(k, p);
                    const double akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a.at(p, k);
                    const double aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eigs(n);
    for (int i = 0; i < n; ++i) eigs[i] = a.at(i, i);
    return eigs;
}

inline double min_eigenvalue(const l2dwk::Matrix& a) {
    double mn = 0.0;
    bool first = true;
    for (double e : jacobi_eigenvalues(a)) {
        if (first || e < mn) mn = e;
        first = false;
    }
    return mn;
}

inline l2dwk::OracleMatrix random_oracle(l2dwk::Rng& rng, int n, int l) {
    l2dwk::OracleMatrix o(n, l);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < l; ++j) o.at(i, j) = rng.unit() < 0.5 ? int8_t{-1} : int8_t{1};
    return o;
}

inline std::vector<double> random_simplex(l2dwk::Rng& rng, int n) {
    std::vector<double> v(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        v[i] = -std::log(1.0 - rng.unit());
        sum += v[i];
    }
    for (double& x : v) x /= sum;
    return v;
}

/// Binary predictions consistent with an oracle matrix under all-zero labels:
/// entry is 0 where the oracle says correct, 1 where wrong.
inline l2dwk::PredictionMatrix binary_preds_for_oracle(const l2dwk::OracleMatrix& o) {
    l2dwk::PredictionMatrix preds(o.n_rows, o.n_cols, 2);
    for (int i = 0; i < o.n_rows; ++i)
        for (int j = 0; j < o.n_cols; ++j) preds.at(i, j) = o.at(i, j) > 0 ? 0 : 1;
    return preds;
}

/// Self-cleaning scratch directory for file-format tests.
class TempDir {
public:
    TempDir() {
        char pattern[] = "/tmp/l2dwk-test-XXXXXX";
        path_ = mkdtemp(pattern);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const { return path_ + "/" + name; }

private:
    std::string path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

}  // namespace testutil
