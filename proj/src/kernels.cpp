#include "l2dwk/kernels.hpp"

#include <cmath>

namespace l2dwk {

KernelSpec KernelSpec::linear(double c) { return KernelSpec{Kind::linear, c, 1.0, 2}; }
KernelSpec KernelSpec::gaussian(double sigma) { return KernelSpec{Kind::gaussian, 0.0, sigma, 2}; }
KernelSpec KernelSpec::polynomial(double c, int degree) {
    return KernelSpec{Kind::polynomial, c, 1.0, degree};
}

void KernelSpec::validate() const {
    if (kind == Kind::gaussian && !(sigma > 0.0))
        throw std::invalid_argument("KernelSpec: gaussian sigma must be > 0");
    if (kind == Kind::polynomial && degree < 1)
        throw std::invalid_argument("KernelSpec: polynomial degree must be >= 1");
    if (kind != Kind::gaussian && c < 0.0)
        throw std::invalid_argument("KernelSpec: kernel shift c must be >= 0");
}

std::string KernelSpec::name() const {
    switch (kind) {
        case Kind::linear: return "linear";
        case Kind::gaussian: return "gauss";
        case Kind::polynomial: return "poly";
    }
    return "?";
}

double kernel_eval(const KernelSpec& spec, double a, double b) {
    spec.validate();
    switch (spec.kind) {
        case KernelSpec::Kind::linear:
            return a * b + spec.c;
        case KernelSpec::Kind::gaussian: {
            const double diff = a - b;
            return std::exp(-(diff * diff) / (2.0 * spec.sigma * spec.sigma));
        }
        case KernelSpec::Kind::polynomial:
            return std::pow(a * b + spec.c, static_cast<double>(spec.degree));
    }
    throw std::logic_error("kernel_eval: unreachable");
}

KernelWeights KernelWeights::uniform(int n) {
    if (n < 1) throw std::invalid_argument("KernelWeights::uniform: need n >= 1");
    return KernelWeights{std::vector<double>(n, 1.0 / n)};
}

Matrix weighted_gram(const KernelSpec& spec, const KernelWeights& alpha, const OracleMatrix& o) {
    alpha.validate();
    if (alpha.size() != o.n_rows)
        throw std::invalid_argument("weighted_gram: alpha length " + std::to_string(alpha.size()) +
                                    " != sample count " + std::to_string(o.n_rows));
    const int n = o.n_rows;
    const int l = o.n_cols;
    // Oracle entries are +-1, so a kernel evaluation takes one of four values.
    const double table[2][2] = {
        {kernel_eval(spec, -1.0, -1.0), kernel_eval(spec, -1.0, 1.0)},
        {kernel_eval(spec, 1.0, -1.0), kernel_eval(spec, 1.0, 1.0)},
    };
    // Column-contiguous copy keeps the pairwise sweep cache-friendly.
    std::vector<uint8_t> cols(static_cast<size_t>(l) * n);
    for (int j = 0; j < l; ++j)
        for (int k = 0; k < n; ++k)
            cols[static_cast<size_t>(j) * n + k] = o.at(k, j) > 0 ? 1 : 0;

    Matrix gram(l, l);
    for (int i = 0; i < l; ++i) {
        const uint8_t* ci = cols.data() + static_cast<size_t>(i) * n;
        for (int j = i; j < l; ++j) {
            const uint8_t* cj = cols.data() + static_cast<size_t>(j) * n;
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += alpha.alpha[k] * table[ci[k]][cj[k]];
            gram.at(i, j) = s;
            gram.at(j, i) = s;
        }
    }
    return gram;
}

std::vector<double> weighted_ones_row(const KernelSpec& spec, const KernelWeights& alpha,
                                      const OracleMatrix& o) {
    alpha.validate();
    if (alpha.size() != o.n_rows)
        throw std::invalid_argument("weighted_ones_row: alpha length != sample count");
    const double k_right = kernel_eval(spec, 1.0, 1.0);
    const double k_wrong = kernel_eval(spec, 1.0, -1.0);
    std::vector<double> out(o.n_cols, 0.0);
    for (int j = 0; j < o.n_cols; ++j) {
        double s = 0.0;
        for (int k = 0; k < o.n_rows; ++k)
            s += alpha.alpha[k] * (o.at(k, j) > 0 ? k_right : k_wrong);
        out[j] = s;
    }
    return out;
}

}  // namespace l2dwk
