#pragma once

#include <string>
#include <vector>

#include "l2dwk/oracle.hpp"

namespace l2dwk {

/// Kernel applied per sample to scalar oracle entries.
struct KernelSpec {
    enum class Kind { linear, gaussian, polynomial };

    Kind kind = Kind::linear;
    double c = 0.0;      // linear / polynomial shift; must be >= 0
    double sigma = 1.0;  // gaussian width; must be > 0
    int degree = 2;      // polynomial degree; must be >= 1

    static KernelSpec linear(double c = 0.0);
    static KernelSpec gaussian(double sigma = 1.0);
    static KernelSpec polynomial(double c = 1.0, int degree = 2);

    void validate() const;
    std::string name() const;
};

/// Per-sample weights inside kernel sums: nonnegative, summing to 1.
struct KernelWeights {
    std::vector<double> alpha;

    static KernelWeights uniform(int n);
    void validate() const { require_simplex(alpha, "KernelWeights"); }
    int size() const { return static_cast<int>(alpha.size()); }
};

/// linear: a*b + c; gaussian: exp(-(a-b)^2 / (2 sigma^2)); polynomial: (a*b + c)^d.
double kernel_eval(const KernelSpec& spec, double a, double b);

/// L x L weighted gram of oracle columns: entry (i, j) = sum_k alpha_k *
/// k(O_ki, O_kj). Symmetric; PSD for all three kernels with c >= 0.
Matrix weighted_gram(const KernelSpec& spec, const KernelWeights& alpha, const OracleMatrix& o);

/// Component j = sum_k alpha_k * k(1, O_kj); the kernel-weighted analogue of
/// the signed accuracy vector.
std::vector<double> weighted_ones_row(const KernelSpec& spec, const KernelWeights& alpha,
                                      const OracleMatrix& o);

}  // namespace l2dwk
