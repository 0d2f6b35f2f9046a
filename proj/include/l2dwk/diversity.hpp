#pragma once

#include <string>

#include "l2dwk/kernels.hpp"

namespace l2dwk {

enum class DiversityKind { disagreement, double_fault };

std::string to_string(DiversityKind kind);
DiversityKind diversity_kind_from_string(const std::string& name);

/// L x L symmetric pairwise diversity. Plain disagreement/double-fault entries
/// lie in [0, 1]; kernel-weighted variants follow the weighted-gram scale.
/// Note double fault counts coincident errors, so larger entries mean LESS
/// diverse behaviour.
struct DiversityMatrix {
    Matrix entries;
    DiversityKind kind = DiversityKind::disagreement;
    bool kernelized = false;

    int size() const { return entries.n_rows; }
};

/// Entry (i, j) = fraction of samples where classifiers i and j differ in
/// correctness; diagonal 0.
DiversityMatrix disagreement_matrix(const OracleMatrix& o);

/// Entry (i, j) = fraction of samples where both classifiers are wrong.
DiversityMatrix double_fault_matrix(const OracleMatrix& o);

/// (1/2) (1 - G) with G the weighted gram of oracle columns.
DiversityMatrix kernel_disagreement(const KernelSpec& spec, const KernelWeights& alpha,
                                    const OracleMatrix& o);

/// (1/(4N)) (1 - r_i - r_j + G_ij) with r the weighted ones-row. The row and
/// column terms are the broadcast of r, which keeps the matrix symmetric and
/// reduces to the plain double-fault matrix (up to 1/N) for the linear kernel
/// with uniform weights.
DiversityMatrix kernel_double_fault(const KernelSpec& spec, const KernelWeights& alpha,
                                    const OracleMatrix& o);

/// Scalar ensemble diversity w' D w.
double div_value(const ClassifierWeights& weights, const DiversityMatrix& d);

}  // namespace l2dwk
