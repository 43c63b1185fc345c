#pragma once

#include <limits>
#include <vector>

#include "ascan/cvec.hpp"

namespace ascan {

struct SpectralMetrics {
    double sigma_max = 0.0;
    double sigma_min = 0.0;
    std::size_t numeric_rank = 0;
    double condition_number = std::numeric_limits<double>::infinity();
};

// Singular values in descending order, one-sided Jacobi. Deterministic for a
// fixed input; accurate for the small (<= 64) dense matrices used here.
std::vector<double> singular_values(const CMat& m);

// Rank counts singular values above tol * sigma_max. Throws on non-finite
// entries or tol outside (0, 1).
SpectralMetrics spectral_metrics(const CMat& m, double tol = 1e-9);

// Eigenvalues (descending) of a Hermitian matrix, two-sided Jacobi.
std::vector<double> hermitian_eigenvalues(const CMat& g);

// Metrics of a row set straight from its precomputed Gram matrix
// (G = S S^H). Cheaper than an SVD when the Gram entries are already known.
SpectralMetrics metrics_from_row_gram(const CMat& gram, double tol = 1e-9);

// Least-squares solve: returns W = (H^H H)^{-1} H^H for a tall-or-square H.
// Gaussian elimination with partial pivoting on the normal equations;
// near-singular H produces a large W, which is the physically meaningful
// outcome for a zero-forcing detector.
CMat zf_pseudo_inverse(const CMat& h);

// Orthonormal basis of span{columns} by modified Gram-Schmidt with
// reorthogonalization; columns closer than rank tolerance are dropped.
CMat orthonormal_columns(const CMat& cols, double tol = 1e-12);

// Projector onto the orthogonal complement of span{columns}: I - Q Q^H.
CMat complement_projector(const CMat& cols);

}  // namespace ascan
