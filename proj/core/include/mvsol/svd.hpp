#pragma once

#include "mvsol/common.hpp"

#include <vector>

namespace mvsol {

// Thin SVD A = U diag(sigma) V^T of a small dense matrix (rows >= 1, cols >= 1).
// sigma is sorted in decreasing order; V columns are the matching right
// singular vectors. U columns belonging to zero singular values are zero.
struct SvdResult {
    std::vector<double> sigma;          // length k = min(rows, cols)
    std::vector<std::vector<double>> U; // rows x k
    std::vector<std::vector<double>> V; // cols x cols; trailing columns beyond
                                        // k span the null space of a wide matrix
};

// One-sided Jacobi with a fixed sweep order; bit-reproducible for fixed input.
SvdResult svd_small(const std::vector<std::vector<double>>& A);

} // namespace mvsol
