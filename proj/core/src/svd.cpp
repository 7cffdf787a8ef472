#include "mvsol/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mvsol {

namespace {

// One-sided Jacobi on the columns of M (rows x cols, cols <= rows is not
// required; correctness only needs column operations). Accumulates the
// rotations into V (cols x cols, starts as identity).
void jacobi_orthogonalize(std::vector<std::vector<double>>& M,
                          std::vector<std::vector<double>>& V) {
    const int rows = static_cast<int>(M.size());
    const int cols = static_cast<int>(M[0].size());
    const double eps = std::numeric_limits<double>::epsilon();

    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < cols - 1; ++p) {
            for (int q = p + 1; q < cols; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (int i = 0; i < rows; ++i) {
                    app += M[i][p] * M[i][p];
                    aqq += M[i][q] * M[i][q];
                    apq += M[i][p] * M[i][q];
                }
                if (std::abs(apq) <= 1e2 * eps * std::sqrt(app * aqq) || apq == 0.0) {
                    continue;
                }
                rotated = true;
                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0)
                    / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                for (int i = 0; i < rows; ++i) {
                    const double mp = M[i][p];
                    const double mq = M[i][q];
                    M[i][p] = cs * mp - sn * mq;
                    M[i][q] = sn * mp + cs * mq;
                }
                for (int i = 0; i < cols; ++i) {
                    const double vp = V[i][p];
                    const double vq = V[i][q];
                    V[i][p] = cs * vp - sn * vq;
                    V[i][q] = sn * vp + cs * vq;
                }
            }
        }
        if (!rotated) {
            break;
        }
    }
}

} // namespace

SvdResult svd_small(const std::vector<std::vector<double>>& A) {
    if (A.empty() || A[0].empty()) {
        throw DimensionMismatch("svd_small: empty matrix");
    }
    const int rows = static_cast<int>(A.size());
    const int cols = static_cast<int>(A[0].size());
    for (const auto& row : A) {
        if (static_cast<int>(row.size()) != cols) {
            throw DimensionMismatch("svd_small: ragged matrix");
        }
    }

    std::vector<std::vector<double>> M = A;
    std::vector<std::vector<double>> V(cols, std::vector<double>(cols, 0.0));
    for (int i = 0; i < cols; ++i) {
        V[i][i] = 1.0;
    }
    jacobi_orthogonalize(M, V);

    std::vector<double> norms(cols, 0.0);
    for (int j = 0; j < cols; ++j) {
        double acc = 0.0;
        for (int i = 0; i < rows; ++i) {
            acc += M[i][j] * M[i][j];
        }
        norms[j] = std::sqrt(acc);
    }

    // Stable decreasing order (ties keep the lower column index first).
    std::vector<int> order(cols);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return norms[a] > norms[b]; });

    const int k = std::min(rows, cols);
    SvdResult out;
    out.sigma.resize(k);
    out.U.assign(rows, std::vector<double>(k, 0.0));
    out.V.assign(cols, std::vector<double>(cols, 0.0));
    for (int j = 0; j < cols; ++j) {
        const int src = order[j];
        for (int i = 0; i < cols; ++i) {
            out.V[i][j] = V[i][src];
        }
        if (j < k) {
            out.sigma[j] = norms[src];
            if (norms[src] > 0.0) {
                for (int i = 0; i < rows; ++i) {
                    out.U[i][j] = M[i][src] / norms[src];
                }
            }
        }
    }
    // Keep all right singular vectors even when cols > k: callers that need
    // the kernel of a wide matrix read the trailing V columns. For cols <= rows
    // (the 4x3 symbol case) V is cols x cols anyway.
    return out;
}

} // namespace mvsol
