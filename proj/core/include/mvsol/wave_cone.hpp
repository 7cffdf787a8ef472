#pragma once

#include "mvsol/linear_operator.hpp"
#include "mvsol/svd.hpp"

#include <optional>
#include <vector>

namespace mvsol {

// A singular value sigma_k counts as zero when
//   sigma_k <= max(l, N) * eps_machine * sigma_max * kappa.
// Verdicts with a singular value within a factor `marginal_band` of the
// threshold (on either side) carry the `marginal` flag.
struct RankTolerance {
    double kappa = 1e3;
    double marginal_band = 10.0;
};

struct ConeVerdict {
    bool in_cone = false;
    int rank = 0;
    std::vector<double> singular_values; // decreasing
    std::optional<std::vector<double>> kernel_direction; // unit N-vector when in_cone
    bool marginal = false;
};

// Wave-cone membership: a nonzero xi with Z xi = 0 exists iff rank(Z) < N,
// which for the 4x3 Euler symbol is the rank < 3 criterion.
ConeVerdict cone_membership(const SymbolMatrix& Z, const RankTolerance& tol_policy = {});

} // namespace mvsol
