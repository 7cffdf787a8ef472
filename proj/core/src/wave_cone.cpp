#include "mvsol/wave_cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mvsol {

ConeVerdict cone_membership(const SymbolMatrix& Z, const RankTolerance& tol_policy) {
    const SvdResult dec = svd_small(Z.Z);
    ConeVerdict verdict;
    verdict.singular_values = dec.sigma;

    const double sigma_max = dec.sigma.empty() ? 0.0 : dec.sigma.front();
    const double eps = std::numeric_limits<double>::epsilon();
    const double threshold =
        static_cast<double>(std::max(Z.l, Z.N)) * eps * sigma_max * tol_policy.kappa;

    int rank = 0;
    for (double s : dec.sigma) {
        if (s > threshold) {
            ++rank;
        }
        if (threshold > 0.0 && s > 0.0) {
            const double ratio = s / threshold;
            if (ratio <= tol_policy.marginal_band && ratio >= 1.0 / tol_policy.marginal_band) {
                verdict.marginal = true;
            }
        }
    }
    verdict.rank = rank;
    verdict.in_cone = rank < Z.N;

    if (verdict.in_cone) {
        // Kernel direction: the right singular vector of the smallest singular
        // value (last V column); for a zero matrix this is deterministic too.
        std::vector<double> xi(Z.N, 0.0);
        const int col = static_cast<int>(dec.V[0].size()) - 1;
        for (int i = 0; i < Z.N; ++i) {
            xi[i] = dec.V[i][col];
        }
        double norm = 0.0;
        for (double c : xi) {
            norm += c * c;
        }
        norm = std::sqrt(norm);
        if (norm > 0.0) {
            for (double& c : xi) {
                c /= norm;
            }
        }
        verdict.kernel_direction = xi;
    }
    return verdict;
}

} // namespace mvsol
