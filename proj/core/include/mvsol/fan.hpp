#pragma once

#include "mvsol/states.hpp"

#include <limits>
#include <string>
#include <vector>

namespace mvsol {

// One wedge sigma_left < x1/t < sigma_right of a self-similar fan (t > 0).
struct Wedge {
    double sigma_left = -std::numeric_limits<double>::infinity();
    double sigma_right = std::numeric_limits<double>::infinity();
    PrimitiveState state;
};

// Piecewise-constant self-similar solution on t > 0: contiguous wedges
// covering (-inf, inf) in the slope variable x1/t.
struct FanSolution {
    std::vector<Wedge> wedges;
    std::string label;
};

void validate(const FanSolution& f);

// Interface speeds between consecutive wedges (size = wedges - 1).
std::vector<double> interface_speeds(const FanSolution& f);

// State at slope x1/t; slopes exactly on an interface take the left wedge.
const PrimitiveState& state_at_slope(const FanSolution& f, double slope);

// Frame shift by sh.dv: every slope sigma -> sigma - dv and every x1-velocity
// v -> v - dv; rho, u, p unchanged.
FanSolution galilean_transform(const FanSolution& sol, const GalileanShift& sh);

} // namespace mvsol
