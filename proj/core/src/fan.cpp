#include "mvsol/fan.hpp"

#include <cmath>
#include <limits>

namespace mvsol {

void validate(const FanSolution& f) {
    if (f.wedges.empty()) {
        throw InvalidData("FanSolution: needs at least one wedge");
    }
    const double inf = std::numeric_limits<double>::infinity();
    if (f.wedges.front().sigma_left != -inf || f.wedges.back().sigma_right != inf) {
        throw InvalidData("FanSolution: wedges must cover (-inf, inf)");
    }
    for (size_t i = 0; i < f.wedges.size(); ++i) {
        const Wedge& w = f.wedges[i];
        if (!(w.sigma_left < w.sigma_right)) {
            throw InvalidData("FanSolution: wedge slopes must be increasing");
        }
        if (i + 1 < f.wedges.size() && f.wedges[i + 1].sigma_left != w.sigma_right) {
            throw InvalidData("FanSolution: wedges must be contiguous");
        }
        validate(w.state);
    }
}

std::vector<double> interface_speeds(const FanSolution& f) {
    std::vector<double> speeds;
    for (size_t i = 0; i + 1 < f.wedges.size(); ++i) {
        speeds.push_back(f.wedges[i].sigma_right);
    }
    return speeds;
}

const PrimitiveState& state_at_slope(const FanSolution& f, double slope) {
    for (const Wedge& w : f.wedges) {
        if (slope <= w.sigma_right) {
            return w.state;
        }
    }
    return f.wedges.back().state;
}

FanSolution galilean_transform(const FanSolution& sol, const GalileanShift& sh) {
    validate(sol);
    FanSolution out = sol;
    for (Wedge& w : out.wedges) {
        if (std::isfinite(w.sigma_left)) {
            w.sigma_left -= sh.dv;
        }
        if (std::isfinite(w.sigma_right)) {
            w.sigma_right -= sh.dv;
        }
        w.state.v -= sh.dv;
    }
    return out;
}

} // namespace mvsol
