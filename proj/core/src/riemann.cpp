#include "mvsol/riemann.hpp"

#include <cmath>

namespace mvsol {

void validate(const RiemannData& d) {
    if (!(d.rho_minus > kPositivityFloor) || !std::isfinite(d.rho_minus)) {
        throw InvalidData("RiemannData: rho_minus must be positive");
    }
    if (!(d.p_minus > kPositivityFloor) || !std::isfinite(d.p_minus) ||
        !std::isfinite(d.p_plus)) {
        throw InvalidData("RiemannData: pressures must be positive and finite");
    }
    if (!(d.p_plus > d.p_minus)) {
        throw InvalidData("RiemannData: requires p_plus > p_minus");
    }
}

ShockConstants shock_constants(const RiemannData& d) {
    validate(d);
    ShockConstants k;
    k.rho_K = d.rho_minus * (d.p_minus + 3.0 * d.p_plus) / (3.0 * d.p_minus + d.p_plus);
    k.v_K = std::sqrt(2.0 / d.rho_minus) * (d.p_plus - d.p_minus)
        / std::sqrt(d.p_minus + 3.0 * d.p_plus);
    k.shock_speed = -(d.p_plus + 3.0 * d.p_minus)
        / std::sqrt(2.0 * d.rho_minus * (d.p_minus + 3.0 * d.p_plus));
    return k;
}

FanSolution self_similar_shock(const RiemannData& d) {
    const ShockConstants k = shock_constants(d);
    FanSolution f;
    f.label = "one-shock";
    Wedge left;
    left.sigma_right = k.shock_speed;
    left.state = PrimitiveState{d.rho_minus, k.v_K, 0.0, d.p_minus};
    Wedge right;
    right.sigma_left = k.shock_speed;
    right.state = PrimitiveState{k.rho_K, 0.0, 0.0, d.p_plus};
    f.wedges = {left, right};
    validate(f);
    return f;
}

std::vector<InterfaceJumpReport> rh_residual(const FanSolution& f, const GasModel& g) {
    validate(f);
    validate(g);
    std::vector<InterfaceJumpReport> reports;
    for (size_t i = 0; i + 1 < f.wedges.size(); ++i) {
        const double sigma = f.wedges[i].sigma_right;
        const ConservativeState ql = primitive_to_conservative(f.wedges[i].state, g);
        const ConservativeState qr = primitive_to_conservative(f.wedges[i + 1].state, g);
        const Vec4 cl = conserved_vector(ql);
        const Vec4 cr = conserved_vector(qr);
        const Vec4 fl = flux_x1(ql, g);
        const Vec4 fr = flux_x1(qr, g);
        InterfaceJumpReport rep;
        rep.sigma = sigma;
        for (int c = 0; c < 4; ++c) {
            rep.residual[c] = sigma * (cr[c] - cl[c]) - (fr[c] - fl[c]);
            const double scale = 1.0 + std::max(std::abs(fl[c]), std::abs(fr[c]));
            rep.normalized[c] = rep.residual[c] / scale;
        }
        reports.push_back(rep);
    }
    return reports;
}

std::vector<LaxReport> lax_admissibility(const FanSolution& f, const GasModel& g) {
    validate(f);
    validate(g);
    std::vector<LaxReport> reports;
    for (size_t i = 0; i + 1 < f.wedges.size(); ++i) {
        const PrimitiveState& sl = f.wedges[i].state;
        const PrimitiveState& sr = f.wedges[i + 1].state;
        LaxReport rep;
        rep.sigma = f.wedges[i].sigma_right;
        rep.v_left = sl.v;
        rep.c_left = sound_speed(sl, g);
        rep.v_right = sr.v;
        rep.c_right = sound_speed(sr, g);
        const bool zero_jump = sl.rho == sr.rho && sl.v == sr.v && sl.u == sr.u && sl.p == sr.p;
        if (zero_jump) {
            rep.verdict = LaxVerdict::ContactDegenerate;
        } else if (rep.v_left - rep.c_left > rep.sigma && rep.sigma > rep.v_right - rep.c_right) {
            rep.verdict = LaxVerdict::Admissible1Shock;
        } else {
            rep.verdict = LaxVerdict::NotA1Shock;
        }
        reports.push_back(rep);
    }
    return reports;
}

} // namespace mvsol
