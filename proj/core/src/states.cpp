#include "mvsol/states.hpp"

#include <algorithm>
#include <cmath>

namespace mvsol {

void validate(const GasModel& g) {
    if (!(g.c_v > 0.0) || !std::isfinite(g.c_v)) {
        throw InvalidData("GasModel: c_v must be positive and finite");
    }
}

void validate(const PrimitiveState& s) {
    if (!(s.rho > kPositivityFloor) || !std::isfinite(s.rho)) {
        throw NonPhysical("PrimitiveState: density must be positive");
    }
    if (!(s.p > kPositivityFloor) || !std::isfinite(s.p)) {
        throw NonPhysical("PrimitiveState: pressure must be positive");
    }
    if (!std::isfinite(s.v) || !std::isfinite(s.u)) {
        throw NonPhysical("PrimitiveState: velocity must be finite");
    }
}

void validate(const ConservativeState& c) {
    if (!(c.rho > kPositivityFloor) || !std::isfinite(c.rho)) {
        throw NonPhysical("ConservativeState: density must be positive");
    }
    if (!std::isfinite(c.m1) || !std::isfinite(c.m2) || !std::isfinite(c.E)) {
        throw NonPhysical("ConservativeState: fields must be finite");
    }
    const double internal = c.E - 0.5 * (c.m1 * c.m1 + c.m2 * c.m2) / c.rho;
    if (!(internal > kPositivityFloor)) {
        throw NonPhysical("ConservativeState: internal energy must be positive");
    }
}

void validate(const ExtendedState& x) {
    for (double v : x.z) {
        if (!std::isfinite(v)) throw NonPhysical("ExtendedState: entries must be finite");
    }
    if (!x.constrained) return;
    if (!(x.z[0] > kPositivityFloor)) {
        throw NonPhysical("ExtendedState: constrained state needs positive density");
    }
    const double rho = x.z[0], m1 = x.z[1], m2 = x.z[2], E = x.z[5];
    const double ke = 0.5 * (m1 * m1 + m2 * m2) / rho;
    const Vec4 expect{(m1 * m1 - m2 * m2) / (2.0 * rho), m1 * m2 / rho,
                      (2.0 * E - ke) * m1 / rho, (2.0 * E - ke) * m2 / rho};
    const std::array<double, 4> got{x.z[3], x.z[4], x.z[6], x.z[7]};
    for (int k = 0; k < 4; ++k) {
        const double scale = 1.0 + std::max(std::abs(expect[k]), std::abs(got[k]));
        if (std::abs(expect[k] - got[k]) > 1e-9 * scale) {
            throw NonPhysical("ExtendedState: nonlinear constraints violated");
        }
    }
}

ConservativeState primitive_to_conservative(const PrimitiveState& s, const GasModel& g) {
    validate(g);
    validate(s);
    ConservativeState c;
    c.rho = s.rho;
    c.m1 = s.rho * s.v;
    c.m2 = s.rho * s.u;
    c.E = 0.5 * s.rho * (s.v * s.v + s.u * s.u) + g.c_v * s.p;
    return c;
}

PrimitiveState conservative_to_primitive(const ConservativeState& c, const GasModel& g) {
    validate(g);
    validate(c);
    PrimitiveState s;
    s.rho = c.rho;
    s.v = c.m1 / c.rho;
    s.u = c.m2 / c.rho;
    s.p = (c.E - 0.5 * (c.m1 * c.m1 + c.m2 * c.m2) / c.rho) / g.c_v;
    return s;
}

ExtendedState lift_extended(const ConservativeState& c) {
    validate(c);
    ExtendedState x;
    const double ke = 0.5 * (c.m1 * c.m1 + c.m2 * c.m2) / c.rho;
    x.z[0] = c.rho;
    x.z[1] = c.m1;
    x.z[2] = c.m2;
    x.z[3] = (c.m1 * c.m1 - c.m2 * c.m2) / (2.0 * c.rho);
    x.z[4] = c.m1 * c.m2 / c.rho;
    x.z[5] = c.E;
    x.z[6] = (2.0 * c.E - ke) * c.m1 / c.rho;
    x.z[7] = (2.0 * c.E - ke) * c.m2 / c.rho;
    x.constrained = true;
    return x;
}

double entropy(const PrimitiveState& s, const GasModel& g) {
    validate(g);
    validate(s);
    const double theta = s.p / s.rho;
    return g.c_v * std::log(theta) - std::log(s.rho);
}

Vec4 flux_x1(const ConservativeState& c, const GasModel& g) {
    const double p = (c.E - 0.5 * (c.m1 * c.m1 + c.m2 * c.m2) / c.rho) / g.c_v;
    return {c.m1, c.m1 * c.m1 / c.rho + p, c.m1 * c.m2 / c.rho, (c.E + p) * c.m1 / c.rho};
}

Vec4 conserved_vector(const ConservativeState& c) {
    return {c.rho, c.m1, c.m2, c.E};
}

double sound_speed(const PrimitiveState& s, const GasModel& g) {
    return std::sqrt((1.0 + 1.0 / g.c_v) * s.p / s.rho);
}

} // namespace mvsol
