#pragma once

#include "mvsol/common.hpp"

namespace mvsol {

// Ideal gas with p = rho*theta and e = c_v*theta. The closed forms of the
// shock construction are only valid for c_v = 1 (adiabatic exponent 2).
struct GasModel {
    double c_v = 1.0;
};

// Physical fields (rho, (v, u), p): density, velocity components, pressure.
struct PrimitiveState {
    double rho = 1.0;
    double v = 0.0; // x1-velocity
    double u = 0.0; // x2-velocity
    double p = 1.0;
};

// Conserved fields (rho, m, E): density, momentum, total energy density.
struct ConservativeState {
    double rho = 1.0;
    double m1 = 0.0;
    double m2 = 0.0;
    double E = 1.0;
};

// The 8-vector z = (rho, m1, m2, U11, U12, E, r1, r2) of the linear form.
// When `constrained` is set, U = m (x) m / rho - (|m|^2 / (2 rho)) I (traceless
// symmetric, U22 stored implicitly as -U11) and r = (2E - |m|^2/(2 rho)) m/rho.
struct ExtendedState {
    Vec8 z{};
    bool constrained = false;

    double rho() const { return z[0]; }
    double m1() const { return z[1]; }
    double m2() const { return z[2]; }
    double U11() const { return z[3]; }
    double U12() const { return z[4]; }
    double E() const { return z[5]; }
    double r1() const { return z[6]; }
    double r2() const { return z[7]; }
};

// Frame shift along e1: (rho,(v,u),p)(t,x) -> (rho,(v-dv,u),p)(t, x + dv*t*e1).
struct GalileanShift {
    double dv = 0.0;
};

void validate(const GasModel& g);
void validate(const PrimitiveState& s);
void validate(const ConservativeState& c);
// Finite entries; constrained states additionally have rho > 0 and satisfy
// the nonlinear constraints to 1e-9 relative accuracy.
void validate(const ExtendedState& z);

ConservativeState primitive_to_conservative(const PrimitiveState& s, const GasModel& g = {});
PrimitiveState conservative_to_primitive(const ConservativeState& c, const GasModel& g = {});
ExtendedState lift_extended(const ConservativeState& c);
double entropy(const PrimitiveState& s, const GasModel& g = {});

// The x1-directed flux of the conservative system evaluated at a state:
// (m1, m1^2/rho + p, m1 m2/rho, (E + p) m1/rho).
Vec4 flux_x1(const ConservativeState& c, const GasModel& g = {});
Vec4 conserved_vector(const ConservativeState& c);

// Sound speed sqrt((1 + 1/c_v) p / rho); equals sqrt(2 p / rho) for c_v = 1.
double sound_speed(const PrimitiveState& s, const GasModel& g = {});

} // namespace mvsol
