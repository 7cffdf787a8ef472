#pragma once

#include "mvsol/quadrature.hpp"
#include "mvsol/wild.hpp"

#include <string>
#include <vector>

namespace mvsol {

// Smooth radial bump test function in (t, x1, x2), compactly supported in
// [0, T) x R^2: the support may dip below t = 0 (activating the initial-data
// term) but must not reach t = T. The momentum identity is evaluated against
// the vector test functions (w1, w2) phi and (-w2, w1) phi.
struct TestFunction {
    double center_t = 0.5;
    double center_x1 = 0.0;
    double center_x2 = 0.0;
    double radius = 0.25;
    Vec2 momentum_weight{1.0, 0.0};
};

void validate(const TestFunction& phi, double T);

struct QuadraturePolicy {
    int cells_per_axis = 8;
    int order = 8;
    double T = 1.0; // time horizon; fans are truncated to [0, T]
};

// Region-wise moments of an atomic measure: barycenters q = (<rho>, <m1>,
// <m2>, <E>), the momentum flux moment T_ij = <m_i m_j / rho + delta_ij
// (E - |m|^2/(2 rho))>, and the energy flux moment r_i = <(2E - |m|^2 /
// (2 rho)) m_i / rho>. For a single atom these are the fluxes of the
// conservative system at the atom.
struct RegionMoments {
    double sigma_left = 0.0;
    double sigma_right = 0.0;
    Vec4 q{};
    double T11 = 0.0, T12 = 0.0, T22 = 0.0;
    Vec2 r{};
    RegionStatus status = RegionStatus::Resolved;
};

struct MomentFields {
    std::vector<RegionMoments> regions;
};

MomentFields moments(const AtomicYoungMeasure& nu);

struct EquationResidual {
    double value = 0.0;      // raw weak-form integral
    double normalized = 0.0; // value / int |grad phi|
    double estimate = 0.0;   // refinement-step error estimate (raw scale)
};

struct WeakResidualReport {
    EquationResidual mass, momentum1, momentum2, energy;
    double norm_grad = 0.0; // int_{R^3} |grad phi|
    double worst_normalized = 0.0;
    bool touches_unresolved = false;
    bool touches_macroscopic = false;
};

WeakResidualReport weak_residual_quadrature(const AtomicYoungMeasure& nu,
                                            const TestFunction& phi,
                                            const QuadraturePolicy& q = {});

enum class InterfaceClass { Verifiable, Approximate, Unverified };

struct InterfaceResidual {
    double sigma = 0.0;
    Vec4 jump{};       // sigma [<q>] - [<F1>]; zero-filled when Unverified
    Vec4 normalized{}; // jump / (1 + flux magnitude)
    InterfaceClass cls = InterfaceClass::Verifiable;
};

// Exact reduction: for piecewise-constant moments the weak-form residual
// against any phi is sum over interfaces of jump . (line integral of phi), so
// the Definition holds for all phi iff every verifiable jump vanishes.
std::vector<InterfaceResidual> interface_residual_exact(const AtomicYoungMeasure& nu);

// int_0^T psi(t, sigma t) dt where psi is the x2-marginal of phi.
double line_integral(const TestFunction& phi, double sigma, const QuadraturePolicy& q = {});

struct VerifyReport {
    bool passed = false;
    double tol = 0.0;
    double worst_quadrature = 0.0; // over checked (fully resolved) phi
    double worst_interface = 0.0;  // over verifiable interfaces
    int checked_phis = 0;
    int skipped_phis = 0; // support touches unresolved/macroscopic regions
    std::vector<WeakResidualReport> per_phi;
    std::vector<InterfaceResidual> interfaces;
    double worst_cross_discrepancy = 0.0; // quadrature vs exact reduction
};

VerifyReport verify(const AtomicYoungMeasure& nu, const std::vector<TestFunction>& dictionary,
                    double tol = 1e-8, const QuadraturePolicy& q = {});

// Bumps at 3 scales (R in {0.1, 0.3, 1.0} T) on a 5 x 5 grid of centers
// covering the measure's wave region, including bumps straddling t = 0.
std::vector<TestFunction> default_dictionary(const AtomicYoungMeasure& nu, double T = 1.0);

// lambda nu + (1 - lambda) mu over the refined region partition.
AtomicYoungMeasure lambda_combination(const AtomicYoungMeasure& nu,
                                      const AtomicYoungMeasure& mu, double lambda);

} // namespace mvsol
