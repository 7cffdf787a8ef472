#pragma once

#include "mvsol/fan.hpp"

#include <string>
#include <vector>

namespace mvsol {

// Riemann data of the one-shock family: left density and the two pressures.
// The left velocity and the full right state are derived (shock_constants).
struct RiemannData {
    double rho_minus = 1.0;
    double p_minus = 1.0;
    double p_plus = 2.0;
};

void validate(const RiemannData& d);

struct ShockConstants {
    double rho_K = 0.0;
    double v_K = 0.0;
    double shock_speed = 0.0;
};

// Rankine-Hugoniot defect of one interface: residual = sigma*[q] - [F1(q)]
// with [a] = a_right - a_left; normalized divides by (1 + flux magnitude).
struct InterfaceJumpReport {
    double sigma = 0.0;
    Vec4 residual{};
    Vec4 normalized{};
};

enum class LaxVerdict { Admissible1Shock, NotA1Shock, ContactDegenerate };

struct LaxReport {
    double sigma = 0.0;
    double v_left = 0.0;
    double c_left = 0.0;
    double v_right = 0.0;
    double c_right = 0.0;
    LaxVerdict verdict = LaxVerdict::ContactDegenerate;
};

// Closed forms: rho_K = rho_-(p_- + 3 p_+)/(3 p_- + p_+),
// v_K = sqrt(2/rho_-) (p_+ - p_-)/sqrt(p_- + 3 p_+),
// shock_speed = -(p_+ + 3 p_-)/sqrt(2 rho_-(p_- + 3 p_+)).
ShockConstants shock_constants(const RiemannData& d);

// Two wedges: (-inf, s) carries (rho_-, (v_K, 0), p_-);
// (s, inf) carries (rho_K, (0, 0), p_+).
FanSolution self_similar_shock(const RiemannData& d);

std::vector<InterfaceJumpReport> rh_residual(const FanSolution& f, const GasModel& g = {});

// One-shock Lax inequalities v_L - c_L > sigma > v_R - c_R with
// c = sqrt((1 + 1/c_v) p / rho). Zero-jump interfaces are reported as
// contact/degenerate and skipped.
std::vector<LaxReport> lax_admissibility(const FanSolution& f, const GasModel& g = {});

} // namespace mvsol
