#include "mvsol/wild.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace mvsol {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool same_primitive(const PrimitiveState& a, const PrimitiveState& b, double tol) {
    auto close = [tol](double x, double y) {
        return std::abs(x - y) <= tol * (1.0 + std::max(std::abs(x), std::abs(y)));
    };
    return close(a.rho, b.rho) && close(a.v, b.v) && close(a.u, b.u) && close(a.p, b.p);
}

} // namespace

PerturbationStates perturbation_states(double rho_K, double p_plus, double delta_p) {
    if (!(rho_K > 0.0) || !(p_plus > 0.0) || !(delta_p >= 0.0)) {
        throw InvalidData("perturbation_states: need rho_K > 0, p_plus > 0, delta_p >= 0");
    }
    PerturbationStates out;
    out.p_delta = p_plus + delta_p;
    out.delta_v = delta_p * std::sqrt(2.0 / (rho_K * (4.0 * p_plus + 3.0 * delta_p)));
    out.rho_delta = rho_K * (3.0 * out.p_delta + p_plus) / (3.0 * p_plus + out.p_delta);
    return out;
}

double omega2_speed_squared_limit(const RiemannData& d) {
    validate(d);
    const double sum = d.p_plus + d.p_minus;
    return 4.0 * (d.p_plus - d.p_minus) * sum * sum
        / (d.rho_minus * (3.0 * d.p_plus + d.p_minus) * (3.0 * d.p_minus + d.p_plus));
}

P2Limit p2_limit(const RiemannData& d) {
    const ShockConstants k = shock_constants(d);
    P2Limit out;
    const double ratio = k.rho_K / d.rho_minus;
    out.p2 = d.p_minus * ratio * ratio;
    out.gap = std::abs(out.p2 - d.p_plus);
    return out;
}

RankConditionVerdict rank_condition(const RiemannData& d, double rho2, double p2,
                                    double speed2, double tol,
                                    bool with_cross_validation) {
    if (!(rho2 > 0.0) || !(p2 > 0.0) || !(speed2 >= 0.0)) {
        throw InvalidData("rank_condition: need rho2 > 0, p2 > 0, speed2 >= 0");
    }
    const ShockConstants k = shock_constants(d);
    RankConditionVerdict v;
    v.tol = tol;
    const double dp = p2 - d.p_plus;
    v.determinant = dp * ((rho2 - k.rho_K) * dp - rho2 * k.rho_K * speed2);
    v.condition2_rhs = (rho2 - k.rho_K) * dp / (rho2 * k.rho_K);
    v.condition2_gap = std::abs(speed2 - v.condition2_rhs);
    v.p_gap = std::abs(dp);
    v.rank3 = v.condition2_gap > tol && v.p_gap > tol;

    if (with_cross_validation) {
        const double angle = 0.0;
        const double speed = std::sqrt(speed2);
        const PrimitiveState alpha{k.rho_K, 0.0, 0.0, d.p_plus};
        const PrimitiveState beta{rho2, speed * std::cos(angle), speed * std::sin(angle), p2};
        const ExtendedState za = lift_extended(primitive_to_conservative(alpha));
        const ExtendedState zb = lift_extended(primitive_to_conservative(beta));
        const SymbolMatrix Z = difference_symbol_euler(zb, za);
        v.cross_determinant = submatrix_determinant(Z, {0, 1, 2});
        v.cross_rank = cone_membership(Z).rank;
    }
    return v;
}

namespace {

// Rank-3 persistence over the whole perturbation box (0, delta] x [-eta, eta]:
// the reachable speed-squared interval is [(sqrt(L)-dv)^2, (sqrt(L)+dv)^2]
// with dv = delta_v(delta), the condition-2 right-hand side and the p-gap are
// sampled over rho2 in the eta-interval. Both margins are monotone in
// (delta, eta), which makes bisection valid.
bool box_verdict(const RiemannData& d, const ShockConstants& k, double L,
                 double delta, double eta, double tol) {
    const PerturbationStates pert = perturbation_states(k.rho_K, d.p_plus, delta);
    const double root = std::sqrt(L);
    const double lo = std::max(0.0, root - pert.delta_v);
    const double speed2_lo = lo * lo;
    const double speed2_hi = (root + pert.delta_v) * (root + pert.delta_v);

    double rhs_lo = kInf, rhs_hi = -kInf, p_gap_min = kInf;
    for (int i = -2; i <= 2; ++i) {
        const double rho2 = k.rho_K + eta * (0.5 * i);
        if (!(rho2 > 0.0)) {
            return false;
        }
        const double ratio = rho2 / d.rho_minus;
        const double p2 = d.p_minus * ratio * ratio;
        const double dp = p2 - d.p_plus;
        const double rhs = (rho2 - k.rho_K) * dp / (rho2 * k.rho_K);
        rhs_lo = std::min(rhs_lo, rhs);
        rhs_hi = std::max(rhs_hi, rhs);
        p_gap_min = std::min(p_gap_min, std::abs(dp));
    }
    const double gap2 = std::max(0.0, std::max(rhs_lo - speed2_hi, speed2_lo - rhs_hi));
    return gap2 > tol && p_gap_min > tol;
}

double bisect_largest(double cap, const std::function<bool(double)>& holds) {
    if (!holds(cap * 1e-9)) {
        return 0.0;
    }
    if (holds(cap)) {
        return cap;
    }
    double lo = cap * 1e-9, hi = cap;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (holds(mid) ? lo : hi) = mid;
    }
    return lo;
}

} // namespace

PersistenceMargins margins_bisection(const RiemannData& d, double tol) {
    const ShockConstants k = shock_constants(d);
    const double L = omega2_speed_squared_limit(d);
    PersistenceMargins out;
    out.tol = tol;

    const double delta_cap = d.p_plus - d.p_minus;
    out.delta_star = bisect_largest(delta_cap, [&](double delta) {
        return box_verdict(d, k, L, delta, 0.0, tol);
    });
    const double eta_cap = 0.5 * k.rho_K;
    out.eta_star = bisect_largest(eta_cap, [&](double eta) {
        return box_verdict(d, k, L, std::max(out.delta_star, delta_cap * 1e-9), eta, tol);
    });
    return out;
}

WildParameters default_wild_parameters(const RiemannData& d, double delta_p) {
    validate(d);
    if (!(delta_p >= 0.0)) {
        throw InvalidData("default_wild_parameters: delta_p must be >= 0");
    }
    const ShockConstants k = shock_constants(d);
    const PerturbationStates pert = perturbation_states(k.rho_K, d.p_plus, delta_p);
    const double sigma3 = (pert.p_delta + 3.0 * d.p_plus)
        / std::sqrt(2.0 * k.rho_K * (d.p_plus + 3.0 * pert.p_delta)) + pert.delta_v;
    WildParameters w;
    w.base = d;
    w.delta_p = delta_p;
    w.rho1 = k.rho_K;
    w.rho2 = k.rho_K;
    w.slopes = {k.shock_speed, 0.5 * k.shock_speed, pert.delta_v, sigma3};
    return w;
}

WildFans assemble_fans(const RiemannData& d, const WildParameters& w) {
    validate(d);
    if (!(w.delta_p >= 0.0) || !(w.rho1 > 0.0) || !(w.rho2 > 0.0)) {
        throw InvalidData("assemble_fans: delta_p >= 0 and rho1, rho2 > 0 required");
    }
    for (int i = 0; i + 1 < 4; ++i) {
        if (!(w.slopes[i] < w.slopes[i + 1])) {
            throw InvalidData("assemble_fans: fan slopes must be strictly increasing");
        }
    }
    const ShockConstants k = shock_constants(d);
    const PerturbationStates pert = perturbation_states(k.rho_K, d.p_plus, w.delta_p);
    const double sigma3 = (pert.p_delta + 3.0 * d.p_plus)
        / std::sqrt(2.0 * k.rho_K * (d.p_plus + 3.0 * pert.p_delta)) + pert.delta_v;
    auto rel_close = [](double a, double b) {
        return std::abs(a - b) <= 1e-9 * (1.0 + std::max(std::abs(a), std::abs(b)));
    };
    if (!rel_close(w.slopes[2], pert.delta_v)) {
        throw InvalidData("assemble_fans: the Omega_2/Omega_delta interface must be x1 = delta_v t");
    }
    if (!rel_close(w.slopes[3], sigma3)) {
        throw InvalidData("assemble_fans: the Omega_delta/Omega_+ interface must be the 3-shock");
    }

    WildFans out;
    out.fan_alpha = self_similar_shock(d);

    const P2Limit p2 = p2_limit(d);
    const double speed2 = omega2_speed_squared_limit(d);
    const double speed = std::sqrt(speed2);
    const PrimitiveState omega_minus{d.rho_minus, k.v_K, 0.0, d.p_minus};
    const PrimitiveState omega2{w.rho2, speed * std::cos(w.direction_angle),
                                speed * std::sin(w.direction_angle), p2.p2};
    const PrimitiveState omega_delta{pert.rho_delta, pert.delta_v, 0.0, pert.p_delta};
    const PrimitiveState omega_plus{k.rho_K, 0.0, 0.0, d.p_plus};

    BetaSkeleton beta;
    beta.pert = pert;
    beta.sigma3 = sigma3;
    beta.states.omega_minus = PrimitiveState{d.rho_minus, k.v_K - pert.delta_v, 0.0, d.p_minus};
    beta.states.omega_delta = PrimitiveState{pert.rho_delta, 0.0, 0.0, pert.p_delta};
    beta.states.omega_plus = PrimitiveState{k.rho_K, -pert.delta_v, 0.0, d.p_plus};
    beta.states.omega1_rho = w.rho1;
    beta.states.omega2_rho = omega2.rho;
    beta.states.omega2_p = p2.p2;
    beta.states.omega2_speed2 = speed2;

    beta.regions.push_back({"Omega_minus", -kInf, w.slopes[0], RegionStatus::Resolved,
                            omega_minus, 0.0});
    beta.regions.push_back({"Omega_1", w.slopes[0], w.slopes[1], RegionStatus::Unresolved,
                            PrimitiveState{}, w.rho1});
    beta.regions.push_back({"Omega_2", w.slopes[1], w.slopes[2],
                            RegionStatus::MacroscopicApprox, omega2, 0.0});
    beta.regions.push_back({"Omega_delta", w.slopes[2], w.slopes[3], RegionStatus::Resolved,
                            omega_delta, 0.0});
    beta.regions.push_back({"Omega_plus", w.slopes[3], kInf, RegionStatus::Resolved,
                            omega_plus, 0.0});
    out.fan_beta_skeleton = beta;

    const double lo = std::max(k.shock_speed, w.slopes[1]);
    const double hi = pert.delta_v;
    if (!(lo < hi)) {
        throw EmptyOverlap("assemble_fans: Omega_2 does not meet {x1 > s t}");
    }
    out.overlap.sigma_left = lo;
    out.overlap.sigma_right = hi;
    out.overlap.z_alpha = lift_extended(primitive_to_conservative(omega_plus));
    out.overlap.z_beta = lift_extended(primitive_to_conservative(omega2));
    return out;
}

void validate(const AtomicYoungMeasure& nu) {
    if (nu.regions.empty()) {
        throw InvalidData("AtomicYoungMeasure: needs at least one region");
    }
    if (nu.regions.front().sigma_left != -kInf || nu.regions.back().sigma_right != kInf) {
        throw InvalidData("AtomicYoungMeasure: regions must cover (-inf, inf)");
    }
    for (size_t i = 0; i < nu.regions.size(); ++i) {
        const MeasureRegion& r = nu.regions[i];
        if (!(r.sigma_left < r.sigma_right)) {
            throw InvalidData("AtomicYoungMeasure: region slopes must be increasing");
        }
        if (i + 1 < nu.regions.size() && nu.regions[i + 1].sigma_left != r.sigma_right) {
            throw InvalidData("AtomicYoungMeasure: regions must be contiguous");
        }
        if (r.status == RegionStatus::Unresolved) {
            continue;
        }
        if (r.atoms.empty()) {
            throw InvalidData("AtomicYoungMeasure: resolved region without atoms");
        }
        double total = 0.0;
        for (const Atom& a : r.atoms) {
            if (!(a.weight > 0.0)) {
                throw InvalidData("AtomicYoungMeasure: atom weights must be positive");
            }
            if (!a.state.constrained) {
                throw InvalidData("AtomicYoungMeasure: atoms must be constrained lifts");
            }
            total += a.weight;
        }
        if (std::abs(total - 1.0) > 1e-12) {
            throw InvalidData("AtomicYoungMeasure: atom weights must sum to 1");
        }
    }
}

AtomicYoungMeasure build_final_measure(const FanSolution& fan_alpha,
                                       const BetaSkeleton& fan_beta_skeleton) {
    validate(fan_alpha);
    if (fan_beta_skeleton.regions.empty()) {
        throw InvalidData("build_final_measure: empty skeleton");
    }

    // The two constructions must emanate from the same Riemann initial data:
    // the t -> 0+ trace is the leftmost state for x1 < 0 and the rightmost
    // state for x1 > 0.
    const PrimitiveState& alpha_left = fan_alpha.wedges.front().state;
    const PrimitiveState& alpha_right = fan_alpha.wedges.back().state;
    const BetaRegion& beta_left = fan_beta_skeleton.regions.front();
    const BetaRegion& beta_right = fan_beta_skeleton.regions.back();
    if (beta_left.status != RegionStatus::Resolved ||
        beta_right.status != RegionStatus::Resolved ||
        !same_primitive(alpha_left, beta_left.state, 1e-12) ||
        !same_primitive(alpha_right, beta_right.state, 1e-12)) {
        throw InitialDataMismatch("build_final_measure: fans have different initial traces");
    }

    std::vector<double> cuts;
    for (size_t i = 0; i + 1 < fan_alpha.wedges.size(); ++i) {
        cuts.push_back(fan_alpha.wedges[i].sigma_right);
    }
    for (size_t i = 0; i + 1 < fan_beta_skeleton.regions.size(); ++i) {
        cuts.push_back(fan_beta_skeleton.regions[i].sigma_right);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto beta_region_at = [&](double slope) -> const BetaRegion& {
        for (const BetaRegion& r : fan_beta_skeleton.regions) {
            if (slope <= r.sigma_right) {
                return r;
            }
        }
        return fan_beta_skeleton.regions.back();
    };

    AtomicYoungMeasure nu;
    nu.label = "half-alpha-half-beta";
    for (size_t i = 0; i <= cuts.size(); ++i) {
        const double lo = i == 0 ? -kInf : cuts[i - 1];
        const double hi = i == cuts.size() ? kInf : cuts[i];
        const double probe = std::isinf(lo) ? (std::isinf(hi) ? 0.0 : hi - 1.0)
                           : (std::isinf(hi) ? lo + 1.0 : 0.5 * (lo + hi));
        MeasureRegion region;
        region.sigma_left = lo;
        region.sigma_right = hi;

        const PrimitiveState& a = state_at_slope(fan_alpha, probe);
        const BetaRegion& b = beta_region_at(probe);
        if (b.status == RegionStatus::Unresolved) {
            region.status = RegionStatus::Unresolved;
            region.note = "beta state unresolved (" + b.name + ")";
        } else {
            region.status = b.status;
            if (b.status == RegionStatus::MacroscopicApprox) {
                region.note = "beta macroscopic approximation (" + b.name + ")";
            }
            const ExtendedState za = lift_extended(primitive_to_conservative(a));
            if (same_primitive(a, b.state, 1e-12)) {
                region.atoms = {{1.0, za}};
            } else {
                const ExtendedState zb = lift_extended(primitive_to_conservative(b.state));
                region.atoms = {{0.5, za}, {0.5, zb}};
            }
        }
        nu.regions.push_back(std::move(region));
    }
    validate(nu);
    return nu;
}

AtomicYoungMeasure measure_from_fan(const FanSolution& f, const GasModel& g) {
    validate(f);
    AtomicYoungMeasure nu;
    nu.label = f.label.empty() ? "dirac-fan" : "dirac:" + f.label;
    for (const Wedge& w : f.wedges) {
        MeasureRegion region;
        region.sigma_left = w.sigma_left;
        region.sigma_right = w.sigma_right;
        region.atoms = {{1.0, lift_extended(primitive_to_conservative(w.state, g))}};
        nu.regions.push_back(std::move(region));
    }
    validate(nu);
    return nu;
}

AtomicYoungMeasure constant_measure(const std::vector<Atom>& atoms, const std::string& label) {
    AtomicYoungMeasure nu;
    nu.label = label;
    MeasureRegion region;
    region.sigma_left = -kInf;
    region.sigma_right = kInf;
    region.atoms = atoms;
    nu.regions.push_back(std::move(region));
    validate(nu);
    return nu;
}

double overlap_entropy_margin(const WildFans& fans, const GasModel& g) {
    const PrimitiveState alpha =
        conservative_to_primitive(ConservativeState{fans.overlap.z_alpha.rho(),
                                                    fans.overlap.z_alpha.m1(),
                                                    fans.overlap.z_alpha.m2(),
                                                    fans.overlap.z_alpha.E()},
                                  g);
    const PrimitiveState beta =
        conservative_to_primitive(ConservativeState{fans.overlap.z_beta.rho(),
                                                    fans.overlap.z_beta.m1(),
                                                    fans.overlap.z_beta.m2(),
                                                    fans.overlap.z_beta.E()},
                                  g);
    return std::abs(entropy(alpha, g) - entropy(beta, g));
}

} // namespace mvsol
