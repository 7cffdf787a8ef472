#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mvsol/mvs.hpp"
#include "mvsol/wild.hpp"

#include <cmath>

using namespace mvsol;

namespace {
const RiemannData kBase{1.0, 1.0, 2.0};
}

TEST_CASE("perturbation states: closed-form anchors") {
    // (rho_K, p_+, delta_p) = (1.4, 2, 0.1):
    // p_delta = 2.1, delta_v = 0.1 sqrt(2/(1.4*8.3)), rho_delta = 11.62/8.1.
    const PerturbationStates ps = perturbation_states(1.4, 2.0, 0.1);
    CHECK(ps.p_delta == doctest::Approx(2.1).epsilon(1e-15));
    CHECK(ps.delta_v == doctest::Approx(0.041486990682251118).epsilon(1e-13));
    CHECK(ps.rho_delta == doctest::Approx(1.4345679012345678).epsilon(1e-13));
}

TEST_CASE("perturbation states vanish smoothly at delta_p = 0") {
    const PerturbationStates ps0 = perturbation_states(1.4, 2.0, 0.0);
    CHECK(ps0.p_delta == doctest::Approx(2.0));
    CHECK(ps0.delta_v == doctest::Approx(0.0));
    CHECK(ps0.rho_delta == doctest::Approx(1.4).epsilon(1e-15));
    // Smoothness near 0: the one-sided difference quotient of delta_v
    // converges to the analytic slope sqrt(2/(4 rho_K p_+)).
    const double slope = std::sqrt(2.0 / (1.4 * 8.0));
    const double h1 = perturbation_states(1.4, 2.0, 1e-4).delta_v / 1e-4;
    const double h2 = perturbation_states(1.4, 2.0, 1e-6).delta_v / 1e-6;
    CHECK(std::abs(h1 - slope) < 1e-4);
    CHECK(std::abs(h2 - slope) < 1e-6);
}

TEST_CASE("speed-squared and pressure limits at (1, 1, 2)") {
    CHECK(omega2_speed_squared_limit(kBase) == doctest::Approx(36.0 / 35.0).epsilon(1e-15));
    const P2Limit p2 = p2_limit(kBase);
    CHECK(p2.p2 == doctest::Approx(1.96).epsilon(1e-15));
    CHECK(p2.gap == doctest::Approx(0.04).epsilon(1e-12));
}

TEST_CASE("speed-squared limit formula on another datum") {
    // 4 (p+ - p-)(p+ + p-)^2 / (rho_- (3p+ + p-)(3p- + p+)).
    const RiemannData d{2.0, 1.0, 4.0};
    const double expect = 4.0 * 3.0 * 25.0 / (2.0 * 13.0 * 7.0);
    CHECK(omega2_speed_squared_limit(d) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("rank condition at the limit point of (1, 1, 2)") {
    const ShockConstants k = shock_constants(kBase);
    const double L = omega2_speed_squared_limit(kBase);
    const RankConditionVerdict v = rank_condition(kBase, k.rho_K, 1.96, L);
    CHECK(v.determinant == doctest::Approx(0.08064).epsilon(1e-12));
    CHECK(v.condition2_gap == doctest::Approx(36.0 / 35.0).epsilon(1e-12));
    CHECK(v.condition2_rhs == doctest::Approx(0.0));
    CHECK(v.p_gap == doctest::Approx(0.04).epsilon(1e-12));
    CHECK(v.rank3);
    REQUIRE(v.cross_determinant.has_value());
    REQUIRE(v.cross_rank.has_value());
    CHECK(*v.cross_rank == 3);
    CHECK(*v.cross_determinant ==
          doctest::Approx(v.determinant).epsilon(1e-12));
}

TEST_CASE("rank condition fails when the gaps close") {
    const ShockConstants k = shock_constants(kBase);
    // speed2 equal to the condition-2 right-hand side collapses the rank
    // (pick p2 > p_plus so the right-hand side is a valid speed squared).
    const double rho2 = k.rho_K + 0.05;
    const double p2 = 2.5;
    const double rhs = (rho2 - k.rho_K) * (p2 - 2.0) / (rho2 * k.rho_K);
    REQUIRE(rhs > 0.0);
    const RankConditionVerdict bad = rank_condition(kBase, rho2, p2, rhs, 1e-9, false);
    CHECK_FALSE(bad.rank3);
    // p2 equal to p_plus also collapses it.
    const RankConditionVerdict bad2 =
        rank_condition(kBase, k.rho_K, 2.0, omega2_speed_squared_limit(kBase), 1e-9, false);
    CHECK_FALSE(bad2.rank3);
}

TEST_CASE("persistence margins are positive and actually persist") {
    const PersistenceMargins m = margins_bisection(kBase);
    CHECK(m.delta_star > 0.0);
    CHECK(m.eta_star > 0.0);
    const ShockConstants k = shock_constants(kBase);
    const double L = omega2_speed_squared_limit(kBase);
    // Sample the certified box: rho2 within eta_star of rho_K (p2 on the
    // isentrope through the left state) and the speed within delta_v(delta)
    // of sqrt(L). The rank-3 verdict must hold at every sample.
    for (double dp : {m.delta_star, 0.5 * m.delta_star}) {
        const double dv = perturbation_states(k.rho_K, kBase.p_plus, dp).delta_v;
        for (double eta : {m.eta_star, -m.eta_star, 0.0})
            for (double shift : {-dv, 0.0, dv}) {
                const double rho2 = k.rho_K + eta;
                const double ratio = rho2 / kBase.rho_minus;
                const double p2 = kBase.p_minus * ratio * ratio;
                const double speed = std::sqrt(L) + shift;
                const RankConditionVerdict v =
                    rank_condition(kBase, rho2, p2, speed * speed, 1e-9, false);
                CHECK(v.rank3);
            }
    }
}

TEST_CASE("default parameters and fan assembly at (1, 1, 2)") {
    const WildParameters w = default_wild_parameters(kBase, 0.1);
    const ShockConstants k = shock_constants(kBase);
    const PerturbationStates ps = perturbation_states(k.rho_K, 2.0, 0.1);
    CHECK(w.rho1 == doctest::Approx(k.rho_K));
    CHECK(w.rho2 == doctest::Approx(k.rho_K));
    CHECK(w.slopes[0] == doctest::Approx(k.shock_speed).epsilon(1e-14));
    CHECK(w.slopes[1] == doctest::Approx(0.5 * k.shock_speed).epsilon(1e-14));
    CHECK(w.slopes[2] == doctest::Approx(ps.delta_v).epsilon(1e-13));
    for (int i = 0; i + 1 < 4; ++i) CHECK(w.slopes[i] < w.slopes[i + 1]);

    const WildFans fans = assemble_fans(kBase, w);
    REQUIRE(fans.fan_beta_skeleton.regions.size() == 5);
    const auto& regs = fans.fan_beta_skeleton.regions;
    CHECK(regs[0].name == "Omega_minus");
    CHECK(regs[1].name == "Omega_1");
    CHECK(regs[2].name == "Omega_2");
    CHECK(regs[3].name == "Omega_delta");
    CHECK(regs[4].name == "Omega_plus");
    CHECK(regs[0].status == RegionStatus::Resolved);
    CHECK(regs[1].status == RegionStatus::Unresolved);
    CHECK(regs[2].status == RegionStatus::MacroscopicApprox);
    CHECK(regs[3].status == RegionStatus::Resolved);
    CHECK(regs[4].status == RegionStatus::Resolved);
    for (std::size_t i = 0; i + 1 < regs.size(); ++i)
        CHECK(regs[i].sigma_right == doctest::Approx(regs[i + 1].sigma_left));
    CHECK(fans.fan_beta_skeleton.sigma3 > ps.delta_v);
    CHECK(fans.overlap.sigma_left == doctest::Approx(0.5 * k.shock_speed));
    CHECK(fans.overlap.sigma_right == doctest::Approx(ps.delta_v).epsilon(1e-13));
}

TEST_CASE("both fans share the initial data") {
    const WildParameters w = default_wild_parameters(kBase, 0.05);
    const WildFans fans = assemble_fans(kBase, w);
    const PrimitiveState& a_left = fans.fan_alpha.wedges.front().state;
    const PrimitiveState& b_left = fans.fan_beta_skeleton.regions.front().state;
    CHECK(b_left.rho == doctest::Approx(a_left.rho).epsilon(1e-14));
    CHECK(b_left.v == doctest::Approx(a_left.v).epsilon(1e-13));
    CHECK(b_left.u == doctest::Approx(a_left.u));
    CHECK(b_left.p == doctest::Approx(a_left.p).epsilon(1e-14));
    const PrimitiveState& a_right = fans.fan_alpha.wedges.back().state;
    const PrimitiveState& b_right = fans.fan_beta_skeleton.regions.back().state;
    CHECK(b_right.rho == doctest::Approx(a_right.rho).epsilon(1e-14));
    CHECK(b_right.v == doctest::Approx(a_right.v).epsilon(1e-13));
    CHECK(b_right.p == doctest::Approx(a_right.p).epsilon(1e-14));
}

TEST_CASE("the 3-shock interface of fan beta satisfies RH exactly") {
    const WildParameters w = default_wild_parameters(kBase, 0.07);
    const WildFans fans = assemble_fans(kBase, w);
    const BetaSkeleton& sk = fans.fan_beta_skeleton;
    FanSolution three;
    Wedge lo;
    lo.sigma_right = sk.sigma3;
    lo.state = sk.regions[3].state; // Omega_delta
    Wedge hi;
    hi.sigma_left = sk.sigma3;
    hi.state = sk.regions[4].state; // Omega_plus
    three.wedges = {lo, hi};
    three.label = "beta-3-shock";
    for (const InterfaceJumpReport& r : rh_residual(three))
        for (int c = 0; c < 4; ++c) CHECK(std::abs(r.residual[c]) <= 1e-11);
}

TEST_CASE("final measure structure and validation") {
    const WildParameters w = default_wild_parameters(kBase, 0.1);
    const WildFans fans = assemble_fans(kBase, w);
    const AtomicYoungMeasure nu = build_final_measure(fans.fan_alpha, fans.fan_beta_skeleton);
    CHECK_NOTHROW(validate(nu));
    REQUIRE(nu.regions.size() == 5);
    // Far field: single merged Dirac on both ends.
    CHECK(nu.regions.front().atoms.size() == 1);
    CHECK(nu.regions.front().atoms[0].weight == doctest::Approx(1.0));
    CHECK(nu.regions.back().atoms.size() == 1);
    CHECK(nu.regions.back().atoms[0].weight == doctest::Approx(1.0));
    // (s, s/2): fan beta is unresolved there.
    CHECK(nu.regions[1].status == RegionStatus::Unresolved);
    CHECK(nu.regions[1].atoms.empty());
    // Overlap (s/2, delta_v): two half atoms, flagged macroscopic.
    CHECK(nu.regions[2].status == RegionStatus::MacroscopicApprox);
    REQUIRE(nu.regions[2].atoms.size() == 2);
    CHECK(nu.regions[2].atoms[0].weight == doctest::Approx(0.5));
    CHECK(nu.regions[2].atoms[1].weight == doctest::Approx(0.5));
    // (delta_v, sigma3): both fans resolved but different -> two atoms.
    CHECK(nu.regions[3].status == RegionStatus::Resolved);
    REQUIRE(nu.regions[3].atoms.size() == 2);
    for (const MeasureRegion& r : nu.regions) {
        double total = 0.0;
        for (const Atom& a : r.atoms) total += a.weight;
        if (!r.atoms.empty()) CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("overlap atoms match the overlap wedge states") {
    const WildParameters w = default_wild_parameters(kBase, 0.1);
    const WildFans fans = assemble_fans(kBase, w);
    const AtomicYoungMeasure nu = build_final_measure(fans.fan_alpha, fans.fan_beta_skeleton);
    const MeasureRegion& ov = nu.regions[2];
    for (int c = 0; c < 8; ++c) {
        CHECK(ov.atoms[0].state.z[c] ==
              doctest::Approx(fans.overlap.z_alpha.z[c]).epsilon(1e-12));
        CHECK(ov.atoms[1].state.z[c] ==
              doctest::Approx(fans.overlap.z_beta.z[c]).epsilon(1e-12));
    }
}

TEST_CASE("entropy margin on the overlap wedge") {
    const WildParameters w = default_wild_parameters(kBase, 0.1);
    const WildFans fans = assemble_fans(kBase, w);
    const double margin = overlap_entropy_margin(fans);
    CHECK(margin > 0.0);
    // Both overlap densities equal rho_K, so the entropy difference reduces to
    // log(p_+ / p_2) = log(2 / 1.96).
    CHECK(margin == doctest::Approx(std::log(2.0 / 1.96)).epsilon(1e-12));
}

TEST_CASE("measure from fan and constant measures") {
    const FanSolution f = self_similar_shock(kBase);
    const AtomicYoungMeasure dirac = measure_from_fan(f);
    CHECK_NOTHROW(validate(dirac));
    REQUIRE(dirac.regions.size() == 2);
    for (const MeasureRegion& r : dirac.regions) {
        REQUIRE(r.atoms.size() == 1);
        CHECK(r.atoms[0].weight == doctest::Approx(1.0));
        CHECK(r.status == RegionStatus::Resolved);
    }
    const ExtendedState z1 = lift_extended(ConservativeState{1.0, 1.0, 0.0, 1.5});
    const ExtendedState z2 = lift_extended(ConservativeState{2.0, 1.0, 0.0, 0.75});
    const AtomicYoungMeasure cm = constant_measure({{0.5, z1}, {0.5, z2}});
    CHECK_NOTHROW(validate(cm));
    REQUIRE(cm.regions.size() == 1);
    CHECK(std::isinf(cm.regions[0].sigma_left));
    CHECK(std::isinf(cm.regions[0].sigma_right));
}

TEST_CASE("measure validation rejects broken weights") {
    const ExtendedState z = lift_extended(ConservativeState{1.0, 0.0, 0.0, 1.0});
    AtomicYoungMeasure nu = constant_measure({{0.5, z}, {0.5, z}});
    nu.regions[0].atoms[0].weight = 0.75; // weights no longer sum to 1
    CHECK_THROWS_AS(validate(nu), Error);
    AtomicYoungMeasure neg = constant_measure({{1.0, z}});
    neg.regions[0].atoms[0].weight = -1.0;
    CHECK_THROWS_AS(validate(neg), Error);
}

TEST_CASE("invalid wild parameters are rejected") {
    WildParameters w = default_wild_parameters(kBase, 0.1);
    w.slopes[2] = w.slopes[1] - 1.0; // breaks monotonicity
    CHECK_THROWS_AS(assemble_fans(kBase, w), Error);
    CHECK_THROWS_AS(default_wild_parameters(kBase, -0.5), Error);
}
