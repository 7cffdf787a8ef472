#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mvsol/mvs.hpp"

#include <cmath>
#include <random>

using namespace mvsol;

namespace {

const RiemannData kBase{1.0, 1.0, 2.0};

TestFunction make_phi(double ct, double cx, double radius) {
    TestFunction phi;
    phi.center_t = ct;
    phi.center_x1 = cx;
    phi.radius = radius;
    return phi;
}

FanSolution random_fan(std::mt19937_64& rng, int wedges) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> cuts;
    for (int i = 0; i + 1 < wedges; ++i) cuts.push_back(-1.5 + 3.0 * u(rng));
    std::sort(cuts.begin(), cuts.end());
    FanSolution f;
    for (int i = 0; i < wedges; ++i) {
        Wedge w;
        if (i > 0) w.sigma_left = cuts[i - 1];
        if (i + 1 < wedges) w.sigma_right = cuts[i];
        w.state = PrimitiveState{0.4 + 2.0 * u(rng), -1.0 + 2.0 * u(rng),
                                 -1.0 + 2.0 * u(rng), 0.4 + 2.0 * u(rng)};
        f.wedges.push_back(w);
    }
    f.label = "random";
    return f;
}

} // namespace

TEST_CASE("moments of a Dirac measure are the conservative fluxes") {
    const FanSolution f = self_similar_shock(kBase);
    const AtomicYoungMeasure nu = measure_from_fan(f);
    const MomentFields mom = moments(nu);
    REQUIRE(mom.regions.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        const ConservativeState c = primitive_to_conservative(f.wedges[i].state);
        const PrimitiveState& s = f.wedges[i].state;
        const RegionMoments& m = mom.regions[i];
        CHECK(m.q[0] == doctest::Approx(c.rho).epsilon(1e-14));
        CHECK(m.q[1] == doctest::Approx(c.m1).epsilon(1e-14));
        CHECK(m.q[2] == doctest::Approx(c.m2).epsilon(1e-14));
        CHECK(m.q[3] == doctest::Approx(c.E).epsilon(1e-14));
        CHECK(m.T11 == doctest::Approx(c.m1 * c.m1 / c.rho + s.p).epsilon(1e-13));
        CHECK(m.T12 == doctest::Approx(c.m1 * c.m2 / c.rho).epsilon(1e-13));
        CHECK(m.T22 == doctest::Approx(c.m2 * c.m2 / c.rho + s.p).epsilon(1e-13));
        CHECK(m.r[0] == doctest::Approx((c.E + s.p) * c.m1 / c.rho).epsilon(1e-13));
        CHECK(m.r[1] == doctest::Approx((c.E + s.p) * c.m2 / c.rho).epsilon(1e-13));
    }
}

TEST_CASE("moments are convex combinations over atoms") {
    const ExtendedState z1 = lift_extended(ConservativeState{1.0, 0.4, -0.2, 1.5});
    const ExtendedState z2 = lift_extended(ConservativeState{2.5, -0.3, 0.8, 3.0});
    const AtomicYoungMeasure two = constant_measure({{0.25, z1}, {0.75, z2}});
    const AtomicYoungMeasure a = constant_measure({{1.0, z1}});
    const AtomicYoungMeasure b = constant_measure({{1.0, z2}});
    const RegionMoments& m = moments(two).regions[0];
    const RegionMoments& ma = moments(a).regions[0];
    const RegionMoments& mb = moments(b).regions[0];
    for (int c = 0; c < 4; ++c)
        CHECK(m.q[c] == doctest::Approx(0.25 * ma.q[c] + 0.75 * mb.q[c]).epsilon(1e-14));
    CHECK(m.T11 == doctest::Approx(0.25 * ma.T11 + 0.75 * mb.T11).epsilon(1e-14));
    CHECK(m.T22 == doctest::Approx(0.25 * ma.T22 + 0.75 * mb.T22).epsilon(1e-14));
    CHECK(m.r[0] == doctest::Approx(0.25 * ma.r[0] + 0.75 * mb.r[0]).epsilon(1e-14));
}

TEST_CASE("vacuum atoms are refused") {
    ExtendedState z = lift_extended(ConservativeState{1.0, 0.0, 0.0, 1.0});
    AtomicYoungMeasure nu = constant_measure({{1.0, z}});
    nu.regions[0].atoms[0].state.z[0] = 0.0;
    CHECK_THROWS_AS(moments(nu), VacuumAtom);
}

TEST_CASE("line integral against a direct quadrature") {
    const TestFunction phi = make_phi(0.5, 0.1, 0.3);
    for (double sigma : {-1.2, 0.0, 0.4, 2.0}) {
        double direct = 0.0;
        {
            const double R = phi.radius;
            const double lo = 0.0, hi = 1.0;
            direct = integrate_segment(
                [&](double t) {
                    const double dt = t - phi.center_t;
                    const double dx = sigma * t - phi.center_x1;
                    const double w = (dt * dt + dx * dx) / (R * R);
                    return R * bump_marginal(w);
                },
                lo, hi, 64, 12);
        }
        CHECK(line_integral(phi, sigma) == doctest::Approx(direct).epsilon(1e-10));
    }
    // A line that misses the support integrates to zero.
    CHECK(line_integral(make_phi(0.5, 3.0, 0.1), 0.0) == 0.0);
}

TEST_CASE("weak residual vanishes on the exact shock") {
    const AtomicYoungMeasure nu = measure_from_fan(self_similar_shock(kBase));
    const double s = shock_constants(kBase).shock_speed;
    for (const TestFunction& phi :
         {make_phi(0.5, 0.5 * s, 0.3), make_phi(0.25, s * 0.25, 0.2),
          make_phi(0.05, 0.0, 0.15)}) {
        const WeakResidualReport rep = weak_residual_quadrature(nu, phi);
        CHECK(rep.worst_normalized <= 1e-9);
        CHECK_FALSE(rep.touches_unresolved);
        CHECK_FALSE(rep.touches_macroscopic);
    }
}

TEST_CASE("a rotated momentum weight still vanishes on the shock") {
    const AtomicYoungMeasure nu = measure_from_fan(self_similar_shock(kBase));
    const double s = shock_constants(kBase).shock_speed;
    TestFunction phi = make_phi(0.4, 0.4 * s, 0.25);
    phi.momentum_weight = {0.6, -0.8};
    const WeakResidualReport rep = weak_residual_quadrature(nu, phi);
    CHECK(rep.worst_normalized <= 1e-9);
}

TEST_CASE("corrupted speed produces the predicted affine residual") {
    FanSolution f = self_similar_shock(kBase);
    const double eps = 0.04;
    f.wedges.front().sigma_right += eps;
    f.wedges.back().sigma_left += eps;
    const AtomicYoungMeasure nu = measure_from_fan(f);
    const double sigma = f.wedges.front().sigma_right;

    const ConservativeState ql = primitive_to_conservative(f.wedges.front().state);
    const ConservativeState qr = primitive_to_conservative(f.wedges.back().state);
    const Vec4 jump{qr.rho - ql.rho, qr.m1 - ql.m1, qr.m2 - ql.m2, qr.E - ql.E};

    const TestFunction phi = make_phi(0.45, 0.45 * sigma, 0.3);
    const double li = line_integral(phi, sigma);
    REQUIRE(li > 0.0);
    const WeakResidualReport rep = weak_residual_quadrature(nu, phi);
    CHECK(rep.mass.value == doctest::Approx(eps * jump[0] * li).epsilon(1e-6));
    CHECK(rep.momentum1.value == doctest::Approx(eps * jump[1] * li).epsilon(1e-6));
    CHECK(rep.energy.value == doctest::Approx(eps * jump[3] * li).epsilon(1e-6));
    // The x2-momentum jump vanishes for this pair, so the row stays at noise.
    CHECK(std::abs(rep.momentum2.value) <= 1e-9 * rep.norm_grad);
}

TEST_CASE("quadrature agrees with the exact interface reduction on random fans") {
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<int> nw(2, 4);
    for (int trial = 0; trial < 5; ++trial) {
        const FanSolution f = random_fan(rng, nw(rng));
        const AtomicYoungMeasure nu = measure_from_fan(f);
        const std::vector<InterfaceResidual> irs = interface_residual_exact(nu);
        const TestFunction phi = make_phi(0.45, 0.0, 0.35);
        const WeakResidualReport rep = weak_residual_quadrature(nu, phi);
        Vec4 predicted{};
        for (const InterfaceResidual& ir : irs) {
            const double li = line_integral(phi, ir.sigma);
            predicted[0] += ir.jump[0] * li;
            predicted[1] += ir.jump[1] * li;
            predicted[2] += ir.jump[2] * li;
            predicted[3] += ir.jump[3] * li;
        }
        const EquationResidual* rows[4] = {&rep.mass, &rep.momentum1, &rep.momentum2,
                                           &rep.energy};
        for (int j = 0; j < 4; ++j) {
            const double bound = std::max(rows[j]->estimate, 1e-12 * rep.norm_grad);
            CHECK(std::abs(rows[j]->value - predicted[j]) <= bound);
        }
    }
}

TEST_CASE("interface classes on the final wild measure") {
    const WildParameters w = default_wild_parameters(kBase, 0.1);
    const WildFans fans = assemble_fans(kBase, w);
    const AtomicYoungMeasure nu = build_final_measure(fans.fan_alpha, fans.fan_beta_skeleton);
    const std::vector<InterfaceResidual> irs = interface_residual_exact(nu);
    REQUIRE(irs.size() == 4);
    // s and s/2 touch the unresolved Omega_1; delta_v touches the macroscopic
    // Omega_2; the 3-shock interface joins two resolved regions.
    CHECK(irs[0].cls == InterfaceClass::Unverified);
    CHECK(irs[1].cls == InterfaceClass::Unverified);
    CHECK(irs[2].cls == InterfaceClass::Approximate);
    CHECK(irs[3].cls == InterfaceClass::Verifiable);
    for (int c = 0; c < 4; ++c) {
        CHECK(irs[0].jump[c] == 0.0); // zero-filled, not asserted as physical
        CHECK(std::abs(irs[3].jump[c]) <= 1e-11);
    }
    // The macroscopic stand-in genuinely violates RH at delta_v.
    double worst = 0.0;
    for (int c = 0; c < 4; ++c) worst = std::max(worst, std::abs(irs[2].jump[c]));
    CHECK(worst > 0.1);
}

TEST_CASE("test functions over partial regions are flagged and skipped") {
    const WildParameters w = default_wild_parameters(kBase, 0.1);
    const WildFans fans = assemble_fans(kBase, w);
    const AtomicYoungMeasure nu = build_final_measure(fans.fan_alpha, fans.fan_beta_skeleton);
    const double s = shock_constants(kBase).shock_speed;

    // Over Omega_1 = (s, s/2) t: unresolved.
    const TestFunction phi1 = make_phi(0.5, 0.5 * 0.75 * s, 0.05);
    const WeakResidualReport r1 = weak_residual_quadrature(nu, phi1);
    CHECK(r1.touches_unresolved);

    // Entirely inside the far left wedge: clean.
    const TestFunction phi2 = make_phi(0.5, 0.5 * (s - 2.0), 0.1);
    const WeakResidualReport r2 = weak_residual_quadrature(nu, phi2);
    CHECK_FALSE(r2.touches_unresolved);
    CHECK_FALSE(r2.touches_macroscopic);
    CHECK(r2.worst_normalized <= 1e-9);

    const VerifyReport vr = verify(nu, {phi1, phi2}, 1e-8);
    CHECK(vr.checked_phis == 1);
    CHECK(vr.skipped_phis == 1);
}

TEST_CASE("verify passes on the exact shock and fails on a corrupted one") {
    const AtomicYoungMeasure good = measure_from_fan(self_similar_shock(kBase));
    const double s = shock_constants(kBase).shock_speed;
    const std::vector<TestFunction> dict{make_phi(0.5, 0.5 * s, 0.3),
                                         make_phi(0.3, 0.0, 0.2),
                                         make_phi(0.05, 0.3 * s, 0.15)};
    const VerifyReport ok = verify(good, dict, 1e-8);
    CHECK(ok.passed);
    CHECK(ok.worst_interface <= 1e-12);
    CHECK(ok.worst_quadrature <= 1e-8);
    CHECK(ok.checked_phis == 3);
    CHECK(ok.skipped_phis == 0);

    FanSolution bad_fan = self_similar_shock(kBase);
    bad_fan.wedges.front().sigma_right += 0.04;
    bad_fan.wedges.back().sigma_left += 0.04;
    const AtomicYoungMeasure bad = measure_from_fan(bad_fan);
    const VerifyReport fail = verify(bad, dict, 1e-8);
    CHECK_FALSE(fail.passed);
    CHECK(fail.worst_interface > 1e-3);
}

TEST_CASE("lambda combinations are linear in the weak residual") {
    const FanSolution f = self_similar_shock(kBase);
    const AtomicYoungMeasure nu = measure_from_fan(f);
    AtomicYoungMeasure mu = nu;
    mu.label = "shifted";
    mu.regions[0].atoms = {
        {1.0, lift_extended(primitive_to_conservative(PrimitiveState{1.2, 0.3, -0.1, 0.9}))}};
    mu.regions[1].atoms = {
        {1.0, lift_extended(primitive_to_conservative(PrimitiveState{2.2, -0.5, 0.4, 2.4}))}};

    const double s = f.wedges.front().sigma_right;
    const TestFunction phi = make_phi(0.45, 0.45 * s, 0.3);
    const WeakResidualReport rn = weak_residual_quadrature(nu, phi);
    const WeakResidualReport rm = weak_residual_quadrature(mu, phi);
    for (double lambda : {0.25, 0.7}) {
        const AtomicYoungMeasure combo = lambda_combination(nu, mu, lambda);
        CHECK_NOTHROW(validate(combo));
        const WeakResidualReport rc = weak_residual_quadrature(combo, phi);
        const double scale = 1.0 + std::abs(rc.mass.value) + std::abs(rc.energy.value);
        CHECK(std::abs(rc.mass.value -
                       (lambda * rn.mass.value + (1.0 - lambda) * rm.mass.value)) <=
              1e-12 * scale);
        CHECK(std::abs(rc.momentum1.value - (lambda * rn.momentum1.value +
                                             (1.0 - lambda) * rm.momentum1.value)) <=
              1e-12 * scale);
        CHECK(std::abs(rc.momentum2.value - (lambda * rn.momentum2.value +
                                             (1.0 - lambda) * rm.momentum2.value)) <=
              1e-12 * scale);
        CHECK(std::abs(rc.energy.value -
                       (lambda * rn.energy.value + (1.0 - lambda) * rm.energy.value)) <=
              1e-12 * scale);
        // Interface jumps combine linearly as well.
        const std::vector<InterfaceResidual> in = interface_residual_exact(nu);
        const std::vector<InterfaceResidual> im = interface_residual_exact(mu);
        const std::vector<InterfaceResidual> ic = interface_residual_exact(combo);
        for (std::size_t i = 0; i < ic.size(); ++i)
            for (int c = 0; c < 4; ++c)
                CHECK(ic[i].jump[c] ==
                      doctest::Approx(lambda * in[i].jump[c] + (1.0 - lambda) * im[i].jump[c])
                          .epsilon(1e-12));
    }
}

TEST_CASE("lambda combination merges coincident atoms") {
    const ExtendedState z = lift_extended(ConservativeState{1.0, 0.2, 0.0, 1.2});
    const AtomicYoungMeasure a = constant_measure({{1.0, z}});
    const AtomicYoungMeasure combo = lambda_combination(a, a, 0.3);
    REQUIRE(combo.regions.size() == 1);
    CHECK(combo.regions[0].atoms.size() == 1);
    CHECK(combo.regions[0].atoms[0].weight == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("default dictionary is valid and covers t = 0") {
    const AtomicYoungMeasure nu = measure_from_fan(self_similar_shock(kBase));
    const std::vector<TestFunction> dict = default_dictionary(nu);
    CHECK(dict.size() >= 25);
    bool straddles = false;
    for (const TestFunction& phi : dict) {
        CHECK_NOTHROW(validate(phi, 1.0));
        if (phi.center_t < phi.radius) straddles = true;
    }
    CHECK(straddles);
}

TEST_CASE("test function validation") {
    CHECK_THROWS_AS(validate(make_phi(0.5, 0.0, 0.0), 1.0), InvalidData);
    CHECK_THROWS_AS(validate(make_phi(0.5, 0.0, -0.2), 1.0), InvalidData);
    CHECK_THROWS_AS(validate(make_phi(0.9, 0.0, 0.2), 1.0), InvalidData);
    TestFunction no_weight = make_phi(0.5, 0.0, 0.2);
    no_weight.momentum_weight = {0.0, 0.0};
    CHECK_THROWS_AS(validate(no_weight, 1.0), InvalidData);
    CHECK_NOTHROW(validate(make_phi(0.5, 0.0, 0.2), 1.0));
    CHECK_THROWS_AS(verify(measure_from_fan(self_similar_shock(kBase)), {}, 1e-8),
                    InvalidData);
}
