#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mvsol/rigidity.hpp"

#include <cmath>
#include <set>

using namespace mvsol;

namespace {

ExtendedState lift4(double rho, double m1, double m2, double E) {
    return lift_extended(ConservativeState{rho, m1, m2, E});
}

PlaneWaveSequence basic_sequence() {
    PlaneWaveSequence s;
    const ExtendedState z = lift4(1.0, 0.0, 0.0, 1.0);
    s.base.assign(z.z.begin(), z.z.end());
    s.amplitude.assign(8, 0.0);
    s.amplitude[0] = 1.0; // density-only oscillation: a wave-cone direction
    return s;
}

} // namespace

TEST_CASE("square profile takes the left value at ties") {
    CHECK(profile_value(WaveProfile::Square, 0.5, 0.0) == 0.0);
    CHECK(profile_value(WaveProfile::Square, 0.5, 0.25) == 1.0);
    CHECK(profile_value(WaveProfile::Square, 0.5, 0.5) == 1.0);
    CHECK(profile_value(WaveProfile::Square, 0.5, 0.6) == 0.0);
    CHECK(profile_value(WaveProfile::Square, 0.5, 1.0) == 0.0);
    CHECK(profile_value(WaveProfile::Square, 0.5, 1.5) == 1.0);
    CHECK(profile_value(WaveProfile::Square, 0.5, -0.75) == 1.0);
    CHECK(profile_value(WaveProfile::Square, 0.25, 0.25) == 1.0);
    CHECK(profile_value(WaveProfile::Square, 0.25, 0.3) == 0.0);
}

TEST_CASE("sine profile is sin(2 pi tau)") {
    CHECK(profile_value(WaveProfile::Sine, 0.5, 0.25) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(profile_value(WaveProfile::Sine, 0.5, 0.5)) < 1e-14);
    CHECK(profile_value(WaveProfile::Sine, 0.5, 0.75) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("plane-wave validation") {
    PlaneWaveSequence s = basic_sequence();
    CHECK_NOTHROW(validate(s));

    PlaneWaveSequence bad = s;
    bad.direction = {0.0, 2.0, 0.0};
    CHECK_THROWS_AS(validate(bad), InvalidData);

    bad = s;
    bad.duty = 0.0;
    CHECK_THROWS_AS(validate(bad), InvalidData);
    bad.duty = 1.0;
    CHECK_THROWS_AS(validate(bad), InvalidData);

    bad = s;
    bad.frequency = 0;
    CHECK_THROWS_AS(validate(bad), InvalidData);

    bad = s;
    bad.amplitude.pop_back();
    CHECK_THROWS_AS(validate(bad), DimensionMismatch);

    bad = s;
    bad.base[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(validate(bad), InvalidData);
}

TEST_CASE("sampling a square wave recovers the two-atom measure exactly") {
    PlaneWaveSequence s = basic_sequence();
    s.duty = 0.25;
    s.frequency = 4;
    GridSpec grid;
    grid.cells = 64;
    const SampleField field = sample_sequence(s, grid);
    REQUIRE(field.d == 8);
    REQUIRE(field.size() == 64 * 64);

    const EmpiricalMeasure emp = young_estimate(field);
    REQUIRE(emp.atoms.size() == 2);
    CHECK(emp.atoms[0].weight == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(emp.atoms[1].weight == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(emp.atoms[0].value[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(emp.atoms[1].value[0] == doctest::Approx(2.0).epsilon(1e-14));

    EmpiricalMeasure target;
    target.atoms.push_back({0.75, std::vector<double>(s.base.begin(), s.base.end())});
    std::vector<double> shifted(s.base.begin(), s.base.end());
    for (int k = 0; k < 8; ++k) shifted[k] += s.amplitude[k];
    target.atoms.push_back({0.25, shifted});
    CHECK(tv_distance(emp, target) <= 1e-12);
    CHECK(moment_consistency(field, emp) <= 1e-13);
}

TEST_CASE("grid validation") {
    PlaneWaveSequence s = basic_sequence();
    GridSpec bad;
    bad.cells = 0;
    CHECK_THROWS_AS(sample_sequence(s, bad), InvalidData);
    bad.cells = 16;
    bad.slice_y3 = 2.0;
    CHECK_THROWS_AS(sample_sequence(s, bad), InvalidData);
}

TEST_CASE("tv distance anchors") {
    EmpiricalMeasure a, b, c;
    a.atoms.push_back({1.0, {1.0, 2.0}});
    b.atoms.push_back({1.0, {1.0, 2.0}});
    c.atoms.push_back({1.0, {5.0, -1.0}});
    CHECK(tv_distance(a, b) == 0.0);
    CHECK(tv_distance(a, c) == 1.0);
    EmpiricalMeasure half;
    half.atoms.push_back({0.5, {1.0, 2.0}});
    half.atoms.push_back({0.5, {5.0, -1.0}});
    CHECK(tv_distance(a, half) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("constraint residual vanishes along wave-cone directions") {
    const FirstOrderOperator op = euler_operator();
    const std::vector<RigidityBump> dict = default_rigidity_dictionary();
    CHECK(dict.size() == 4 * 27 + 3 * 8 * 3);

    PlaneWaveSequence s = basic_sequence(); // density-only amplitude
    for (Vec3 xi : {Vec3{0.0, 1.0, 0.0}, Vec3{0.0, 0.0, 1.0},
                    Vec3{0.0, std::sqrt(0.5), std::sqrt(0.5)}}) {
        s.direction = xi;
        for (int n : {1, 8, 64}) {
            s.frequency = n;
            const DualNormEstimate est = constraint_residual(s, op, dict);
            CHECK(est.dictionary_size == static_cast<int>(dict.size()));
            CHECK(est.value <= 1e-12);
        }
    }
}

TEST_CASE("constraint residual is positive off the cone") {
    const FirstOrderOperator op = euler_operator();
    const ExtendedState z1 = lift4(1.0, 1.0, 0.0, 1.5);
    const ExtendedState z2 = lift4(2.0, 1.0, 0.0, 0.75);
    PlaneWaveSequence s;
    s.base.assign(z1.z.begin(), z1.z.end());
    s.amplitude.resize(8);
    for (int k = 0; k < 8; ++k) s.amplitude[k] = z2.z[k] - z1.z[k];
    s.direction = {0.0, 1.0, 0.0};
    s.frequency = 16;
    const DualNormEstimate est = constraint_residual(s, op, default_rigidity_dictionary());
    CHECK(est.value > 1e-3);
}

TEST_CASE("lebesgue exponent must stay in the admissible band") {
    const FirstOrderOperator op = euler_operator();
    PlaneWaveSequence s = basic_sequence();
    const std::vector<RigidityBump> dict = default_rigidity_dictionary();
    CHECK_THROWS_AS(constraint_residual(s, op, dict, 1.0), InvalidData);
    CHECK_THROWS_AS(constraint_residual(s, op, dict, 1.5), InvalidData);
    CHECK_NOTHROW(constraint_residual(s, op, dict, 1.2));
}

TEST_CASE("sphere grid produces distinct unit vectors") {
    const std::vector<Vec3> pts = sphere_grid(64);
    REQUIRE(pts.size() == 64);
    for (const Vec3& p : pts) {
        const double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        CHECK(n == doctest::Approx(1.0).epsilon(1e-12));
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double d = std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1],
                                        pts[i][2] - pts[j][2]);
            CHECK(d > 1e-3);
        }
    CHECK_THROWS_AS(sphere_grid(0), InvalidData);
}

TEST_CASE("dichotomy: degenerate pair converges strongly") {
    const ExtendedState z = lift4(1.0, 1.0, 0.0, 1.5);
    const DichotomyReport rep = dichotomy_experiment(z, z, euler_operator());
    CHECK(rep.degenerate);
    CHECK(rep.curve.empty());
    REQUIRE(rep.empirical.atoms.size() == 1);
    CHECK(rep.empirical.atoms[0].weight == 1.0);
    CHECK(rep.conclusion == "degenerate single atom; the sequence converges strongly");
}

TEST_CASE("dichotomy: wave-cone pair is generated with zero residual") {
    const ExtendedState z1 = lift4(1.0, 0.0, 0.0, 1.0);
    const ExtendedState z2 = lift4(2.0, 0.0, 0.0, 1.0); // density-only difference
    DichotomyOptions opts;
    opts.n_list = {1, 4, 16};
    opts.grid.cells = 128;
    opts.sphere_points = 16;
    const DichotomyReport rep = dichotomy_experiment(z1, z2, euler_operator(), opts);
    CHECK_FALSE(rep.degenerate);
    CHECK(rep.in_cone);
    REQUIRE(rep.curve.size() == 3);
    for (const DichotomyPoint& pt : rep.curve) CHECK(pt.residual_estimate <= 1e-12);
    // TV convergence is guaranteed at the largest frequency; small n may see
    // only a fraction of a period across the sampling slice.
    CHECK(rep.curve.back().tv_to_target <= 0.05);
    CHECK(rep.conclusion ==
          "two-atom measure generated by an explicit constraint-compatible oscillation");
    CHECK(rep.empirical.atoms.size() == 2);
    CHECK(rep.moment_worst_rel_error <= 1e-10);
}

TEST_CASE("dichotomy: non-cone pair has a positive residual floor") {
    const ExtendedState z1 = lift4(1.0, 1.0, 0.0, 1.5);
    const ExtendedState z2 = lift4(2.0, 1.0, 0.0, 0.75);
    DichotomyOptions opts;
    opts.n_list = {1, 4, 16};
    opts.grid.cells = 128;
    opts.sphere_points = 16;
    const DichotomyReport rep = dichotomy_experiment(z1, z2, euler_operator(), opts);
    CHECK_FALSE(rep.degenerate);
    CHECK_FALSE(rep.in_cone);
    REQUIRE(rep.curve.size() == 3);
    CHECK(rep.positive_floor > 0.0);
    CHECK(rep.floor_spread <= 0.2);
    CHECK(rep.curve.back().tv_to_target <= 0.05);
    CHECK(rep.conclusion == "two-atom measure not generable by this family");
    CHECK_FALSE(rep.caveat.empty());
    CHECK(rep.empirical.atoms.size() == 2);
    CHECK(rep.moment_worst_rel_error <= 1e-10);
    CHECK_THROWS_AS(dichotomy_experiment(z1, z2, euler_operator(), [] {
                        DichotomyOptions o;
                        o.n_list = {};
                        return o;
                    }()),
                    InvalidData);
}
