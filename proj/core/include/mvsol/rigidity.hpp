#pragma once

#include "mvsol/linear_operator.hpp"
#include "mvsol/states.hpp"
#include "mvsol/wave_cone.hpp"

#include <string>
#include <vector>

namespace mvsol {

enum class WaveProfile { Square, Sine };

// 1-periodic profile value h(tau). The square wave takes the value 1 on
// (0, duty] and 0 on (duty, 1]; ties at the jump points take the left value.
double profile_value(WaveProfile profile, double duty, double tau);

struct Box3 {
    Vec3 lo{0.0, 0.0, 0.0};
    Vec3 hi{1.0, 1.0, 1.0};
};

// Oscillating field z_n(y) = base + amplitude * h(n (y . direction)) on a box
// in R^3 (coordinates y = (t, x1, x2)).
struct PlaneWaveSequence {
    std::vector<double> base;      // d-vector
    std::vector<double> amplitude; // d-vector
    Vec3 direction{0.0, 1.0, 0.0}; // unit vector
    WaveProfile profile = WaveProfile::Square;
    double duty = 0.5;
    int frequency = 1;
    Box3 domain;
};

void validate(const PlaneWaveSequence& s);

// Cell-centered samples on an axis-aligned 2-D slice {y3 = slice_y3} of the
// domain box.
struct GridSpec {
    int cells = 256;
    double slice_y3 = 0.5;
};

struct SampleField {
    std::size_t d = 0;
    std::vector<double> data; // row-major, size() * d entries
    std::size_t size() const { return d == 0 ? 0 : data.size() / d; }
    const double* at(std::size_t i) const { return data.data() + i * d; }
};

SampleField sample_sequence(const PlaneWaveSequence& s, const GridSpec& grid);

// Dictionary entry phi = e_j Psi(y) G(y . xi): a radial bump Psi of the given
// radius, optionally modulated by G(u) = sin-profile of the oscillation scale
// (G = g(n u - phase) / n with g' = sin(2 pi (tau - phase))), which keeps the
// dual-norm pairing of a non-relaxing oscillation bounded away from zero
// uniformly in n. Unmodulated entries have G = 1.
struct RigidityBump {
    Vec3 center{0.5, 0.5, 0.5};
    double radius = 0.25;
    bool modulated = false;
    double phase = 0.0; // fraction of the oscillation period
    double beta = 0.0;  // affine offset added to the modulation envelope
};

// 4 scales x 27 centers of plain bumps plus modulated bumps at 3 scales x 8
// phases x 3 affine offsets, all supported inside the unit box.
std::vector<RigidityBump> default_rigidity_dictionary();

struct DualNormEstimate {
    double value = 0.0; // max over dictionary of |<A z_n, phi>| / ||phi||_{1,r'}
    double r = 4.0 / 3.0;
    int dictionary_size = 0;
};

// Finite-dictionary lower bound for || A z_n ||_{W^{-1,r}} on the domain box.
// The pairing <A z_n, e_j phi> = -int (A z_n)_j . grad phi reduces exactly to
// -(Z(amplitude) xi)_j * S(phi, n) by integrating out the directions
// perpendicular to xi, so directions in the wave cone give exact zero.
DualNormEstimate constraint_residual(const PlaneWaveSequence& s, const FirstOrderOperator& op,
                                     const std::vector<RigidityBump>& dictionary,
                                     double r = 4.0 / 3.0);

struct EmpiricalAtom {
    double weight = 0.0;
    std::vector<double> value;
};

struct EmpiricalMeasure {
    std::vector<EmpiricalAtom> atoms;
};

// Empirical distribution of the sampled values; two-valued fields are
// recovered exactly as two atoms. Fields with many distinct values (sine
// profiles) fall back to a histogram along the dominant segment direction.
EmpiricalMeasure young_estimate(const SampleField& field);

double tv_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b,
                   double match_tol = 1e-6);

// Worst relative error between grid averages of f(z_n) and <empirical, f> for
// f in {the d components, the four Euler flux nonlinearities}.
double moment_consistency(const SampleField& field, const EmpiricalMeasure& emp);

struct DichotomyOptions {
    std::vector<int> n_list{1, 2, 4, 8, 16, 32, 64, 128, 256};
    GridSpec grid;
    WaveProfile profile = WaveProfile::Square;
    double duty = 0.5;
    double r = 4.0 / 3.0;
    int sphere_points = 64;
    // Oblique sampling direction used for the empirical-measure grid study
    // when the difference is not a wave-cone direction.
    Vec3 sampling_direction{1.0, 2.0, 3.0}; // normalized internally
};

struct DichotomyPoint {
    int n = 0;
    double residual_estimate = 0.0; // Lambda: along the kernel; else min over sphere grid
    double tv_to_target = 0.0;
};

struct DichotomyReport {
    ConeVerdict cone;
    bool in_cone = false;
    bool degenerate = false; // z2 == z1
    std::vector<DichotomyPoint> curve;
    EmpiricalMeasure empirical; // at the largest n in the list
    double moment_worst_rel_error = 0.0;
    double positive_floor = 0.0; // min of residual_estimate over the curve
    double floor_spread = 0.0;   // (max - min) / max over the curve
    std::string conclusion;
    std::string caveat;
};

// Numerical dichotomy between generable and non-generable two-atom measures
// supported on {z1, z2}: cone membership of the difference decides between an
// explicit constraint-compatible oscillation and a positive dual-norm floor
// over all plane-wave directions. A demonstration over the plane-wave family,
// not a proof.
DichotomyReport dichotomy_experiment(const ExtendedState& z1, const ExtendedState& z2,
                                     const FirstOrderOperator& op,
                                     const DichotomyOptions& opts = {});

// Deterministic Fibonacci sphere grid of unit directions.
std::vector<Vec3> sphere_grid(int points);

} // namespace mvsol
