#include "mvsol/rigidity.hpp"

#include "mvsol/quadrature.hpp"
#include "mvsol/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace mvsol {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Eta1(w) = int_w^1 eta(s) ds on a fine uniform table (cumulative from the
// flat end), linearly interpolated. Feeds the exact slice reduction of the
// dual-norm pairing; table resolution keeps the interpolation error far below
// the 1e-3-level accuracy the floor experiments need.
class Eta1Table {
  public:
    Eta1Table() {
        values_.resize(kNodes, 0.0);
        const GaussRule& gr = gauss_legendre(16);
        for (int k = kNodes - 2; k >= 0; --k) {
            const double a = static_cast<double>(k) / (kNodes - 1);
            const double b = static_cast<double>(k + 1) / (kNodes - 1);
            double piece = 0.0;
            for (std::size_t i = 0; i < gr.x.size(); ++i) {
                const double s = 0.5 * (a + b) + 0.5 * (b - a) * gr.x[i];
                piece += 0.5 * (b - a) * gr.w[i] * bump(s);
            }
            values_[k] = values_[k + 1] + piece;
        }
    }

    double operator()(double w) const {
        if (w <= 0.0) return values_[0];
        if (w >= 1.0) return 0.0;
        const double t = w * (kNodes - 1);
        const int k = std::min(static_cast<int>(t), kNodes - 2);
        const double f = t - k;
        return (1.0 - f) * values_[k] + f * values_[k + 1];
    }

  private:
    static constexpr int kNodes = 8193;
    std::vector<double> values_;
};

const Eta1Table& eta1() {
    static const Eta1Table table;
    return table;
}

// Modulation G(u) = -cos(2 pi (n (u - uc) - phase)) / (2 pi n), so that
// G'(u) = sin(2 pi (n (u - uc) - phase)). Defined relative to the bump center
// uc so that norms do not depend on the direction xi.
double modulation(double u, double uc, int n, double phase) {
    return -std::cos(kTwoPi * (n * (u - uc) - phase)) / (kTwoPi * n);
}

double modulation_derivative(double u, double uc, int n, double phase) {
    return std::sin(kTwoPi * (n * (u - uc) - phase));
}

void validate_bump_in_box(const RigidityBump& b, const Box3& box) {
    if (!(b.radius > 0.0) || !std::isfinite(b.radius))
        throw InvalidData("rigidity bump radius must be positive and finite");
    for (int i = 0; i < 3; ++i) {
        if (b.center[i] - b.radius < box.lo[i] - 1e-12 ||
            b.center[i] + b.radius > box.hi[i] + 1e-12)
            throw InvalidData("rigidity bump support must lie inside the domain box");
    }
}

// Breakpoints of u -> h(n u) (and the modulation) inside [ulo, uhi], with one
// extra midpoint subdivision so each piece covers at most half an oscillation
// period.
std::vector<double> oscillation_pieces(double ulo, double uhi, int n, WaveProfile profile,
                                       double duty) {
    std::vector<double> cuts{ulo};
    const double period = 1.0 / n;
    const long k0 = static_cast<long>(std::floor(ulo * n)) - 1;
    const long k1 = static_cast<long>(std::ceil(uhi * n)) + 1;
    for (long k = k0; k <= k1; ++k) {
        if (profile == WaveProfile::Square) {
            for (double off : {0.0, duty * period}) {
                const double u = k * period + off;
                if (u > ulo && u < uhi) cuts.push_back(u);
            }
        } else {
            const double u = 0.5 * k * period;
            if (u > ulo && u < uhi) cuts.push_back(u);
        }
    }
    cuts.push_back(uhi);
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> out;
    out.reserve(2 * cuts.size());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        out.push_back(cuts[i]);
        out.push_back(0.5 * (cuts[i] + cuts[i + 1]));
    }
    out.push_back(cuts.back());
    return out;
}

// S(phi, n) = int h(n u) [ SliceB(u) G(u) + SliceA(u) G'(u) ] du where
// SliceA(u) = pi R^2 Eta1(w0), SliceB(u) = -2 pi (u - uc) eta(w0) are the
// plane integrals of Psi and xi . grad Psi over {y . xi = u}, with
// w0 = ((u - uc) / R)^2. Modulated entries use G + beta: the affine offset
// recovers a plain-bump component under the same envelope, which carries real
// pairing mass at small n where the wave has few periods inside the support.
double pairing_factor(const RigidityBump& b, const Vec3& xi, int n, WaveProfile profile,
                      double duty) {
    const double uc = b.center[0] * xi[0] + b.center[1] * xi[1] + b.center[2] * xi[2];
    const double R = b.radius;
    const std::vector<double> cuts = oscillation_pieces(uc - R, uc + R, n, profile, duty);
    const GaussRule& gr = gauss_legendre(8);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], c = cuts[i + 1];
        double piece = 0.0;
        for (std::size_t q = 0; q < gr.x.size(); ++q) {
            const double u = 0.5 * (a + c) + 0.5 * (c - a) * gr.x[q];
            const double du = u - uc;
            const double w0 = std::min(1.0, (du * du) / (R * R));
            const double slice_b = -kTwoPi * du * bump(w0);
            const double h = profile_value(profile, duty, n * u);
            double val = slice_b;
            if (b.modulated) {
                const double slice_a = std::numbers::pi * R * R * eta1()(w0);
                val = slice_b * (modulation(u, uc, n, b.phase) + b.beta) +
                      slice_a * modulation_derivative(u, uc, n, b.phase);
            }
            piece += 0.5 * (c - a) * gr.w[q] * h * val;
        }
        total += piece;
    }
    return total;
}

// || phi ||_{W^{1,r'}} = ( int |phi|^{r'} + |grad phi|^{r'} )^{1/r'} over the
// support, via the same (u, rho) cylindrical reduction.
double bump_sobolev_norm(const RigidityBump& b, int n, WaveProfile profile, double duty,
                         double rp) {
    const double R = b.radius;
    const GaussRule& gu = gauss_legendre(8);
    const GaussRule& gq = gauss_legendre(12);

    std::vector<double> cuts;
    if (b.modulated) {
        cuts = oscillation_pieces(-R, R, n, WaveProfile::Sine, duty);
    } else {
        cuts = {-R, 0.0, R};
    }
    (void)profile;

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], c = cuts[i + 1];
        for (std::size_t q = 0; q < gu.x.size(); ++q) {
            const double du = 0.5 * (a + c) + 0.5 * (c - a) * gu.x[q];
            const double wu = 0.5 * (c - a) * gu.w[q];
            const double rho_max2 = R * R - du * du;
            if (rho_max2 <= 0.0) continue;
            const double rho_max = std::sqrt(rho_max2);
            const double G = b.modulated ? modulation(du, 0.0, n, b.phase) + b.beta : 1.0;
            const double Gp = b.modulated ? modulation_derivative(du, 0.0, n, b.phase) : 0.0;
            double inner = 0.0;
            for (std::size_t p = 0; p < gq.x.size(); ++p) {
                const double rho = 0.5 * rho_max + 0.5 * rho_max * gq.x[p];
                const double wr = 0.5 * rho_max * gq.w[p];
                const double w = (du * du + rho * rho) / (R * R);
                const double e = bump(w);
                const double ep = bump_derivative(w);
                const double grad2 = 4.0 * G * G * ep * ep * w / (R * R) +
                                     4.0 * G * Gp * e * ep * du / (R * R) + Gp * Gp * e * e;
                const double phi = std::abs(G * e);
                inner += wr * kTwoPi * rho *
                         (std::pow(phi, rp) +
                          std::pow(std::sqrt(std::max(0.0, grad2)), rp));
            }
            total += wu * inner;
        }
    }
    return std::pow(total, 1.0 / rp);
}

double cached_norm(const RigidityBump& b, int n, WaveProfile profile, double duty, double rp) {
    struct Key {
        double radius, phase, beta, duty, rp;
        int n;
        bool modulated;
        bool operator<(const Key& o) const {
            return std::tie(radius, phase, beta, duty, rp, n, modulated) <
                   std::tie(o.radius, o.phase, o.beta, o.duty, o.rp, o.n, o.modulated);
        }
    };
    static std::map<Key, double> cache;
    static std::mutex mutex;
    // Unmodulated norms do not depend on n or the profile.
    const Key key{b.radius, b.phase, b.beta, duty, rp, b.modulated ? n : 0, b.modulated};
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const double v = bump_sobolev_norm(b, n, profile, duty, rp);
    cache.emplace(key, v);
    return v;
}

// The sampling grid freezes y3, so a wave vector is observable on the slice
// only through its (y1, y2) components. Every kernel vector of the symbol is
// constraint-compatible, so when the kernel has dimension two we are free to
// rotate inside it towards the visible plane; otherwise fall back to the
// reported direction.
Vec3 visible_kernel_direction(const SymbolMatrix& Z, const ConeVerdict& cone) {
    Vec3 xi{(*cone.kernel_direction)[0], (*cone.kernel_direction)[1],
            (*cone.kernel_direction)[2]};
    const int kdim = 3 - cone.rank;
    if (kdim < 2) return xi;

    const SvdResult s = svd_small(Z.Z);
    std::array<Vec3, 2> basis;
    for (int i = 0; i < 2; ++i)
        for (int r = 0; r < 3; ++r) basis[i][r] = s.V[r][cone.rank + i];

    // Gram matrix of the visible (first two) components over the kernel basis;
    // its top eigenvector gives the in-kernel combination with the largest
    // visible part.
    const double a = basis[0][0] * basis[0][0] + basis[0][1] * basis[0][1];
    const double b = basis[0][0] * basis[1][0] + basis[0][1] * basis[1][1];
    const double c = basis[1][0] * basis[1][0] + basis[1][1] * basis[1][1];
    const double lmax = 0.5 * (a + c) + std::hypot(0.5 * (a - c), b);
    if (lmax <= 1e-24) return xi;
    double c0 = b, c1 = lmax - a;
    if (std::hypot(c0, c1) < std::hypot(lmax - c, b)) {
        c0 = lmax - c;
        c1 = b;
    }
    const double norm = std::hypot(c0, c1);
    if (!(norm > 0.0)) {
        c0 = 1.0;
        c1 = 0.0;
    } else {
        c0 /= norm;
        c1 /= norm;
    }
    for (int r = 0; r < 3; ++r) xi[r] = c0 * basis[0][r] + c1 * basis[1][r];
    return xi;
}

std::vector<double> flux_nonlinearity(const double* z, std::size_t d) {
    if (d != 8) return {};
    if (!(z[0] > kPositivityFloor))
        throw VacuumAtom("flux nonlinearity undefined at vanishing density");
    const double p = z[5] - 0.5 * (z[1] * z[1] + z[2] * z[2]) / z[0];
    return {z[1], z[1] * z[1] / z[0] + p, z[1] * z[2] / z[0], (z[5] + p) * z[1] / z[0]};
}

} // namespace

double profile_value(WaveProfile profile, double duty, double tau) {
    if (profile == WaveProfile::Sine) return std::sin(kTwoPi * tau);
    double frac = tau - std::floor(tau);
    return (frac > 0.0 && frac <= duty) ? 1.0 : 0.0;
}

void validate(const PlaneWaveSequence& s) {
    if (s.base.empty() || s.base.size() != s.amplitude.size())
        throw DimensionMismatch("plane-wave base and amplitude must agree in dimension");
    for (double v : s.base)
        if (!std::isfinite(v)) throw InvalidData("plane-wave base must be finite");
    for (double v : s.amplitude)
        if (!std::isfinite(v)) throw InvalidData("plane-wave amplitude must be finite");
    const double norm =
        std::sqrt(s.direction[0] * s.direction[0] + s.direction[1] * s.direction[1] +
                  s.direction[2] * s.direction[2]);
    if (std::abs(norm - 1.0) > 1e-9)
        throw InvalidData("plane-wave direction must be a unit vector");
    if (!(s.duty > 0.0 && s.duty < 1.0)) throw InvalidData("square-wave duty must lie in (0, 1)");
    if (s.frequency < 1) throw InvalidData("plane-wave frequency must be at least 1");
    for (int i = 0; i < 3; ++i)
        if (!(s.domain.lo[i] < s.domain.hi[i]))
            throw InvalidData("plane-wave domain box must be nondegenerate");
}

SampleField sample_sequence(const PlaneWaveSequence& s, const GridSpec& grid) {
    validate(s);
    if (grid.cells < 1) throw InvalidData("grid must have at least one cell per axis");
    if (grid.slice_y3 < s.domain.lo[2] || grid.slice_y3 > s.domain.hi[2])
        throw InvalidData("grid slice must lie inside the domain box");

    const std::size_t d = s.base.size();
    SampleField field;
    field.d = d;
    field.data.resize(static_cast<std::size_t>(grid.cells) * grid.cells * d);
    const double h1 = (s.domain.hi[0] - s.domain.lo[0]) / grid.cells;
    const double h2 = (s.domain.hi[1] - s.domain.lo[1]) / grid.cells;
    std::size_t idx = 0;
    for (int i = 0; i < grid.cells; ++i) {
        const double y1 = s.domain.lo[0] + (i + 0.5) * h1;
        for (int j = 0; j < grid.cells; ++j) {
            const double y2 = s.domain.lo[1] + (j + 0.5) * h2;
            const double u =
                y1 * s.direction[0] + y2 * s.direction[1] + grid.slice_y3 * s.direction[2];
            const double h = profile_value(s.profile, s.duty, s.frequency * u);
            for (std::size_t k = 0; k < d; ++k)
                field.data[idx++] = s.base[k] + s.amplitude[k] * h;
        }
    }
    return field;
}

std::vector<RigidityBump> default_rigidity_dictionary() {
    std::vector<RigidityBump> dict;
    for (double radius : {0.25, 0.2, 0.15, 0.1}) {
        for (double c1 : {0.25, 0.5, 0.75})
            for (double c2 : {0.25, 0.5, 0.75})
                for (double c3 : {0.25, 0.5, 0.75}) {
                    RigidityBump b;
                    b.center = {c1, c2, c3};
                    b.radius = radius;
                    dict.push_back(b);
                }
    }
    for (double radius : {0.5, 0.4, 0.2}) {
        for (int k = 0; k < 8; ++k) {
            for (double beta : {0.0, 0.1, -0.1}) {
                RigidityBump b;
                b.radius = radius;
                b.modulated = true;
                b.phase = 0.0625 * k;
                b.beta = beta;
                dict.push_back(b);
            }
        }
    }
    return dict;
}

DualNormEstimate constraint_residual(const PlaneWaveSequence& s, const FirstOrderOperator& op,
                                     const std::vector<RigidityBump>& dictionary, double r) {
    validate(s);
    if (!(r > 1.0 && r < 1.5))
        throw InvalidData("Lebesgue exponent must lie in (1, 3/2)");
    if (op.N != 3) throw DimensionMismatch("dual-norm pairing requires a 3-variable operator");
    if (s.amplitude.size() != static_cast<std::size_t>(op.d))
        throw DimensionMismatch("amplitude dimension must match the operator");
    if (dictionary.empty()) throw InvalidData("dual-norm dictionary must not be empty");

    const SymbolMatrix Z = assemble_symbol(op, s.amplitude);
    double coef = 0.0;
    for (int j = 0; j < Z.l; ++j) {
        double row = 0.0;
        for (int i = 0; i < Z.N; ++i) row += Z.Z[j][i] * s.direction[i];
        coef = std::max(coef, std::abs(row));
    }

    const double rp = r / (r - 1.0);
    DualNormEstimate est;
    est.r = r;
    est.dictionary_size = static_cast<int>(dictionary.size());
    for (const RigidityBump& b : dictionary) {
        validate_bump_in_box(b, s.domain);
        const double S = pairing_factor(b, s.direction, s.frequency, s.profile, s.duty);
        const double norm = cached_norm(b, s.frequency, s.profile, s.duty, rp);
        if (!(norm > 0.0)) continue;
        est.value = std::max(est.value, coef * std::abs(S) / norm);
    }
    return est;
}

EmpiricalMeasure young_estimate(const SampleField& field) {
    if (field.size() == 0) throw InvalidData("empirical measure needs a nonempty field");
    const std::size_t d = field.d;
    const std::size_t count = field.size();

    double scale = 0.0;
    for (double v : field.data) scale = std::max(scale, std::abs(v));
    const double tol = 1e-9 * (1.0 + scale);

    constexpr std::size_t kMaxAtoms = 512;
    std::vector<std::vector<double>> values;
    std::vector<double> counts;
    bool overflow = false;
    for (std::size_t i = 0; i < count && !overflow; ++i) {
        const double* z = field.at(i);
        bool found = false;
        for (std::size_t a = 0; a < values.size(); ++a) {
            bool close = true;
            for (std::size_t k = 0; k < d; ++k) {
                if (std::abs(values[a][k] - z[k]) > tol) {
                    close = false;
                    break;
                }
            }
            if (close) {
                counts[a] += 1.0;
                found = true;
                break;
            }
        }
        if (!found) {
            if (values.size() >= kMaxAtoms) {
                overflow = true;
                break;
            }
            values.emplace_back(z, z + d);
            counts.push_back(1.0);
        }
    }

    EmpiricalMeasure emp;
    if (!overflow) {
        for (std::size_t a = 0; a < values.size(); ++a)
            emp.atoms.push_back({counts[a] / static_cast<double>(count), values[a]});
        std::sort(emp.atoms.begin(), emp.atoms.end(),
                  [](const EmpiricalAtom& x, const EmpiricalAtom& y) {
                      return x.weight > y.weight;
                  });
        return emp;
    }

    // Continuum of values (smooth profile): histogram along the dominant
    // segment direction through the samples.
    const double* z0 = field.at(0);
    std::vector<double> dir(d, 0.0);
    double best = -1.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double* z = field.at(i);
        double dist = 0.0;
        for (std::size_t k = 0; k < d; ++k) dist += (z[k] - z0[k]) * (z[k] - z0[k]);
        if (dist > best) {
            best = dist;
            for (std::size_t k = 0; k < d; ++k) dir[k] = z[k] - z0[k];
        }
    }
    double len2 = 0.0;
    for (double v : dir) len2 += v * v;
    if (len2 <= 0.0) len2 = 1.0;
    std::vector<double> t(count);
    double tmin = 0.0, tmax = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double* z = field.at(i);
        double proj = 0.0;
        for (std::size_t k = 0; k < d; ++k) proj += (z[k] - z0[k]) * dir[k];
        t[i] = proj / len2;
        tmin = std::min(tmin, t[i]);
        tmax = std::max(tmax, t[i]);
    }
    constexpr int kBins = 256;
    const double width = tmax > tmin ? tmax - tmin : 1.0;
    std::vector<double> bin_count(kBins, 0.0);
    std::vector<std::vector<double>> bin_sum(kBins, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < count; ++i) {
        int bin = static_cast<int>((t[i] - tmin) / width * kBins);
        bin = std::clamp(bin, 0, kBins - 1);
        bin_count[bin] += 1.0;
        const double* z = field.at(i);
        for (std::size_t k = 0; k < d; ++k) bin_sum[bin][k] += z[k];
    }
    for (int b = 0; b < kBins; ++b) {
        if (bin_count[b] <= 0.0) continue;
        std::vector<double> mean(d);
        for (std::size_t k = 0; k < d; ++k) mean[k] = bin_sum[b][k] / bin_count[b];
        emp.atoms.push_back({bin_count[b] / static_cast<double>(count), std::move(mean)});
    }
    std::sort(emp.atoms.begin(), emp.atoms.end(),
              [](const EmpiricalAtom& x, const EmpiricalAtom& y) { return x.weight > y.weight; });
    return emp;
}

double tv_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b, double match_tol) {
    std::vector<bool> used(b.atoms.size(), false);
    double tv = 0.0;
    for (const EmpiricalAtom& atom : a.atoms) {
        double scale = 1.0;
        for (double v : atom.value) scale = std::max(scale, std::abs(v));
        int best = -1;
        double best_dist = match_tol * scale;
        for (std::size_t j = 0; j < b.atoms.size(); ++j) {
            if (used[j] || b.atoms[j].value.size() != atom.value.size()) continue;
            double dist = 0.0;
            for (std::size_t k = 0; k < atom.value.size(); ++k)
                dist = std::max(dist, std::abs(b.atoms[j].value[k] - atom.value[k]));
            if (dist <= best_dist) {
                best_dist = dist;
                best = static_cast<int>(j);
            }
        }
        if (best >= 0) {
            used[best] = true;
            tv += std::abs(atom.weight - b.atoms[best].weight);
        } else {
            tv += atom.weight;
        }
    }
    for (std::size_t j = 0; j < b.atoms.size(); ++j)
        if (!used[j]) tv += b.atoms[j].weight;
    return 0.5 * tv;
}

double moment_consistency(const SampleField& field, const EmpiricalMeasure& emp) {
    if (field.size() == 0 || emp.atoms.empty())
        throw InvalidData("moment consistency needs a nonempty field and measure");
    const std::size_t d = field.d;
    const std::size_t count = field.size();

    std::vector<std::vector<double>> sample_f(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double* z = field.at(i);
        std::vector<double> f(z, z + d);
        const std::vector<double> flux = flux_nonlinearity(z, d);
        f.insert(f.end(), flux.begin(), flux.end());
        sample_f[i] = std::move(f);
    }
    const std::size_t nf = sample_f[0].size();
    std::vector<double> grid_mean(nf, 0.0);
    for (const std::vector<double>& f : sample_f)
        for (std::size_t k = 0; k < nf; ++k) grid_mean[k] += f[k];
    for (double& v : grid_mean) v /= static_cast<double>(count);

    std::vector<double> emp_mean(nf, 0.0);
    for (const EmpiricalAtom& atom : emp.atoms) {
        std::vector<double> f(atom.value.begin(), atom.value.end());
        const std::vector<double> flux = flux_nonlinearity(atom.value.data(), d);
        f.insert(f.end(), flux.begin(), flux.end());
        for (std::size_t k = 0; k < nf; ++k) emp_mean[k] += atom.weight * f[k];
    }

    double worst = 0.0;
    for (std::size_t k = 0; k < nf; ++k)
        worst = std::max(worst,
                         std::abs(grid_mean[k] - emp_mean[k]) / (1.0 + std::abs(emp_mean[k])));
    return worst;
}

std::vector<Vec3> sphere_grid(int points) {
    if (points < 1) throw InvalidData("sphere grid needs at least one point");
    std::vector<Vec3> out;
    out.reserve(points);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < points; ++k) {
        const double z = 1.0 - (2.0 * k + 1.0) / points;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * k;
        out.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
    return out;
}

DichotomyReport dichotomy_experiment(const ExtendedState& z1, const ExtendedState& z2,
                                     const FirstOrderOperator& op,
                                     const DichotomyOptions& opts) {
    validate(z1);
    validate(z2);
    if (opts.n_list.empty()) throw InvalidData("dichotomy experiment needs frequencies");

    DichotomyReport rep;
    rep.caveat =
        "constant-rank and equi-integrability hypotheses are not checked "
        "(bounded fields are equi-integrable; constant rank is an operator "
        "property outside this experiment)";

    std::vector<double> diff(8);
    double scale = 0.0, dnorm = 0.0;
    for (int k = 0; k < 8; ++k) {
        diff[k] = z2.z[k] - z1.z[k];
        scale = std::max({scale, std::abs(z1.z[k]), std::abs(z2.z[k])});
        dnorm = std::max(dnorm, std::abs(diff[k]));
    }

    if (dnorm <= 1e-14 * (1.0 + scale)) {
        rep.degenerate = true;
        rep.cone = cone_membership(assemble_symbol(op, diff));
        rep.empirical.atoms.push_back({1.0, std::vector<double>(z1.z.begin(), z1.z.end())});
        rep.conclusion = "degenerate single atom; the sequence converges strongly";
        return rep;
    }

    const SymbolMatrix symbol = assemble_symbol(op, diff);
    rep.cone = cone_membership(symbol);
    rep.in_cone = rep.cone.in_cone;

    const std::vector<RigidityBump> dict = default_rigidity_dictionary();
    const int n_max = *std::max_element(opts.n_list.begin(), opts.n_list.end());

    EmpiricalMeasure target;
    target.atoms.push_back({1.0 - opts.duty, std::vector<double>(z1.z.begin(), z1.z.end())});
    target.atoms.push_back({opts.duty, std::vector<double>(z2.z.begin(), z2.z.end())});

    PlaneWaveSequence seq;
    seq.base.assign(z1.z.begin(), z1.z.end());
    seq.amplitude = diff;
    seq.profile = opts.profile;
    seq.duty = opts.duty;

    Vec3 sample_dir = opts.sampling_direction;
    {
        const double n0 = std::sqrt(sample_dir[0] * sample_dir[0] +
                                    sample_dir[1] * sample_dir[1] +
                                    sample_dir[2] * sample_dir[2]);
        if (!(n0 > 0.0)) throw InvalidData("sampling direction must be nonzero");
        for (double& v : sample_dir) v /= n0;
    }

    if (rep.in_cone && rep.cone.kernel_direction) {
        seq.direction = visible_kernel_direction(symbol, rep.cone);
        for (int n : opts.n_list) {
            seq.frequency = n;
            DichotomyPoint pt;
            pt.n = n;
            pt.residual_estimate = constraint_residual(seq, op, dict, opts.r).value;
            const SampleField field = sample_sequence(seq, opts.grid);
            pt.tv_to_target = tv_distance(young_estimate(field), target);
            rep.curve.push_back(pt);
        }
        seq.frequency = n_max;
        const SampleField field = sample_sequence(seq, opts.grid);
        rep.empirical = young_estimate(field);
        rep.moment_worst_rel_error = moment_consistency(field, rep.empirical);
        rep.conclusion =
            "two-atom measure generated by an explicit constraint-compatible oscillation";
    } else {
        const std::vector<Vec3> directions = sphere_grid(opts.sphere_points);
        for (int n : opts.n_list) {
            DichotomyPoint pt;
            pt.n = n;
            pt.residual_estimate = std::numeric_limits<double>::infinity();
            for (const Vec3& xi : directions) {
                seq.direction = xi;
                seq.frequency = n;
                const double est = constraint_residual(seq, op, dict, opts.r).value;
                pt.residual_estimate = std::min(pt.residual_estimate, est);
            }
            seq.direction = sample_dir;
            seq.frequency = n;
            const SampleField field = sample_sequence(seq, opts.grid);
            pt.tv_to_target = tv_distance(young_estimate(field), target);
            rep.curve.push_back(pt);
        }
        seq.direction = sample_dir;
        seq.frequency = n_max;
        const SampleField field = sample_sequence(seq, opts.grid);
        rep.empirical = young_estimate(field);
        rep.moment_worst_rel_error = moment_consistency(field, rep.empirical);
        rep.conclusion = "two-atom measure not generable by this family";
    }

    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const DichotomyPoint& pt : rep.curve) {
        lo = std::min(lo, pt.residual_estimate);
        hi = std::max(hi, pt.residual_estimate);
    }
    rep.positive_floor = lo;
    rep.floor_spread = hi > 0.0 ? (hi - lo) / hi : 0.0;
    return rep;
}

} // namespace mvsol
