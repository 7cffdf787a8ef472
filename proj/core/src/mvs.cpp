#include "mvsol/mvs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace mvsol {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double psi_value(const TestFunction& phi, double t, double x1) {
    const double dt = t - phi.center_t;
    const double dx = x1 - phi.center_x1;
    const double w = (dt * dt + dx * dx) / (phi.radius * phi.radius);
    return phi.radius * bump_marginal(w);
}

// Gradient of the x2-marginal psi(t, x1) = R * marg(w).
void psi_gradient(const TestFunction& phi, double t, double x1, double& dpsi_dt,
                  double& dpsi_dx1) {
    const double dt = t - phi.center_t;
    const double dx = x1 - phi.center_x1;
    const double w = (dt * dt + dx * dx) / (phi.radius * phi.radius);
    const double dm = bump_marginal_derivative(w);
    dpsi_dt = dm * 2.0 * dt / phi.radius;
    dpsi_dx1 = dm * 2.0 * dx / phi.radius;
}

double dist2_point_segment(double px, double py, const std::array<double, 2>& a,
                           const std::array<double, 2>& b) {
    const double vx = b[0] - a[0], vy = b[1] - a[1];
    const double wx = px - a[0], wy = py - a[1];
    const double vv = vx * vx + vy * vy;
    double s = vv > 0.0 ? (wx * vx + wy * vy) / vv : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    const double dx = wx - s * vx, dy = wy - s * vy;
    return dx * dx + dy * dy;
}

bool polygon_meets_disk(const Polygon& poly, double ct, double cx, double r) {
    if (poly.size() < 3) return false;
    // Center inside the convex polygon, or boundary within distance r.
    bool inside = true;
    int sign = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % poly.size()];
        const double cross = (b[0] - a[0]) * (cx - a[1]) - (b[1] - a[1]) * (ct - a[0]);
        if (std::abs(cross) > 0.0) {
            const int s = cross > 0.0 ? 1 : -1;
            if (sign == 0) sign = s;
            else if (s != sign) inside = false;
        }
        if (dist2_point_segment(ct, cx, a, b) <= r * r) return true;
    }
    return inside;
}

// Index of the wedge containing the given slope (ties go left).
std::size_t region_index_at(const AtomicYoungMeasure& nu, double slope) {
    for (std::size_t i = 0; i + 1 < nu.regions.size(); ++i) {
        if (slope <= nu.regions[i].sigma_right) return i;
    }
    return nu.regions.size() - 1;
}

// Per-equation coefficients of the x2-reduced weak form: the residual is
// sum over wedges of int (A_j dpsi_dt + B_j dpsi_dx1) plus the initial term
// int A_j psi(0, .). Momentum rows are taken against the vector tests
// (w1, w2) phi and (-w2, w1) phi.
struct RegionCoef {
    Vec4 A{};
    Vec4 B{};
};

std::vector<RegionCoef> weak_coefficients(const MomentFields& mom, const Vec2& wgt) {
    std::vector<RegionCoef> out(mom.regions.size());
    for (std::size_t i = 0; i < mom.regions.size(); ++i) {
        const RegionMoments& m = mom.regions[i];
        RegionCoef c;
        c.A = {m.q[0], wgt[0] * m.q[1] + wgt[1] * m.q[2],
               -wgt[1] * m.q[1] + wgt[0] * m.q[2], m.q[3]};
        c.B = {m.q[1], wgt[0] * m.T11 + wgt[1] * m.T12,
               -wgt[1] * m.T11 + wgt[0] * m.T12, m.r[0]};
        out[i] = c;
    }
    return out;
}

struct LevelResult {
    Vec4 value{};
    bool touches_unresolved = false;
    bool touches_macroscopic = false;
};

LevelResult weak_level(const AtomicYoungMeasure& nu, const std::vector<RegionCoef>& coef,
                       const TestFunction& phi, int cells, int order) {
    LevelResult res;
    const double R = phi.radius;
    const double t_lo = std::max(0.0, phi.center_t - R);
    const double t_hi = phi.center_t + R;
    if (t_hi <= t_lo) return res;
    const double x_lo = phi.center_x1 - R;
    const double x_hi = phi.center_x1 + R;
    const double ht = (t_hi - t_lo) / cells;
    const double hx = (x_hi - x_lo) / cells;

    std::vector<double> cuts;
    for (std::size_t i = 0; i + 1 < nu.regions.size(); ++i)
        cuts.push_back(nu.regions[i].sigma_right);

    Polygon below, above;
    for (int it = 0; it < cells; ++it) {
        const double a = t_lo + it * ht, b = a + ht;
        for (int ix = 0; ix < cells; ++ix) {
            const double c = x_lo + ix * hx, d = c + hx;
            // Quick reject: cell entirely outside the support disk.
            const double ddt = std::max({a - phi.center_t, phi.center_t - b, 0.0});
            const double ddx = std::max({c - phi.center_x1, phi.center_x1 - d, 0.0});
            if (ddt * ddt + ddx * ddx >= R * R) continue;

            std::vector<Polygon> pieces{Polygon{{a, c}, {b, c}, {b, d}, {a, d}}};
            for (double s : cuts) {
                std::vector<Polygon> next;
                for (const Polygon& p : pieces) {
                    split_polygon(p, {-s, 1.0}, 0.0, below, above);
                    if (below.size() >= 3) next.push_back(below);
                    if (above.size() >= 3) next.push_back(above);
                }
                pieces.swap(next);
            }
            for (const Polygon& p : pieces) {
                double pt = 0.0, px = 0.0;
                for (const auto& v : p) {
                    pt += v[0];
                    px += v[1];
                }
                pt /= static_cast<double>(p.size());
                px /= static_cast<double>(p.size());
                if (pt <= 0.0) continue; // zero-area sliver on the t = 0 edge
                const std::size_t ri = region_index_at(nu, px / pt);
                const RegionStatus st = nu.regions[ri].status;
                if (st != RegionStatus::Resolved &&
                    polygon_meets_disk(p, phi.center_t, phi.center_x1, R)) {
                    if (st == RegionStatus::Unresolved) res.touches_unresolved = true;
                    else res.touches_macroscopic = true;
                }
                if (st == RegionStatus::Unresolved) continue; // no moments there
                // Coefficients are constant on each piece, so only the two
                // basis integrals int dpsi_dt and int dpsi_dx1 are needed.
                const Vec2 basis = integrate_polygon2(
                    [&](double t, double x1) {
                        double dpt, dpx;
                        psi_gradient(phi, t, x1, dpt, dpx);
                        return Vec2{dpt, dpx};
                    },
                    p, order);
                const RegionCoef& rc = coef[ri];
                for (int j = 0; j < 4; ++j)
                    res.value[j] += rc.A[j] * basis[0] + rc.B[j] * basis[1];
            }
        }
    }

    // Initial-data term int A_j psi(0, x1) dx1 over the trace of the support.
    if (phi.center_t - R < 0.0) {
        const double span2 = R * R - phi.center_t * phi.center_t;
        if (span2 > 0.0) {
            const double half = std::sqrt(span2);
            const double lo = phi.center_x1 - half, hi = phi.center_x1 + half;
            // At t = 0+ the fan trace is the front state for x1 < 0 and the
            // back state for x1 > 0.
            const auto add_piece = [&](double u, double v, std::size_t ri) {
                if (v <= u) return;
                if (nu.regions[ri].status == RegionStatus::Unresolved) {
                    res.touches_unresolved = true;
                    return;
                }
                if (nu.regions[ri].status == RegionStatus::MacroscopicApprox)
                    res.touches_macroscopic = true;
                const double it0 = integrate_segment(
                    [&](double x1) { return psi_value(phi, 0.0, x1); }, u, v, cells, order);
                for (int j = 0; j < 4; ++j) res.value[j] += coef[ri].A[j] * it0;
            };
            add_piece(lo, std::min(hi, 0.0), 0);
            add_piece(std::max(lo, 0.0), hi, nu.regions.size() - 1);
        }
    }
    return res;
}

Vec4 interface_flux(const RegionMoments& m) {
    return {m.q[1], m.T11, m.T12, m.r[0]};
}

} // namespace

void validate(const TestFunction& phi, double T) {
    if (!(phi.radius > 0.0) || !std::isfinite(phi.radius))
        throw InvalidData("test function radius must be positive and finite");
    if (!std::isfinite(phi.center_t) || !std::isfinite(phi.center_x1) ||
        !std::isfinite(phi.center_x2))
        throw InvalidData("test function center must be finite");
    const double wn = std::hypot(phi.momentum_weight[0], phi.momentum_weight[1]);
    if (!(wn > 0.0) || !std::isfinite(wn))
        throw InvalidData("momentum weight must be a nonzero finite vector");
    if (!(phi.center_t + phi.radius < T))
        throw InvalidData("test function support must stay below the time horizon");
}

MomentFields moments(const AtomicYoungMeasure& nu) {
    validate(nu);
    MomentFields out;
    out.regions.reserve(nu.regions.size());
    for (const MeasureRegion& reg : nu.regions) {
        RegionMoments m;
        m.sigma_left = reg.sigma_left;
        m.sigma_right = reg.sigma_right;
        m.status = reg.status;
        if (reg.status != RegionStatus::Unresolved) {
            for (const Atom& at : reg.atoms) {
                const Vec8& z = at.state.z;
                if (!(z[0] > kPositivityFloor))
                    throw VacuumAtom("atom with vanishing density in measure region");
                const double w = at.weight;
                m.q[0] += w * z[0];
                m.q[1] += w * z[1];
                m.q[2] += w * z[2];
                m.q[3] += w * z[5];
                m.T11 += w * (z[3] + z[5]);
                m.T12 += w * z[4];
                m.T22 += w * (-z[3] + z[5]);
                m.r[0] += w * z[6];
                m.r[1] += w * z[7];
            }
        }
        out.regions.push_back(m);
    }
    return out;
}

WeakResidualReport weak_residual_quadrature(const AtomicYoungMeasure& nu,
                                            const TestFunction& phi,
                                            const QuadraturePolicy& q) {
    validate(phi, q.T);
    const MomentFields mom = moments(nu);
    const std::vector<RegionCoef> coef = weak_coefficients(mom, phi.momentum_weight);

    double coef_mag = 1.0;
    for (const RegionCoef& c : coef)
        for (int j = 0; j < 4; ++j)
            coef_mag = std::max({coef_mag, std::abs(c.A[j]), std::abs(c.B[j])});

    const double norm_grad = 4.0 * std::numbers::pi * phi.radius * phi.radius *
                             bump_grad_l1_constant();

    const LevelResult l1 = weak_level(nu, coef, phi, q.cells_per_axis, q.order);
    const LevelResult l2 = weak_level(nu, coef, phi, 2 * q.cells_per_axis, q.order);
    const LevelResult l3 = weak_level(nu, coef, phi, 4 * q.cells_per_axis, q.order);

    const double floor_est = 1e-13 * coef_mag * norm_grad;
    WeakResidualReport rep;
    rep.norm_grad = norm_grad;
    rep.touches_unresolved = l3.touches_unresolved;
    rep.touches_macroscopic = l3.touches_macroscopic;
    EquationResidual* rows[4] = {&rep.mass, &rep.momentum1, &rep.momentum2, &rep.energy};
    const double wn = std::hypot(phi.momentum_weight[0], phi.momentum_weight[1]);
    for (int j = 0; j < 4; ++j) {
        const double step12 = std::abs(l2.value[j] - l1.value[j]);
        const double step23 = std::abs(l3.value[j] - l2.value[j]);
        if (step23 > 10.0 * step12 + 10.0 * floor_est)
            throw QuadratureNotConverged("weak-form quadrature failed to converge");
        rows[j]->value = l3.value[j];
        rows[j]->estimate = std::max(step23, floor_est);
        const double denom = (j == 1 || j == 2) ? norm_grad * wn : norm_grad;
        rows[j]->normalized = l3.value[j] / denom;
        rep.worst_normalized = std::max(rep.worst_normalized, std::abs(rows[j]->normalized));
    }
    return rep;
}

std::vector<InterfaceResidual> interface_residual_exact(const AtomicYoungMeasure& nu) {
    const MomentFields mom = moments(nu);
    std::vector<InterfaceResidual> out;
    for (std::size_t i = 0; i + 1 < mom.regions.size(); ++i) {
        const RegionMoments& L = mom.regions[i];
        const RegionMoments& Rg = mom.regions[i + 1];
        InterfaceResidual ir;
        ir.sigma = L.sigma_right;
        if (L.status == RegionStatus::Unresolved || Rg.status == RegionStatus::Unresolved) {
            ir.cls = InterfaceClass::Unverified;
            out.push_back(ir);
            continue;
        }
        ir.cls = (L.status == RegionStatus::Resolved && Rg.status == RegionStatus::Resolved)
                     ? InterfaceClass::Verifiable
                     : InterfaceClass::Approximate;
        const Vec4 fl = interface_flux(L);
        const Vec4 fr = interface_flux(Rg);
        for (int c = 0; c < 4; ++c) {
            ir.jump[c] = ir.sigma * (Rg.q[c] - L.q[c]) - (fr[c] - fl[c]);
            const double scale = 1.0 + std::max(std::abs(fl[c]), std::abs(fr[c]));
            ir.normalized[c] = ir.jump[c] / scale;
        }
        out.push_back(ir);
    }
    return out;
}

double line_integral(const TestFunction& phi, double sigma, const QuadraturePolicy& q) {
    // psi(t, sigma t) is supported where (1 + sigma^2) t^2 - 2 (c_t + sigma
    // c_1) t + (c_t^2 + c_1^2 - R^2) <= 0.
    const double A = 1.0 + sigma * sigma;
    const double B = phi.center_t + sigma * phi.center_x1;
    const double C = phi.center_t * phi.center_t + phi.center_x1 * phi.center_x1 -
                     phi.radius * phi.radius;
    const double disc = B * B - A * C;
    if (disc <= 0.0) return 0.0;
    const double root = std::sqrt(disc);
    const double lo = std::max(0.0, (B - root) / A);
    const double hi = std::min(q.T, (B + root) / A);
    if (hi <= lo) return 0.0;
    return integrate_segment([&](double t) { return psi_value(phi, t, sigma * t); }, lo, hi,
                             2 * q.cells_per_axis, q.order);
}

VerifyReport verify(const AtomicYoungMeasure& nu, const std::vector<TestFunction>& dictionary,
                    double tol, const QuadraturePolicy& q) {
    if (dictionary.empty())
        throw InvalidData("verification dictionary must contain at least one test function");
    if (!(tol > 0.0) || !std::isfinite(tol)) throw InvalidData("tolerance must be positive");

    VerifyReport rep;
    rep.tol = tol;
    rep.interfaces = interface_residual_exact(nu);
    for (const InterfaceResidual& ir : rep.interfaces) {
        if (ir.cls != InterfaceClass::Verifiable) continue;
        for (int c = 0; c < 4; ++c)
            rep.worst_interface = std::max(rep.worst_interface, std::abs(ir.normalized[c]));
    }

    bool cross_ok = true;
    for (const TestFunction& phi : dictionary) {
        WeakResidualReport w = weak_residual_quadrature(nu, phi, q);
        if (w.touches_unresolved || w.touches_macroscopic) {
            ++rep.skipped_phis;
            rep.per_phi.push_back(w);
            continue;
        }
        ++rep.checked_phis;
        rep.worst_quadrature = std::max(rep.worst_quadrature, w.worst_normalized);

        // Exact-reduction cross-check: the raw weak integral must equal the
        // sum of interface jumps times line integrals, within the estimate.
        Vec4 predicted{};
        for (const InterfaceResidual& ir : rep.interfaces) {
            const double li = line_integral(phi, ir.sigma, q);
            const double w1 = phi.momentum_weight[0], w2 = phi.momentum_weight[1];
            predicted[0] += ir.jump[0] * li;
            predicted[1] += (w1 * ir.jump[1] + w2 * ir.jump[2]) * li;
            predicted[2] += (-w2 * ir.jump[1] + w1 * ir.jump[2]) * li;
            predicted[3] += ir.jump[3] * li;
        }
        const EquationResidual* rows[4] = {&w.mass, &w.momentum1, &w.momentum2, &w.energy};
        for (int j = 0; j < 4; ++j) {
            const double d = std::abs(rows[j]->value - predicted[j]);
            rep.worst_cross_discrepancy = std::max(rep.worst_cross_discrepancy, d);
            if (d > std::max(rows[j]->estimate, 1e-12 * w.norm_grad)) cross_ok = false;
        }
        rep.per_phi.push_back(w);
    }

    rep.passed = rep.worst_interface <= tol && rep.worst_quadrature <= tol && cross_ok;
    return rep;
}

std::vector<TestFunction> default_dictionary(const AtomicYoungMeasure& nu, double T) {
    validate(nu);
    double lo = 0.0, hi = 0.0;
    if (nu.regions.size() > 1) {
        lo = nu.regions.front().sigma_right * T;
        hi = nu.regions[nu.regions.size() - 2].sigma_right * T;
    }
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    std::vector<TestFunction> dict;
    for (double scale : {0.1, 0.3, 1.0}) {
        const double R = scale * T;
        const double t_first = -0.4 * R; // straddles t = 0
        const double t_last = T - 1.02 * R;
        const int nt = t_last > t_first ? 5 : 1;
        for (int it = 0; it < nt; ++it) {
            const double ct =
                nt == 1 ? t_first : t_first + (t_last - t_first) * it / (nt - 1);
            for (int ix = 0; ix < 5; ++ix) {
                const double cx = lo + (hi - lo) * ix / 4.0;
                TestFunction phi;
                phi.center_t = ct;
                phi.center_x1 = cx;
                phi.center_x2 = 0.0;
                phi.radius = R;
                dict.push_back(phi);
            }
        }
    }
    return dict;
}

AtomicYoungMeasure lambda_combination(const AtomicYoungMeasure& nu,
                                      const AtomicYoungMeasure& mu, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw InvalidData("combination weight must lie in [0, 1]");
    validate(nu);
    validate(mu);

    std::vector<double> cuts;
    for (std::size_t i = 0; i + 1 < nu.regions.size(); ++i)
        cuts.push_back(nu.regions[i].sigma_right);
    for (std::size_t i = 0; i + 1 < mu.regions.size(); ++i)
        cuts.push_back(mu.regions[i].sigma_right);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const auto probe = [&](std::size_t i) {
        if (cuts.empty()) return 0.0;
        if (i == 0) return cuts.front() - 1.0;
        if (i == cuts.size()) return cuts.back() + 1.0;
        return 0.5 * (cuts[i - 1] + cuts[i]);
    };
    const auto same_atom = [](const ExtendedState& a, const ExtendedState& b) {
        for (int k = 0; k < 8; ++k) {
            const double scale = 1.0 + std::max(std::abs(a.z[k]), std::abs(b.z[k]));
            if (std::abs(a.z[k] - b.z[k]) > 1e-12 * scale) return false;
        }
        return true;
    };

    AtomicYoungMeasure out;
    out.label = "combination";
    for (std::size_t i = 0; i <= cuts.size(); ++i) {
        const double s = probe(i);
        const MeasureRegion& ra = nu.regions[region_index_at(nu, s)];
        const MeasureRegion& rb = mu.regions[region_index_at(mu, s)];
        MeasureRegion reg;
        reg.sigma_left = i == 0 ? -kInf : cuts[i - 1];
        reg.sigma_right = i == cuts.size() ? kInf : cuts[i];
        if (ra.status == RegionStatus::Unresolved || rb.status == RegionStatus::Unresolved) {
            reg.status = RegionStatus::Unresolved;
            reg.note = "combination over an unresolved region";
        } else {
            if (ra.status == RegionStatus::MacroscopicApprox ||
                rb.status == RegionStatus::MacroscopicApprox) {
                reg.status = RegionStatus::MacroscopicApprox;
                reg.note = "combination over a macroscopic approximation";
            }
            for (const Atom& at : ra.atoms) {
                if (lambda > 0.0) reg.atoms.push_back({lambda * at.weight, at.state});
            }
            for (const Atom& at : rb.atoms) {
                const double w = (1.0 - lambda) * at.weight;
                if (w <= 0.0) continue;
                bool merged = false;
                for (Atom& ex : reg.atoms) {
                    if (same_atom(ex.state, at.state)) {
                        ex.weight += w;
                        merged = true;
                        break;
                    }
                }
                if (!merged) reg.atoms.push_back({w, at.state});
            }
        }
        out.regions.push_back(reg);
    }
    validate(out);
    return out;
}

} // namespace mvsol
