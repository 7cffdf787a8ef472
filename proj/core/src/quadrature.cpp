#include "mvsol/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace mvsol {

namespace {

GaussRule compute_gauss_legendre(int order) {
    GaussRule rule;
    rule.x.resize(order);
    rule.w.resize(order);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                break;
            }
        }
        rule.x[i] = -x;
        rule.x[order - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.w[i] = w;
        rule.w[order - 1 - i] = w;
    }
    return rule;
}

} // namespace

const GaussRule& gauss_legendre(int order) {
    if (order < 1) {
        throw InvalidData("gauss_legendre: order must be >= 1");
    }
    static std::map<int, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) {
        it = cache.emplace(order, compute_gauss_legendre(order)).first;
    }
    return it->second;
}

double bump(double s) {
    if (s >= 1.0) {
        return 0.0;
    }
    return std::exp(1.0 - 1.0 / (1.0 - s));
}

double bump_derivative(double s) {
    if (s >= 1.0) {
        return 0.0;
    }
    const double inv = 1.0 / (1.0 - s);
    return -std::exp(1.0 - inv) * inv * inv;
}

namespace {

// Composite Gauss quadrature of g(w + tau^2) over tau in [0, sqrt(1 - w)],
// doubled for the symmetric half. The integrand is flat but not analytic at
// the right endpoint, so a single panel stalls near 1e-7; eight panels of
// order 16 reach ~1e-13.
template <typename G>
double marginal_quadrature(double w, G&& g) {
    const GaussRule& rule = gauss_legendre(16);
    constexpr int cells = 8;
    const double half = std::sqrt(1.0 - w);
    const double h = half / cells;
    double acc = 0.0;
    for (int c = 0; c < cells; ++c) {
        const double a = c * h;
        for (size_t i = 0; i < rule.x.size(); ++i) {
            const double tau = a + 0.5 * h * (rule.x[i] + 1.0);
            acc += rule.w[i] * g(w + tau * tau);
        }
    }
    return acc * h; // 2 * (h/2) * sum
}

} // namespace

double bump_marginal(double w) {
    if (w >= 1.0) {
        return 0.0;
    }
    return marginal_quadrature(w, [](double s) { return bump(s); });
}

double bump_marginal_derivative(double w) {
    if (w >= 1.0) {
        return 0.0;
    }
    return marginal_quadrature(w, [](double s) { return bump_derivative(s); });
}

double bump_grad_l1_constant() {
    static const double value = [] {
        const GaussRule& rule = gauss_legendre(64);
        double acc = 0.0;
        for (size_t i = 0; i < rule.x.size(); ++i) {
            const double s = 0.5 * (rule.x[i] + 1.0);
            acc += rule.w[i] * s * std::abs(bump_derivative(s));
        }
        return 0.5 * acc;
    }();
    return value;
}

double integrate_segment(const std::function<double(double)>& f, double a, double b,
                         int cells, int order) {
    if (!(b > a)) {
        return 0.0;
    }
    const GaussRule& rule = gauss_legendre(order);
    const double h = (b - a) / cells;
    double acc = 0.0;
    for (int c = 0; c < cells; ++c) {
        const double lo = a + c * h;
        for (size_t i = 0; i < rule.x.size(); ++i) {
            const double x = lo + 0.5 * h * (rule.x[i] + 1.0);
            acc += 0.5 * h * rule.w[i] * f(x);
        }
    }
    return acc;
}

void split_polygon(const Polygon& poly, const std::array<double, 2>& n, double c,
                   Polygon& below, Polygon& above) {
    below.clear();
    above.clear();
    const size_t m = poly.size();
    if (m == 0) {
        return;
    }
    for (size_t i = 0; i < m; ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % m];
        const double dp = n[0] * p[0] + n[1] * p[1] - c;
        const double dq = n[0] * q[0] + n[1] * q[1] - c;
        if (dp <= 0.0) {
            below.push_back(p);
        }
        if (dp >= 0.0) {
            above.push_back(p);
        }
        if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) {
            const double t = dp / (dp - dq);
            const std::array<double, 2> hit{p[0] + t * (q[0] - p[0]),
                                            p[1] + t * (q[1] - p[1])};
            below.push_back(hit);
            above.push_back(hit);
        }
    }
    if (below.size() < 3) {
        below.clear();
    }
    if (above.size() < 3) {
        above.clear();
    }
}

double polygon_area(const Polygon& poly) {
    double acc = 0.0;
    const size_t m = poly.size();
    for (size_t i = 0; i < m; ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % m];
        acc += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * std::abs(acc);
}

namespace {

double integrate_triangle(const std::function<double(double, double)>& f,
                          const std::array<double, 2>& a, const std::array<double, 2>& b,
                          const std::array<double, 2>& c, int order) {
    const GaussRule& rule = gauss_legendre(order);
    const double jac2 =
        std::abs((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
    double acc = 0.0;
    for (size_t i = 0; i < rule.x.size(); ++i) {
        const double u = 0.5 * (rule.x[i] + 1.0);
        for (size_t j = 0; j < rule.x.size(); ++j) {
            const double v = 0.5 * (rule.x[j] + 1.0);
            // Duffy map: (u, v) -> barycentric (1-u, u(1-v), uv), Jacobian u.
            const double l1 = u * (1.0 - v);
            const double l2 = u * v;
            const double x = a[0] + l1 * (b[0] - a[0]) + l2 * (c[0] - a[0]);
            const double y = a[1] + l1 * (b[1] - a[1]) + l2 * (c[1] - a[1]);
            acc += 0.25 * rule.w[i] * rule.w[j] * u * f(x, y);
        }
    }
    return acc * jac2;
}

Vec2 integrate_triangle2(const std::function<Vec2(double, double)>& f,
                         const std::array<double, 2>& a, const std::array<double, 2>& b,
                         const std::array<double, 2>& c, int order) {
    const GaussRule& rule = gauss_legendre(order);
    const double jac2 =
        std::abs((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
    Vec2 acc{0.0, 0.0};
    for (size_t i = 0; i < rule.x.size(); ++i) {
        const double u = 0.5 * (rule.x[i] + 1.0);
        for (size_t j = 0; j < rule.x.size(); ++j) {
            const double v = 0.5 * (rule.x[j] + 1.0);
            const double l1 = u * (1.0 - v);
            const double l2 = u * v;
            const double x = a[0] + l1 * (b[0] - a[0]) + l2 * (c[0] - a[0]);
            const double y = a[1] + l1 * (b[1] - a[1]) + l2 * (c[1] - a[1]);
            const double wq = 0.25 * rule.w[i] * rule.w[j] * u;
            const Vec2 fv = f(x, y);
            acc[0] += wq * fv[0];
            acc[1] += wq * fv[1];
        }
    }
    acc[0] *= jac2;
    acc[1] *= jac2;
    return acc;
}

} // namespace

double integrate_polygon(const std::function<double(double, double)>& f,
                         const Polygon& poly, int order) {
    if (poly.size() < 3) {
        return 0.0;
    }
    double acc = 0.0;
    for (size_t i = 1; i + 1 < poly.size(); ++i) {
        acc += integrate_triangle(f, poly[0], poly[i], poly[i + 1], order);
    }
    return acc;
}

Vec2 integrate_polygon2(const std::function<Vec2(double, double)>& f, const Polygon& poly,
                        int order) {
    Vec2 acc{0.0, 0.0};
    if (poly.size() < 3) {
        return acc;
    }
    for (size_t i = 1; i + 1 < poly.size(); ++i) {
        const Vec2 part = integrate_triangle2(f, poly[0], poly[i], poly[i + 1], order);
        acc[0] += part[0];
        acc[1] += part[1];
    }
    return acc;
}

} // namespace mvsol
