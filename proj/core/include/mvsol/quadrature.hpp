#pragma once

#include "mvsol/common.hpp"

#include <functional>
#include <vector>

namespace mvsol {

// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
// on the Legendre polynomial and cached per order.
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

const GaussRule& gauss_legendre(int order);

// Smooth radial bump eta(s) = exp(1 - 1/(1 - s)) for s < 1, else 0, where
// s is the squared relative distance |y - c|^2 / R^2.
double bump(double s);
double bump_derivative(double s);

// x2-marginal of the 3-D bump: psi(t, x1) = R * bump_marginal(w) with
// w = ((t - c_t)^2 + (x1 - c_1)^2) / R^2. bump_marginal(w) =
// 2 int_0^sqrt(1-w) eta(w + tau^2) dtau; derivative taken in w.
double bump_marginal(double w);
double bump_marginal_derivative(double w);

// int_0^1 s |eta'(s)| ds, so that int_{R^3} |grad phi| = 4 pi R^2 times this.
double bump_grad_l1_constant();

double integrate_segment(const std::function<double(double)>& f, double a, double b,
                         int cells, int order);

// Convex polygon in the (t, x1) plane, counter-clockwise or clockwise.
using Polygon = std::vector<std::array<double, 2>>;

// Splits a convex polygon by the line n . y = c into the n.y <= c part and
// the n.y >= c part (either may come back empty).
void split_polygon(const Polygon& poly, const std::array<double, 2>& n, double c,
                   Polygon& below, Polygon& above);

double polygon_area(const Polygon& poly);

// Tensor Gauss-Legendre of the given order over a convex polygon via fan
// triangulation and the collapsed-square (Duffy) map.
double integrate_polygon(const std::function<double(double, double)>& f,
                         const Polygon& poly, int order);

// Two integrands sharing the same evaluation points (one pass over the rule).
Vec2 integrate_polygon2(const std::function<Vec2(double, double)>& f, const Polygon& poly,
                        int order);

} // namespace mvsol
