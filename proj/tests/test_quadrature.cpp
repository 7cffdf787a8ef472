#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mvsol/quadrature.hpp"

#include <cmath>

using namespace mvsol;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
    for (int order : {2, 4, 8, 16}) {
        const GaussRule& rule = gauss_legendre(order);
        REQUIRE(static_cast<int>(rule.x.size()) == order);
        for (int deg = 0; deg <= 2 * order - 1; ++deg) {
            double acc = 0.0;
            for (std::size_t i = 0; i < rule.x.size(); ++i)
                acc += rule.w[i] * std::pow(rule.x[i], deg);
            const double exact = (deg % 2 == 0) ? 2.0 / (deg + 1) : 0.0;
            CHECK(std::abs(acc - exact) < 1e-13);
        }
    }
}

TEST_CASE("rule weights sum to the interval length") {
    for (int order : {1, 3, 7, 24}) {
        const GaussRule& rule = gauss_legendre(order);
        double total = 0.0;
        for (double w : rule.w) total += w;
        CHECK(total == doctest::Approx(2.0).epsilon(1e-14));
    }
}

TEST_CASE("segment integration") {
    const double cubic = integrate_segment([](double x) { return x * x * x; }, 0.0, 1.0, 4, 8);
    CHECK(cubic == doctest::Approx(0.25).epsilon(1e-14));
    const double expo = integrate_segment([](double x) { return std::exp(x); }, -1.0, 2.0, 8, 8);
    CHECK(expo == doctest::Approx(std::exp(2.0) - std::exp(-1.0)).epsilon(1e-13));
}

TEST_CASE("bump profile") {
    CHECK(bump(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bump(1.0) == 0.0);
    CHECK(bump(1.5) == 0.0);
    CHECK(bump(0.999999) < 1e-100); // decays to zero smoothly at s = 1
    // Derivative against central differences away from the endpoint.
    for (double s : {0.1, 0.3, 0.5, 0.7}) {
        const double h = 1e-6;
        const double fd = (bump(s + h) - bump(s - h)) / (2.0 * h);
        CHECK(bump_derivative(s) == doctest::Approx(fd).epsilon(1e-7));
    }
    CHECK(bump_derivative(1.2) == 0.0);
}

TEST_CASE("bump marginal matches a direct quadrature") {
    // marginal(w) = 2 int_0^sqrt(1-w) eta(w + tau^2) dtau.
    for (double w : {0.0, 0.2, 0.5, 0.8}) {
        const double direct = integrate_segment(
            [w](double tau) { return 2.0 * bump(w + tau * tau); }, 0.0, std::sqrt(1.0 - w),
            32, 16);
        CHECK(bump_marginal(w) == doctest::Approx(direct).epsilon(1e-11));
    }
    CHECK(bump_marginal(1.0) == 0.0);
    CHECK(bump_marginal(2.0) == 0.0);
}

TEST_CASE("bump marginal derivative matches finite differences") {
    for (double w : {0.1, 0.35, 0.6, 0.85}) {
        const double h = 1e-6;
        const double fd = (bump_marginal(w + h) - bump_marginal(w - h)) / (2.0 * h);
        CHECK(bump_marginal_derivative(w) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("gradient L1 constant reduces to the bump integral") {
    // eta' <= 0 on [0, 1], so int_0^1 s |eta'(s)| ds = int_0^1 eta(s) ds by
    // parts (the boundary terms vanish).
    const double reference =
        integrate_segment([](double s) { return bump(s); }, 0.0, 1.0, 64, 12);
    CHECK(bump_grad_l1_constant() == doctest::Approx(reference).epsilon(1e-10));
}

TEST_CASE("polygon area") {
    const Polygon square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(polygon_area(square) == doctest::Approx(1.0).epsilon(1e-15));
    const Polygon tri{{0, 0}, {2, 0}, {0, 3}};
    CHECK(polygon_area(tri) == doctest::Approx(3.0).epsilon(1e-15));
    // Orientation does not matter.
    const Polygon cw{{0, 1}, {1, 1}, {1, 0}, {0, 0}};
    CHECK(polygon_area(cw) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("polygon split covers both sides and preserves area") {
    const Polygon square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    Polygon below, above;
    // Split by x + y = 1 (normal (1,1)).
    split_polygon(square, {1.0, 1.0}, 1.0, below, above);
    REQUIRE(below.size() >= 3);
    REQUIRE(above.size() >= 3);
    CHECK(polygon_area(below) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(polygon_area(above) == doctest::Approx(0.5).epsilon(1e-14));
    for (const auto& p : below) CHECK(p[0] + p[1] <= 1.0 + 1e-12);
    for (const auto& p : above) CHECK(p[0] + p[1] >= 1.0 - 1e-12);

    // A line that misses the polygon leaves one side empty.
    split_polygon(square, {1.0, 0.0}, 5.0, below, above);
    CHECK(above.empty());
    CHECK(polygon_area(below) == doctest::Approx(1.0).epsilon(1e-14));
    split_polygon(square, {1.0, 0.0}, -5.0, below, above);
    CHECK(below.empty());
    CHECK(polygon_area(above) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("repeated splits partition the area") {
    const Polygon square{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
    Polygon below, above;
    split_polygon(square, {-0.3, 1.0}, 0.0, below, above); // x1 = 0.3 t line
    const double total = polygon_area(below) + polygon_area(above);
    CHECK(total == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("polygon quadrature is exact on low-degree polynomials") {
    const Polygon square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(integrate_polygon([](double, double) { return 1.0; }, square, 4) ==
          doctest::Approx(1.0).epsilon(1e-13));
    CHECK(integrate_polygon([](double x, double y) { return x * y; }, square, 6) ==
          doctest::Approx(0.25).epsilon(1e-13));
    const Polygon tri{{0, 0}, {1, 0}, {0, 1}};
    CHECK(integrate_polygon([](double x, double) { return x; }, tri, 6) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(integrate_polygon([](double x, double y) { return x * x + y; }, tri, 8) ==
          doctest::Approx(1.0 / 12.0 + 1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("degenerate polygons integrate to zero") {
    CHECK(integrate_polygon([](double, double) { return 1.0; }, Polygon{}, 4) == 0.0);
    CHECK(integrate_polygon([](double, double) { return 1.0; }, Polygon{{0, 0}, {1, 1}}, 4) ==
          0.0);
}

TEST_CASE("two-component polygon quadrature matches two scalar passes") {
    const Polygon poly{{0, 0}, {1.3, 0.2}, {1.1, 1.4}, {-0.2, 0.9}};
    const auto f1 = [](double x, double y) { return std::sin(x) + y; };
    const auto f2 = [](double x, double y) { return std::cos(y) * x; };
    const Vec2 both = integrate_polygon2(
        [&](double x, double y) { return Vec2{f1(x, y), f2(x, y)}; }, poly, 10);
    CHECK(both[0] == doctest::Approx(integrate_polygon(f1, poly, 10)).epsilon(1e-14));
    CHECK(both[1] == doctest::Approx(integrate_polygon(f2, poly, 10)).epsilon(1e-14));
}

TEST_CASE("split plus integrate telescopes") {
    // Splitting a polygon and integrating the parts must reproduce the whole:
    // exactly when the rule resolves the integrand (polynomials), and within
    // the quadrature budget for a smooth bump.
    const Polygon square{{0.0, -0.5}, {1.0, -0.5}, {1.0, 0.5}, {0.0, 0.5}};
    Polygon below, above;
    split_polygon(square, {-0.4, 1.0}, 0.05, below, above);

    const auto poly5 = [](double t, double x) {
        return t * t * t * x * x - 2.0 * t * x + 0.75 * x + 1.0;
    };
    const double whole_poly = integrate_polygon(poly5, square, 12);
    const double parts_poly =
        integrate_polygon(poly5, below, 12) + integrate_polygon(poly5, above, 12);
    CHECK(parts_poly == doctest::Approx(whole_poly).epsilon(1e-13));

    const auto f = [](double t, double x) {
        const double w = ((t - 0.5) * (t - 0.5) + x * x) / 0.16;
        return bump_marginal(w);
    };
    const double whole = integrate_polygon(f, square, 20);
    const double parts = integrate_polygon(f, below, 20) + integrate_polygon(f, above, 20);
    // The two decompositions place independent node sets over the bump;
    // order-20 rules on O(1) cells agree to roughly five digits.
    CHECK(parts == doctest::Approx(whole).epsilon(2e-4));
}
