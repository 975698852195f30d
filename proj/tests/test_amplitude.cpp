#include <doctest.h>

#include <cmath>
#include <vector>

#include "oscatlas/amplitude.hpp"
#include "test_helpers.hpp"

using namespace oscatlas;
using namespace oscatlas::testing;

TEST_CASE("gaussian derivatives via Hermite recurrence") {
    Amplitude g = gaussian();
    CHECK(g.derivative(2, 0.0) == -2.0);
    for (int k = 0; k <= 8; ++k)
        for (double x : {0.0, 0.3, 1.0, 2.5}) {
            double want = hermite_gaussian_deriv(k, x);
            CHECK(std::abs(g.derivative(k, x) - want) <
                  1e-12 * std::max(1.0, std::abs(want)));
        }
    CHECK(g.delta() == -1.0);
}

TEST_CASE("constant one") {
    Amplitude one = constant_one();
    CHECK(one.value(17.0) == 1.0);
    for (int k = 1; k <= 6; ++k) CHECK(one.derivative(k, 3.0) == 0.0);
    CHECK(one.tau() == 0.0);
}

TEST_CASE("bump is 1 inside, 0 outside, smooth between") {
    Amplitude b = bump(1.0, 2.0);
    CHECK(b.value(0.5) == 1.0);
    CHECK(b.value(-1.0) == 1.0);
    CHECK(b.value(2.0) == 0.0);
    CHECK(b.value(2.5) == 0.0);
    CHECK(b.value(1.5) > 0.0);
    CHECK(b.value(1.5) < 1.0);
    CHECK(b.derivative(3, 0.2) == 0.0);
    CHECK(b.derivative(1, 2.4) == 0.0);
    // Decreasing through the transition; derivatives bounded on samples.
    for (double x = 1.05; x < 1.95; x += 0.1) {
        CHECK(b.derivative(1, x) <= 0.0);
        for (int k = 0; k <= 6; ++k) CHECK(std::isfinite(b.derivative(k, x)));
    }
    // Even symmetry.
    CHECK(b.value(1.37) == b.value(-1.37));
    CHECK(b.derivative(1, 1.37) == -b.derivative(1, -1.37));
    CHECK(*b.support_radius() == 2.0);
    CHECK_THROWS_AS(bump(0.5, 2.0), BadParams);
    CHECK_NOTHROW(narrow_bump(0.25, 0.45));
}

TEST_CASE("jet_at is consistent with derivative for all built-ins") {
    std::vector<Amplitude> amps{gaussian(), bump(1.0, 2.0), constant_one(),
                                poly_times_gaussian({1.0, -0.5, 2.0}),
                                rational_decay(3.0),
                                product(gaussian(), narrow_bump(0.25, 0.45)),
                                reflect(poly_times_gaussian({0.0, 1.0}))};
    for (const auto& a : amps) {
        for (double x : {0.0, 0.4, 1.3, 1.7, 2.5}) {
            Jet j = a.jet_at(x, 8);
            double fact = 1.0;
            for (int k = 0; k <= 8; ++k) {
                if (k >= 2) fact *= k;
                double want = a.derivative(k, x);
                CHECK(std::abs(j[k] * fact - want) <=
                      1e-9 * std::max(1.0, std::abs(want)));
            }
        }
    }
}

TEST_CASE("poly_times_gaussian with one monomial is odd") {
    Amplitude xg = poly_times_gaussian({0.0, 1.0});
    CHECK(xg.value(0.7) == -xg.value(-0.7));
    CHECK(xg.value(0.0) == 0.0);
    CHECK(xg.derivative(1, 0.0) == 1.0);  // d/dx x e^{-x^2} at 0
}

TEST_CASE("rational_decay derivatives against finite differences") {
    Amplitude r = rational_decay(3.0);
    CHECK(r.tau() == -3.0);
    for (double x : {0.0, 0.8, 2.0}) {
        double h = 1e-5;
        double fd = (r.value(x + h) - r.value(x - h)) / (2.0 * h);
        CHECK(std::abs(r.derivative(1, x) - fd) < 1e-8);
    }
    CHECK_THROWS_AS(rational_decay(0.0), BadParams);
}

TEST_CASE("reflect flips odd derivatives") {
    Amplitude g = reflect(gaussian());
    CHECK(g.value(1.0) == gaussian().value(-1.0));
    CHECK(g.derivative(1, 1.0) == -gaussian().derivative(1, -1.0));
}

TEST_CASE("class_check diagnostics") {
    std::vector<double> grid;
    for (double x = 0.0; x <= 10.0; x += 0.25) grid.push_back(x);

    ClassReport r1 = class_check(gaussian(), 2.0, grid, 4);
    CHECK(r1.admissible);
    CHECK(r1.bounded);

    // delta = -1 sits below p - 1 for every positive p, so the constant
    // amplitude stays admissible even in the moderate-oscillation regime.
    ClassReport r2 = class_check(constant_one(), 0.5, grid, 2);
    CHECK(r2.admissible);

    // A genuinely inadmissible pairing needs delta >= p - 1.
    ClassReport r2b = class_check(constant_one().with_class_params(0.0, 0.0), 0.5, grid, 2);
    CHECK_FALSE(r2b.admissible);

    // Zeroth seminorm of the gaussian: sup attained at x = 0.
    ClassReport r3 = class_check(gaussian(), 0.5, grid, 0);
    CHECK(r3.admissible);
    CHECK(r3.seminorm == doctest::Approx(1.0).epsilon(0.05));

    ClassReport r4 = class_check(gaussian(), 0.5, grid, 4);
    CHECK(r4.bounded);
    CHECK(r4.seminorm >= r3.seminorm);
}

TEST_CASE("tensor amplitude") {
    AmplitudeND t = tensor({gaussian(), poly_times_gaussian({0.0, 1.0})});
    CHECK(t.dim() == 2);
    CHECK(t.value({0.5, 0.3}) ==
          doctest::Approx(gaussian().value(0.5) * 0.3 * std::exp(-0.09)));
    CHECK(t.partial_at_zero({0, 1}) == 1.0);
    CHECK(t.partial_at_zero({0, 0}) == 0.0);
    CHECK(t.partial_at_zero({2, 1}) == -2.0);
    CHECK_THROWS_AS(t.value({1.0}), BadDimension);
}
