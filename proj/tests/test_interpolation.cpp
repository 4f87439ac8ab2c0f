#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "isoprofile/interpolation.hpp"
#include "isoprofile/rng.hpp"

using isoprofile::CounterRng;
using isoprofile::ShapePreservingCubic;

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = a + (b - a) * double(i) / (n - 1);
    return x;
}

}  // namespace

TEST_CASE("interpolant reproduces its samples") {
    std::vector<double> x{0.0, 0.3, 1.0, 2.5, 4.0};
    std::vector<double> y{0.0, 1.0, 0.5, 2.0, -1.0};
    ShapePreservingCubic f(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(f(x[i]) == Catch::Approx(y[i]).margin(0));
}

TEST_CASE("linear data is reproduced exactly") {
    auto x = linspace(0.0, 5.0, 23);
    std::vector<double> y;
    for (double xi : x) y.push_back(3.0 * xi - 1.0);
    ShapePreservingCubic f(x, y);
    for (double t : linspace(0.0, 5.0, 211)) {
        CHECK(f(t) == Catch::Approx(3.0 * t - 1.0).margin(1e-13));
        CHECK(f.derivative(t) == Catch::Approx(3.0).margin(1e-12));
    }
}

TEST_CASE("quadratics are reproduced through their apex") {
    // Nonuniform grid straddling the maximum of a downward parabola.
    std::vector<double> x;
    for (int i = 0; i <= 40; ++i) x.push_back(0.1 * i + 0.03 * std::sin(2.0 * i));
    std::vector<double> y;
    for (double xi : x) y.push_back(xi * (4.0 - xi));
    ShapePreservingCubic f(x, y);
    for (double t : linspace(x[2], x[38], 313))
        CHECK(f(t) == Catch::Approx(t * (4.0 - t)).margin(1e-12));
}

TEST_CASE("monotone data yields a monotone interpolant") {
    // Property: random increasing data, dense scan stays nondecreasing.
    const CounterRng rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 5 + int(rng.uniform(1000 + trial) * 20);
        std::vector<double> x{0.0}, y{rng.uniform(2000 + trial)};
        for (int i = 1; i < n; ++i) {
            x.push_back(x.back() + 1e-3 + rng.uniform(trial * 100 + i));
            // occasional flat runs
            const double step = rng.uniform(trial * 300 + i);
            y.push_back(y.back() + (step < 0.2 ? 0.0 : step));
        }
        ShapePreservingCubic f(x, y);
        double prev = f(x.front());
        for (double t : linspace(x.front(), x.back(), 1500)) {
            const double v = f(t);
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("no overshoot beyond the data range on monotone data") {
    std::vector<double> x{0.0, 1.0, 1.1, 3.0, 3.05, 6.0};
    std::vector<double> y{0.0, 0.1, 2.0, 2.1, 4.0, 4.05};
    ShapePreservingCubic f(x, y);
    for (double t : linspace(0.0, 6.0, 2000)) {
        CHECK(f(t) >= y.front() - 1e-12);
        CHECK(f(t) <= y.back() + 1e-12);
    }
}

TEST_CASE("out-of-range evaluation throws") {
    ShapePreservingCubic f({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
    CHECK_THROWS_AS(f(-0.1), std::domain_error);
    CHECK_THROWS_AS(f(2.1), std::domain_error);
    CHECK_THROWS_AS(ShapePreservingCubic({0.0, 0.0, 1.0}, {0.0, 1.0, 2.0}),
                    std::invalid_argument);
}

TEST_CASE("derivative of the interpolant is exact on quadratics") {
    std::vector<double> x, y;
    for (int i = 0; i <= 32; ++i) {
        x.push_back(0.2 * i + 0.05 * std::cos(3.0 * i));
        y.push_back(1.5 + 2.0 * x.back() - 0.7 * x.back() * x.back());
    }
    ShapePreservingCubic f(x, y);
    for (double t : {x[3], 1.1, 2.9, 4.4, x[29]}) {
        CHECK(f.derivative(t) == Catch::Approx(2.0 - 1.4 * t).margin(1e-11));
    }
}
