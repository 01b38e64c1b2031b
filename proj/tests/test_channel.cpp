#include <doctest.h>

#include <cmath>

#include "sdof/channel.hpp"

using namespace sdof;

TEST_CASE("draw_state support and sign balance") {
    Rng rng(7);
    const double B = 2.0;
    int positive = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const auto d = draw_state(3, B, rng);
        for (double v : d.h) {
            CHECK(std::fabs(v) >= 1.0 / B);
            CHECK(std::fabs(v) <= B);
        }
        for (double v : d.g) {
            CHECK(std::fabs(v) >= 1.0 / B);
            CHECK(std::fabs(v) <= B);
        }
        if (d.h[0] > 0) ++positive;
    }
    const double frac = static_cast<double>(positive) / n;
    CHECK(std::fabs(frac - 0.5) < 3.0 * std::sqrt(0.25 / n));
}

TEST_CASE("consecutive draws are uncorrelated") {
    Rng rng(8);
    const int n = 100000;
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    double prev = draw_state(2, 2.0, rng).h[0];
    for (int i = 0; i < n; ++i) {
        const double cur = draw_state(2, 2.0, rng).h[0];
        sx += prev;
        sy += cur;
        sxx += prev * prev;
        syy += cur * cur;
        sxy += prev * cur;
        prev = cur;
    }
    const double r = (n * sxy - sx * sy) /
                     std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
    CHECK(std::fabs(r) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("log-uniform magnitude density keeps the support") {
    Rng rng(9);
    for (int i = 0; i < 1000; ++i) {
        const auto d = draw_state(2, 3.0, rng, FadingDensity::LogUniformMagnitude);
        for (double v : d.h) {
            CHECK(std::fabs(v) >= 1.0 / 3.0);
            CHECK(std::fabs(v) <= 3.0);
        }
    }
}

TEST_CASE("mac_output arithmetic") {
    Rng rng(10);
    {
        const double x[] = {0.0, 0.0};
        const double gains[] = {1.5, -0.3};
        CHECK(mac_output(x, gains, 0.0, rng) == 0.0);
    }
    {
        const double x[] = {1.0, 1.0};
        const double gains[] = {2.0, -1.0};
        CHECK(mac_output(x, gains, 0.0, rng) == doctest::Approx(1.0).epsilon(1e-15));
    }
    {
        const double x[] = {1.0};
        const double gains[] = {2.0, -1.0};
        CHECK_THROWS_AS(mac_output(x, gains, 0.0, rng), std::invalid_argument);
    }
}

TEST_CASE("mac_output noise has unit variance") {
    Rng rng(11);
    const double x[] = {0.0};
    const double gains[] = {1.0};
    const int n = 100000;
    double s = 0, ss = 0;
    for (int i = 0; i < n; ++i) {
        const double y = mac_output(x, gains, 1.0, rng);
        s += y;
        ss += y * y;
    }
    const double var = ss / n - (s / n) * (s / n);
    CHECK(var == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("mac_output is linear in the inputs") {
    Rng rng(12);
    const double a = 1.7;
    const double b = -0.4;
    const double x1[] = {0.3, -2.1, 0.9};
    const double x2[] = {1.1, 0.2, -0.5};
    const double gains[] = {0.8, -1.4, 2.2};
    double combo[3];
    for (int i = 0; i < 3; ++i) combo[i] = a * x1[i] + b * x2[i];
    const double lhs = mac_output(combo, gains, 0.0, rng);
    const double rhs = a * mac_output(x1, gains, 0.0, rng) + b * mac_output(x2, gains, 0.0, rng);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}
