#include <doctest.h>

#include <cmath>

#include "sdof/constellation.hpp"

using namespace sdof;

TEST_CASE("scale_params formula") {
    const auto spec = scale_params(1e6, 4, 0.2, 12.0);
    CHECK(spec.Q == 3);  // floor(10^(6*0.8/8.4)) = floor(3.727)
    CHECK(spec.delta == doctest::Approx((1.0 / 12.0) * 1e3 / 3.0).epsilon(1e-12));
    CHECK(spec.gamma == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
    // power constraint is met with equality by construction
    CHECK(spec.gamma_tilde * spec.delta * static_cast<double>(spec.Q) ==
          doctest::Approx(std::sqrt(1e6)).epsilon(1e-12));
}

TEST_CASE("scale_params boundaries") {
    const auto spec = scale_params(1.0, 1, 0.5);  // P^(1/6) = 1
    CHECK(spec.Q == 1);
    CHECK_THROWS_AS(scale_params(0.5, 1, 0.5), std::invalid_argument);   // Q would be 0
    CHECK_THROWS_AS(scale_params(1e6, 4, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(scale_params(1e6, 4, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("sample_symbol uniformity and symmetry") {
    ConstellationSpec spec;
    spec.Q = 1;
    spec.delta = 2.0;
    Rng rng(123);
    int counts[3] = {0, 0, 0};
    const int n = 30000;
    for (int i = 0; i < n; ++i) {
        const double v = sample_symbol(spec, rng);
        CHECK((v == -2.0 || v == 0.0 || v == 2.0));
        counts[static_cast<int>(v / 2.0) + 1]++;
    }
    const double expect = n / 3.0;
    double chi2 = 0.0;
    for (int c : counts) chi2 += (c - expect) * (c - expect) / expect;
    CHECK(chi2 < 11.0);  // ~p=0.004 for 2 dof; deterministic under the fixed seed

    // empirical mean ~ 0 within 3 standard errors
    spec.Q = 4;
    spec.delta = 1.0;
    double sum = 0.0;
    const int m = 100000;
    for (int i = 0; i < m; ++i) sum += sample_symbol(spec, rng);
    const double stderr_mean =
        spec.delta * std::sqrt(static_cast<double>(spec.Q) * (spec.Q + 1) / 3.0 / m);
    CHECK(std::fabs(sum / m) < 3.0 * stderr_mean);
}

TEST_CASE("min_distance_bruteforce examples") {
    {
        const double lam[] = {1.0};
        const long long hw[] = {1};
        CHECK(min_distance_bruteforce(lam, 1.0, hw) == doctest::Approx(1.0).epsilon(1e-15));
    }
    {
        const double lam[] = {1.0, std::sqrt(2.0)};
        const long long hw[] = {1, 1};
        CHECK(min_distance_bruteforce(lam, 1.0, hw) ==
              doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
    }
    {
        const double lam[] = {1.0, 1.0};
        const long long hw[] = {1, 1};
        CHECK(min_distance_bruteforce(lam, 1.0, hw) == 0.0);
    }
}

TEST_CASE("min_distance scales exactly linearly in delta") {
    const double lam[] = {0.37, -1.88, 2.51};
    const long long hw[] = {2, 1, 2};
    const double d1 = min_distance_bruteforce(lam, 1.0, hw);
    const double d2 = min_distance_bruteforce(lam, 2.0, hw);
    CHECK(d2 == 2.0 * d1);
}

TEST_CASE("min_distance positive for random channel-like coefficients") {
    Rng rng(99);
    const long long hw[] = {1, 1, 1};
    for (int t = 0; t < 10000; ++t) {
        double lam[3];
        for (double& l : lam) l = rng.sign() * rng.uniform(0.5, 2.0);
        CHECK(min_distance_bruteforce(lam, 1.0, hw) > 0.0);
    }
}

TEST_CASE("min_distance enumeration cap") {
    const double lam[] = {1.0, 2.0, 3.0};
    const long long hw[] = {200, 200, 200};
    CHECK_THROWS_AS(min_distance_bruteforce(lam, 1.0, hw), std::runtime_error);
}
