#include <doctest.h>

#include "sdof/field.hpp"

using namespace sdof;

namespace {

// independent mod-p determinant via Gaussian elimination over GF(p)
long long det_mod_p(std::vector<long long> m, int n, long long p) {
    auto inv = [&](long long a) {
        long long r = 1, b = a % p, e = p - 2;
        while (e > 0) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    auto at = [&](int r, int c) -> long long& { return m[static_cast<std::size_t>(r) * n + c]; };
    long long det = 1;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int r = k; r < n; ++r)
            if (at(r, k) % p != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != k) {
            for (int c = 0; c < n; ++c) std::swap(at(k, c), at(piv, c));
            det = (p - det) % p;
        }
        det = det * (at(k, k) % p) % p;
        const long long ik = inv((at(k, k) % p + p) % p);
        for (int r = k + 1; r < n; ++r) {
            const long long f = (at(r, k) % p) * ik % p;
            for (int c = k; c < n; ++c) at(r, c) = ((at(r, c) - f * at(k, c)) % p + p) % p;
        }
    }
    return (det % p + p) % p;
}

}  // namespace

TEST_CASE("smallest_prime_geq") {
    CHECK(smallest_prime_geq(1) == 2);
    CHECK(smallest_prime_geq(2) == 2);
    CHECK(smallest_prime_geq(6) == 7);
    CHECK(smallest_prime_geq(7) == 7);
    CHECK(smallest_prime_geq(8) == 11);
    CHECK(smallest_prime_geq(12) == 13);
    CHECK_THROWS_AS(smallest_prime_geq(0), std::invalid_argument);
}

TEST_CASE("build_mds_generator small cases") {
    const auto g11 = build_mds_generator(1, 1);
    CHECK(g11.rows == 1);
    CHECK(g11.cols == 1);
    CHECK(g11.at(0, 0) == 1);

    const auto g23 = build_mds_generator(2, 3);
    CHECK(g23.prime == 3);
    const int expect[2][3] = {{1, 1, 1}, {0, 1, 2}};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 3; ++c) CHECK(g23.at(r, c) == expect[r][c]);
    // all three 2x2 minors nonzero mod 3, by direct ad - bc
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            const long long det = g23.at(0, a) * g23.at(1, b) - g23.at(0, b) * g23.at(1, a);
            CHECK(((det % 3) + 3) % 3 != 0);
        }

    CHECK_THROWS_AS(build_mds_generator(3, 2), std::invalid_argument);
}

TEST_CASE("build_mds_generator 2x6: all 15 column pairs nonsingular mod 7") {
    const auto g = build_mds_generator(2, 6);
    CHECK(g.prime == 7);
    int pairs = 0;
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b) {
            const long long det = g.at(0, a) * g.at(1, b) - g.at(0, b) * g.at(1, a);
            CHECK(((det % 7) + 7) % 7 != 0);
            ++pairs;
        }
    CHECK(pairs == 15);
}

TEST_CASE("verify_mds") {
    CHECK(verify_mds(build_mds_generator(2, 3)));
    CHECK(verify_mds(build_mds_generator(3, 8)));

    GeneratorMatrix bad;
    bad.rows = 2;
    bad.cols = 2;
    bad.prime = 2;
    bad.entries = {1, 1, 1, 1};
    CHECK_FALSE(verify_mds(bad));

    GeneratorMatrix oob = bad;
    oob.entries = {1, 2, 1, 1};  // entry >= p
    CHECK_THROWS_AS(verify_mds(oob), std::invalid_argument);
}

TEST_CASE("every generator up to j = k = 12 is MDS") {
    for (int k = 1; k <= 12; ++k)
        for (int j = 1; j <= k; ++j) CHECK(verify_mds(build_mds_generator(j, k)));
}

TEST_CASE("integer determinant agrees with the mod-p route") {
    // whenever det != 0 (mod p), the exact integer determinant is nonzero
    for (int k = 4; k <= 12; k += 4) {
        const int j = k / 2;
        const auto g = build_mds_generator(j, k);
        std::vector<long long> sub(static_cast<std::size_t>(j) * j);
        // first j columns and a strided selection
        for (int mode = 0; mode < 2; ++mode) {
            for (int r = 0; r < j; ++r)
                for (int c = 0; c < j; ++c)
                    sub[static_cast<std::size_t>(r) * j + c] = g.at(r, mode == 0 ? c : 2 * c);
            const int128 d = det_exact(sub, j);
            const long long dm = det_mod_p(sub, j, g.prime);
            const auto d_mod = static_cast<long long>(((d % g.prime) + g.prime) % g.prime);
            CHECK(d_mod == dm);
            if (dm != 0) CHECK(d != 0);
        }
    }
}
