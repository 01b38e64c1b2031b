#include "sdof/field.hpp"

#include <stdexcept>

namespace sdof {

long long smallest_prime_geq(long long k) {
    if (k < 1) throw std::invalid_argument("smallest_prime_geq: k must be positive");
    auto is_prime = [](long long n) {
        if (n < 2) return false;
        for (long long d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    };
    long long p = k < 2 ? 2 : k;
    while (!is_prime(p)) ++p;
    return p;
}

GeneratorMatrix build_mds_generator(int j, int k) {
    if (j < 1 || k < 1 || j > k)
        throw std::invalid_argument("build_mds_generator: need 1 <= j <= k");
    GeneratorMatrix g;
    g.rows = j;
    g.cols = k;
    g.prime = smallest_prime_geq(k);
    g.entries.resize(static_cast<std::size_t>(j) * k);
    for (int c = 0; c < k; ++c) {
        long long pw = 1;  // c^0 = 1, including 0^0
        for (int r = 0; r < j; ++r) {
            g.entries[static_cast<std::size_t>(r) * k + c] = static_cast<int>(pw);
            pw = (pw * c) % g.prime;
        }
    }
    return g;
}

int128 det_exact(const std::vector<long long>& m, int n) {
    if (n == 0) return 1;
    std::vector<int128> a(m.begin(), m.end());
    auto at = [&](int r, int c) -> int128& { return a[static_cast<std::size_t>(r) * n + c]; };
    int sign = 1;
    int128 prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k) == 0) {
            int piv = -1;
            for (int r = k + 1; r < n; ++r)
                if (at(r, k) != 0) { piv = r; break; }
            if (piv < 0) return 0;
            for (int c = k; c < n; ++c) std::swap(at(k, c), at(piv, c));
            sign = -sign;
        }
        for (int r = k + 1; r < n; ++r) {
            for (int c = k + 1; c < n; ++c)
                at(r, c) = (at(r, c) * at(k, k) - at(r, k) * at(k, c)) / prev;
            at(r, k) = 0;
        }
        prev = at(k, k);
    }
    return sign * at(n - 1, n - 1);
}

bool verify_mds(const GeneratorMatrix& g) {
    for (int e : g.entries)
        if (e < 0 || e >= g.prime)
            throw std::invalid_argument("verify_mds: entry outside [0, p)");
    if (g.rows == 0) return true;
    if (g.rows > g.cols) return false;

    const int j = g.rows;
    std::vector<int> pick(static_cast<std::size_t>(j));
    for (int i = 0; i < j; ++i) pick[static_cast<std::size_t>(i)] = i;
    std::vector<long long> sub(static_cast<std::size_t>(j) * j);
    while (true) {
        for (int r = 0; r < j; ++r)
            for (int c = 0; c < j; ++c)
                sub[static_cast<std::size_t>(r) * j + c] = g.at(r, pick[static_cast<std::size_t>(c)]);
        const int128 d = det_exact(sub, j);
        int128 rem = d % g.prime;
        if (rem == 0) return false;
        // advance the combination
        int i = j - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == g.cols - j + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int t = i + 1; t < j; ++t)
            pick[static_cast<std::size_t>(t)] = pick[static_cast<std::size_t>(t - 1)] + 1;
    }
    return true;
}

}  // namespace sdof
