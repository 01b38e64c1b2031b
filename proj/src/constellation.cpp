#include "sdof/constellation.hpp"

#include <cmath>
#include <stdexcept>

namespace sdof {

ConstellationSpec scale_params(double P, int tau, double epsilon, double gamma_tilde) {
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw std::invalid_argument("scale_params: need 0 < epsilon < 1");
    if (tau < 1) throw std::invalid_argument("scale_params: need tau >= 1");
    if (gamma_tilde <= 0.0) throw std::invalid_argument("scale_params: need gamma_tilde > 0");

    const double exponent = (1.0 - epsilon) / (2.0 * (tau + epsilon));
    const auto Q = static_cast<long long>(std::floor(std::pow(P, exponent)));
    if (Q < 1) throw std::invalid_argument("scale_params: P too small, Q would be 0");

    ConstellationSpec spec;
    spec.Q = Q;
    spec.gamma_tilde = gamma_tilde;
    spec.gamma = 1.0 / gamma_tilde;
    spec.delta = spec.gamma * std::sqrt(P) / static_cast<double>(Q);
    spec.tau = tau;
    spec.epsilon = epsilon;
    spec.P = P;
    return spec;
}

long long sample_coordinate(long long Q, Rng& rng) { return rng.uniform_int(-Q, Q); }

double sample_symbol(const ConstellationSpec& spec, Rng& rng) {
    return spec.delta * static_cast<double>(sample_coordinate(spec.Q, rng));
}

double min_distance_bruteforce(std::span<const double> lambda, double delta,
                               std::span<const long long> halfwidths, long long enum_cap) {
    const auto tau = static_cast<int>(lambda.size());
    if (halfwidths.size() != lambda.size())
        throw std::invalid_argument("min_distance_bruteforce: length mismatch");
    if (tau == 0) throw std::invalid_argument("min_distance_bruteforce: empty input");

    double count = 1.0;
    for (long long hw : halfwidths) {
        if (hw < 1) throw std::invalid_argument("min_distance_bruteforce: halfwidths must be positive");
        count *= static_cast<double>(4 * hw + 1);
        if (count > static_cast<double>(enum_cap))
            throw std::runtime_error("min_distance_bruteforce: enumeration cap exceeded");
    }

    // Odometer over difference vectors q_i in [-2 hw_i, 2 hw_i], running sum
    // updated incrementally.
    std::vector<long long> q(lambda.size());
    double sum = 0.0;
    for (int i = 0; i < tau; ++i) {
        q[static_cast<std::size_t>(i)] = -2 * halfwidths[static_cast<std::size_t>(i)];
        sum += lambda[static_cast<std::size_t>(i)] * static_cast<double>(q[static_cast<std::size_t>(i)]);
    }
    double best = -1.0;
    while (true) {
        bool zero = true;
        for (long long v : q)
            if (v != 0) { zero = false; break; }
        if (!zero) {
            const double d = std::fabs(sum);
            if (best < 0.0 || d < best) best = d;
        }
        int i = tau - 1;
        while (i >= 0 && q[static_cast<std::size_t>(i)] == 2 * halfwidths[static_cast<std::size_t>(i)]) {
            sum -= lambda[static_cast<std::size_t>(i)] * static_cast<double>(4 * halfwidths[static_cast<std::size_t>(i)]);
            q[static_cast<std::size_t>(i)] = -2 * halfwidths[static_cast<std::size_t>(i)];
            --i;
        }
        if (i < 0) break;
        ++q[static_cast<std::size_t>(i)];
        sum += lambda[static_cast<std::size_t>(i)];
    }
    return delta * best;
}

}  // namespace sdof
