#pragma once

#include <span>
#include <vector>

#include "sdof/rng.hpp"

namespace sdof {

/// PAM constellation C(delta, Q) = delta * {-Q, ..., Q} scaled for transmit
/// power P: Q = floor(P^((1-eps)/(2(tau+eps)))), delta = gamma * sqrt(P) / Q
/// with gamma = 1/gamma_tilde, so that gamma_tilde * delta * Q <= sqrt(P).
struct ConstellationSpec {
    long long Q = 1;
    double delta = 1.0;
    double gamma = 1.0;        // 1 / gamma_tilde
    double gamma_tilde = 1.0;  // scheme amplitude bound
    int tau = 1;               // alignment dimension the scaling is tuned for
    double epsilon = 0.1;
    double P = 1.0;
};

/// Throws if the computed Q would be zero (P too small) or eps outside (0,1).
ConstellationSpec scale_params(double P, int tau, double epsilon, double gamma_tilde = 1.0);

/// One uniform draw from C(delta, Q).
double sample_symbol(const ConstellationSpec& spec, Rng& rng);

/// Uniform integer coordinate on {-Q, ..., Q}.
long long sample_coordinate(long long Q, Rng& rng);

/// Exact minimum distance of the received sum constellation
/// { delta * sum_i lambda_i a_i : |a_i| <= halfwidth_i }, computed by full
/// enumeration of nonzero integer difference vectors |q_i| <= 2*halfwidth_i.
/// Throws if the number of difference vectors exceeds enum_cap.
double min_distance_bruteforce(std::span<const double> lambda, double delta,
                               std::span<const long long> halfwidths,
                               long long enum_cap = 10'000'000);

}  // namespace sdof
