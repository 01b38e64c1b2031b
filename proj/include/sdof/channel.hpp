#pragma once

#include <span>
#include <vector>

#include "sdof/rng.hpp"

namespace sdof {

/// Magnitude law for the fading draws. Gains always satisfy
/// 1/B <= |gain| <= B with independent random sign; the exact density is a
/// knob because the asymptotics only require bounded densities on a bounded
/// support.
enum class FadingDensity {
    UniformMagnitude,     // |gain| ~ Unif[1/B, B]
    LogUniformMagnitude,  // log|gain| ~ Unif[log(1/B), log B]
};

/// One channel use worth of fading state: h are the destination gains, g the
/// eavesdropper gains.
struct ChannelDraw {
    std::vector<double> h;
    std::vector<double> g;
};

ChannelDraw draw_state(int M, double B, Rng& rng,
                       FadingDensity density = FadingDensity::UniformMagnitude);

/// Multiple-access output sum_k gains_k * x_k + Z with Z ~ N(0, noise_std^2).
/// Used with h for the destination and with g for the eavesdropper.
double mac_output(std::span<const double> x, std::span<const double> gains,
                  double noise_std, Rng& rng);

}  // namespace sdof
