#include "sdof/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace sdof {

namespace {

double draw_gain(double B, Rng& rng, FadingDensity density) {
    double mag = 0.0;
    switch (density) {
        case FadingDensity::UniformMagnitude:
            mag = rng.uniform(1.0 / B, B);
            break;
        case FadingDensity::LogUniformMagnitude:
            mag = std::exp(rng.uniform(-std::log(B), std::log(B)));
            break;
    }
    return rng.sign() * mag;
}

}  // namespace

ChannelDraw draw_state(int M, double B, Rng& rng, FadingDensity density) {
    if (M < 1) throw std::invalid_argument("draw_state: need M >= 1");
    if (B <= 1.0) throw std::invalid_argument("draw_state: need B > 1");
    ChannelDraw d;
    d.h.resize(static_cast<std::size_t>(M));
    d.g.resize(static_cast<std::size_t>(M));
    for (auto& v : d.h) v = draw_gain(B, rng, density);
    for (auto& v : d.g) v = draw_gain(B, rng, density);
    return d;
}

double mac_output(std::span<const double> x, std::span<const double> gains,
                  double noise_std, Rng& rng) {
    if (x.size() != gains.size()) throw std::invalid_argument("mac_output: length mismatch");
    double y = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) y += gains[k] * x[k];
    if (noise_std != 0.0) y += noise_std * rng.gaussian();
    return y;
}

}  // namespace sdof
