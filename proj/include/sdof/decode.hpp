#pragma once

#include <span>
#include <vector>

#include "sdof/schemes.hpp"

namespace sdof {

enum class Side { Destination, Eavesdropper };

/// Scalar effective channel y = sum_i lambda_i * delta * a_i + Z over the
/// decodable entities at one receiver. halfwidth_units is in units of Q
/// (messages 1, aligned noise sums M).
struct EffectiveChannel {
    std::vector<double> lambda;
    std::vector<long long> halfwidth_units;
};

/// Destination: the message symbols plus (SBCJ family) the aligned per-slot
/// noise sums. Eavesdropper: the noise symbols that remain after the
/// conditioned-out (V, F, S_T) contributions are subtracted from Y2.
EffectiveChannel effective_coeffs(const PrecodingPlan& plan, const ChannelDraw& ch, Side side);

/// Exact nearest-point (ML) decode of the coordinate vector from a scalar:
/// argmin over the product alphabet |a_i| <= halfwidth_i of
/// |y - delta * sum_i lambda_i a_i|, ties broken by the lexicographically
/// smallest vector. Search is depth-first with an admissible reach bound and
/// a closed-form last coordinate, so it returns the same argmin as plain
/// enumeration. Throws if the product alphabet exceeds enum_cap.
std::vector<long long> nearest_point_decode(double y, std::span<const double> lambda,
                                            double delta,
                                            std::span<const long long> halfwidths,
                                            long long enum_cap = 10'000'000);

struct DestinationDecode {
    std::vector<long long> v_hat;
    std::vector<long long> aligned_sums_hat;  // SBCJ family only
    bool error = false;                       // v_hat != frame.msg
};
DestinationDecode decode_destination(const Frame& frame, const PrecodingPlan& plan,
                                     const ChannelDraw& ch, const ConstellationSpec& spec);

struct EavesdropperDecode {
    std::vector<long long> u_hat;
    bool error = false;  // u_hat != frame.noise
};
/// Decodes the jamming vector U from Y2 after subtracting the known (V, F)
/// contributions; the success probability feeds the Fano leakage bound.
EavesdropperDecode decode_eaves_noise(const Frame& frame, const PrecodingPlan& plan,
                                      const ChannelDraw& ch, const ConstellationSpec& spec);

}  // namespace sdof
