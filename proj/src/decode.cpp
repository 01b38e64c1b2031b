#include "sdof/decode.hpp"

#include <cmath>
#include <stdexcept>

namespace sdof {

EffectiveChannel effective_coeffs(const PrecodingPlan& plan, const ChannelDraw& ch, Side side) {
    EffectiveChannel eff;
    if (side == Side::Destination) {
        const LinearForm y1 = receive_form(plan, ch.h);
        for (int i = 0; i < plan.layout.n_msg; ++i) {
            eff.lambda.push_back(y1[plan.layout.msg(i)]);
            eff.halfwidth_units.push_back(1);
        }
        if (!is_coj(plan.scheme)) {
            // one aligned sum per noise slot, distributed over C(delta, M*Q)
            for (int j = 0; j < plan.N; ++j) {
                eff.lambda.push_back(plan.nu[static_cast<std::size_t>(j)]);
                eff.halfwidth_units.push_back(plan.M);
            }
        }
    } else {
        const LinearForm y2 = receive_form(plan, ch.g);
        for (int i = 0; i < plan.layout.n_noise; ++i) {
            eff.lambda.push_back(y2[plan.layout.noise(i)]);
            eff.halfwidth_units.push_back(1);
        }
    }
    return eff;
}

namespace {

struct Search {
    std::span<const double> lambda;
    std::span<const long long> hw;
    double delta = 1.0;
    std::vector<double> reach;  // reach[i] = delta * sum_{t >= i} |lambda_t| * hw_t
    std::vector<long long> cur;
    std::vector<long long> best;
    double best_cost = 0.0;
    bool have_best = false;

    // Candidate full vectors are visited in lexicographic order (each level
    // enumerates its coordinate ascending), so replacing only on a strictly
    // smaller cost leaves the lexicographically smallest argmin in `best`.
    void try_leaf(double cost) {
        if (!have_best || cost < best_cost) {
            best = cur;
            best_cost = cost;
            have_best = true;
        }
    }

    void last_level(double resid) {
        const int i = static_cast<int>(lambda.size()) - 1;
        const double ln = delta * lambda[static_cast<std::size_t>(i)];
        const long long w = hw[static_cast<std::size_t>(i)];
        long long a = 0;
        if (ln != 0.0) {
            const double t = resid / ln;
            if (t <= static_cast<double>(-w))
                a = -w;
            else if (t >= static_cast<double>(w))
                a = w;
            else
                a = std::llround(t);
        } else {
            a = -w;  // all values tie; smallest is lexicographically first
        }
        // check the rounded point and both neighbours; on exact ties prefer
        // the smaller coordinate
        long long pick = a;
        double pick_cost = std::fabs(resid - ln * static_cast<double>(a));
        for (long long cand : {a - 1, a + 1}) {
            if (cand < -w || cand > w) continue;
            const double c = std::fabs(resid - ln * static_cast<double>(cand));
            if (c < pick_cost || (c == pick_cost && cand < pick)) {
                pick = cand;
                pick_cost = c;
            }
        }
        cur[static_cast<std::size_t>(i)] = pick;
        try_leaf(pick_cost);
    }

    void descend(int level, double resid) {
        if (level == static_cast<int>(lambda.size()) - 1) {
            last_level(resid);
            return;
        }
        if (have_best && std::fabs(resid) - reach[static_cast<std::size_t>(level)] > best_cost)
            return;
        const double ln = delta * lambda[static_cast<std::size_t>(level)];
        const long long w = hw[static_cast<std::size_t>(level)];
        for (long long a = -w; a <= w; ++a) {
            const double child = resid - ln * static_cast<double>(a);
            if (have_best &&
                std::fabs(child) - reach[static_cast<std::size_t>(level) + 1] > best_cost)
                continue;
            cur[static_cast<std::size_t>(level)] = a;
            descend(level + 1, child);
        }
    }
};

}  // namespace

std::vector<long long> nearest_point_decode(double y, std::span<const double> lambda,
                                            double delta, std::span<const long long> halfwidths,
                                            long long enum_cap) {
    if (lambda.size() != halfwidths.size())
        throw std::invalid_argument("nearest_point_decode: length mismatch");
    if (lambda.empty()) throw std::invalid_argument("nearest_point_decode: empty input");

    double count = 1.0;
    for (long long w : halfwidths) {
        if (w < 0) throw std::invalid_argument("nearest_point_decode: negative halfwidth");
        count *= static_cast<double>(2 * w + 1);
        if (count > static_cast<double>(enum_cap))
            throw std::runtime_error("nearest_point_decode: enumeration cap exceeded");
    }

    Search s;
    s.lambda = lambda;
    s.hw = halfwidths;
    s.delta = delta;
    s.cur.assign(lambda.size(), 0);
    s.reach.assign(lambda.size() + 1, 0.0);
    for (int i = static_cast<int>(lambda.size()) - 1; i >= 0; --i)
        s.reach[static_cast<std::size_t>(i)] =
            s.reach[static_cast<std::size_t>(i) + 1] +
            delta * std::fabs(lambda[static_cast<std::size_t>(i)]) *
                static_cast<double>(halfwidths[static_cast<std::size_t>(i)]);
    s.descend(0, y);
    return s.best;
}

DestinationDecode decode_destination(const Frame& frame, const PrecodingPlan& plan,
                                     const ChannelDraw& ch, const ConstellationSpec& spec) {
    const EffectiveChannel eff = effective_coeffs(plan, ch, Side::Destination);
    std::vector<long long> hw;
    hw.reserve(eff.halfwidth_units.size());
    for (long long u : eff.halfwidth_units) hw.push_back(u * spec.Q);

    const auto a = nearest_point_decode(frame.y1, eff.lambda, spec.delta, hw);
    DestinationDecode out;
    out.v_hat.assign(a.begin(), a.begin() + plan.layout.n_msg);
    out.aligned_sums_hat.assign(a.begin() + plan.layout.n_msg, a.end());
    out.error = out.v_hat != frame.msg;
    return out;
}

EavesdropperDecode decode_eaves_noise(const Frame& frame, const PrecodingPlan& plan,
                                      const ChannelDraw& ch, const ConstellationSpec& spec) {
    const LinearForm y2 = receive_form(plan, ch.g);
    double y_eff = frame.y2;
    for (int i = 0; i < plan.layout.n_msg; ++i)
        y_eff -= y2[plan.layout.msg(i)] * spec.delta *
                 static_cast<double>(frame.msg[static_cast<std::size_t>(i)]);
    for (int m = 0; m < plan.layout.n_fict; ++m)
        y_eff -= y2[plan.layout.fict(m)] * spec.delta *
                 static_cast<double>(frame.fict[static_cast<std::size_t>(m)]);

    const EffectiveChannel eff = effective_coeffs(plan, ch, Side::Eavesdropper);
    std::vector<long long> hw;
    hw.reserve(eff.halfwidth_units.size());
    for (long long u : eff.halfwidth_units) hw.push_back(u * spec.Q);

    EavesdropperDecode out;
    out.u_hat = nearest_point_decode(y_eff, eff.lambda, spec.delta, hw);
    out.error = out.u_hat != frame.noise;
    return out;
}

}  // namespace sdof
