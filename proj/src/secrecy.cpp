#include "sdof/secrecy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace sdof {

CancellationResiduals cancellation_residuals(const PrecodingPlan& plan, const ChannelDraw& ch) {
    const LinearForm y1 = receive_form(plan, ch.h);
    double sig = 0.0;
    for (int i = 0; i < plan.layout.n_msg; ++i)
        sig = std::max(sig, std::fabs(y1[plan.layout.msg(i)]));
    CancellationResiduals out;
    for (int m = 0; m < plan.layout.n_fict; ++m)
        out.fict = std::max(out.fict, std::fabs(y1[plan.layout.fict(m)]));
    if (is_coj(plan.scheme)) {
        for (int i = 0; i < plan.layout.n_noise; ++i)
            out.noise = std::max(out.noise, std::fabs(y1[plan.layout.noise(i)]));
    }
    out.fict /= sig;
    out.noise /= sig;
    return out;
}

namespace {

double entropy_bits(const std::map<std::vector<long long>, long long>& counts, double total) {
    double h = 0.0;
    for (const auto& [key, c] : counts) {
        const double p = static_cast<double>(c) / total;
        h -= p * std::log2(p);
    }
    return h;
}

/// Odometer over coordinates in [-Q, Q]^n; returns false once exhausted.
bool advance(std::vector<long long>& v, long long Q) {
    for (std::size_t i = v.size(); i-- > 0;) {
        if (v[i] < Q) {
            ++v[i];
            for (std::size_t t = i + 1; t < v.size(); ++t) v[t] = -Q;
            return true;
        }
    }
    return false;
}

}  // namespace

namespace {

struct LinkEntropies {
    double marginal = 0.0;     // H(S_T)
    double conditional = 0.0;  // H(S_T | V)
};

LinkEntropies enumerate_links(const SchemeConfig& cfg, const GeneratorMatrix& gamma,
                              long long Q, std::span<const int> T, long long enum_cap) {
    if (!is_snc(cfg.scheme))
        throw std::invalid_argument("exact_mi_links: SNC schemes only");
    if (static_cast<int>(T.size()) != cfg.W())
        throw std::invalid_argument("exact_mi_links: need |T| = W");
    for (int t : T)
        if (t < 0 || t >= cfg.M) throw std::invalid_argument("exact_mi_links: bad link index");

    const SchemeShape sh = scheme_shape(cfg, &gamma);

    // Only the symbols the T-payloads actually involve need enumerating:
    // V always; U only for the SCOJ family; F always.
    const bool with_noise = is_coj(cfg.scheme);
    const int nV = sh.layout.n_msg;
    const int nU = with_noise ? sh.layout.n_noise : 0;
    const int nF = sh.layout.n_fict;

    const double side = static_cast<double>(2 * Q + 1);
    const double states = std::pow(side, nV + nU + nF);
    if (states > static_cast<double>(enum_cap))
        throw std::runtime_error("exact_mi_links: enumeration cap exceeded");

    std::vector<const PayloadElement*> elems;
    for (int t : T)
        for (const auto& e : sh.payload[static_cast<std::size_t>(t)]) elems.push_back(&e);

    std::map<std::vector<long long>, long long> marginal;
    const double total_v = std::pow(side, nV);
    const double total_rest = std::pow(side, nU + nF);

    LinkEntropies out;
    std::vector<long long> v(static_cast<std::size_t>(nV), -Q);
    std::vector<long long> coord(static_cast<std::size_t>(sh.layout.total()), 0);
    do {
        for (int i = 0; i < nV; ++i)
            coord[static_cast<std::size_t>(sh.layout.msg(i))] = v[static_cast<std::size_t>(i)];
        std::map<std::vector<long long>, long long> cond;
        std::vector<long long> rest(static_cast<std::size_t>(nU + nF), -Q);
        do {
            for (int i = 0; i < nU; ++i)
                coord[static_cast<std::size_t>(sh.layout.noise(i))] = rest[static_cast<std::size_t>(i)];
            for (int i = 0; i < nF; ++i)
                coord[static_cast<std::size_t>(sh.layout.fict(i))] = rest[static_cast<std::size_t>(nU + i)];
            std::vector<long long> st;
            st.reserve(elems.size());
            for (const auto* e : elems) {
                long long units = 0;
                for (int s = 0; s < e->form.size(); ++s)
                    if (e->form[s] != 0.0)
                        units += std::llround(e->form[s]) * coord[static_cast<std::size_t>(s)];
                st.push_back(units);
            }
            ++cond[st];
            ++marginal[st];
        } while (advance(rest, Q));
        out.conditional += entropy_bits(cond, total_rest) / total_v;
    } while (advance(v, Q));

    out.marginal = entropy_bits(marginal, total_v * total_rest);
    return out;
}

}  // namespace

double exact_mi_links(const SchemeConfig& cfg, const GeneratorMatrix& gamma, long long Q,
                      std::span<const int> T, long long enum_cap) {
    const LinkEntropies e = enumerate_links(cfg, gamma, Q, T, enum_cap);
    return e.marginal - e.conditional;
}

double exact_entropy_links(const SchemeConfig& cfg, const GeneratorMatrix& gamma, long long Q,
                           std::span<const int> T, long long enum_cap) {
    return enumerate_links(cfg, gamma, Q, T, enum_cap).marginal;
}

double snc_mask_bound(const SchemeConfig& cfg, long long Q, long long p) {
    if (!is_snc(cfg.scheme)) throw std::invalid_argument("snc_mask_bound: SNC schemes only");
    const long long W = cfg.W();
    if (W == 0) return 0.0;
    const long long M = cfg.M;
    if (is_coj(cfg.scheme)) {
        const auto num = static_cast<double>(4 * (W * (p - 1) + 1) * Q + 1);
        return 2.0 * static_cast<double>(W) * std::log2(num / static_cast<double>(2 * Q + 1));
    }
    const long long wm = W * (M - 1);
    const auto num = static_cast<double>(2 * (wm * (p - 1) + 1) * Q + 1);
    return static_cast<double>(wm) * std::log2(num / static_cast<double>(2 * Q + 1));
}

std::vector<double> recover_fictitious(const Frame& frame, const GeneratorMatrix& gamma,
                                       std::span<const int> T, const PrecodingPlan& plan) {
    if (!is_snc(plan.scheme))
        throw std::invalid_argument("recover_fictitious: SNC schemes only");
    const int nF = plan.layout.n_fict;
    if (nF == 0) return {};

    // Strip the known (V, U) contributions from the T payloads; what remains
    // is L_T = F * Gamma_T with Gamma_T the square column submatrix for T.
    std::vector<double> l_units;
    std::vector<int> cols;
    for (int t : T) {
        if (t < 0 || t >= plan.M) throw std::invalid_argument("recover_fictitious: bad link");
        const auto& elems = plan.payload[static_cast<std::size_t>(t)];
        const int per = static_cast<int>(elems.size());
        for (int e = 0; e < per; ++e) {
            long long units = frame.payload_units[static_cast<std::size_t>(t)][static_cast<std::size_t>(e)];
            const auto& form = elems[static_cast<std::size_t>(e)].form;
            for (int i = 0; i < plan.layout.n_msg; ++i)
                units -= std::llround(form[plan.layout.msg(i)]) * frame.msg[static_cast<std::size_t>(i)];
            for (int i = 0; i < plan.layout.n_noise; ++i)
                units -= std::llround(form[plan.layout.noise(i)]) * frame.noise[static_cast<std::size_t>(i)];
            l_units.push_back(static_cast<double>(units));
            cols.push_back(is_coj(plan.scheme) ? 2 * t + e : t * (plan.M - 1) + e);
        }
    }
    if (static_cast<int>(l_units.size()) != nF)
        throw std::invalid_argument("recover_fictitious: need |T| = W");

    Eigen::MatrixXd gt(nF, nF);  // gt(e, m) = gamma[m][cols[e]], so L = gt * F
    for (int e = 0; e < nF; ++e)
        for (int m = 0; m < nF; ++m) gt(e, m) = gamma.at(m, cols[static_cast<std::size_t>(e)]);
    Eigen::VectorXd l(nF);
    for (int e = 0; e < nF; ++e) l(e) = l_units[static_cast<std::size_t>(e)];

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(gt);
    Eigen::VectorXd f = lu.solve(l);
    f += lu.solve(l - gt * f);
    return {f.data(), f.data() + nF};
}

double analytic_var_y2(const PrecodingPlan& plan, const ChannelDraw& ch,
                       const ConstellationSpec& spec, double noise_var) {
    const LinearForm y2 = receive_form(plan, ch.g);
    const double sym_var = spec.delta * spec.delta *
                           static_cast<double>(spec.Q) * static_cast<double>(spec.Q + 1) / 3.0;
    double var = noise_var;
    for (int s = 0; s < y2.size(); ++s) var += y2[s] * y2[s] * sym_var;
    return var;
}

double fano_leak_bound(double p_e_eaves, const ConstellationSpec& spec, int tau,
                       double var_y2) {
    if (p_e_eaves < 0.0 || p_e_eaves > 1.0)
        throw std::invalid_argument("fano_leak_bound: p_e outside [0,1]");
    const double log_alpha = static_cast<double>(tau) * std::log2(static_cast<double>(2 * spec.Q + 1));
    const double bound = 0.5 * std::log2(var_y2) - log_alpha + 1.0 + p_e_eaves * log_alpha;
    return std::max(0.0, bound);
}

}  // namespace sdof
