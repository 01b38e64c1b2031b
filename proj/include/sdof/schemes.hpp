#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sdof/channel.hpp"
#include "sdof/constellation.hpp"
#include "sdof/field.hpp"
#include "sdof/rng.hpp"

namespace sdof {

/// The four relay transmission schemes. The *_SNC variants add fictitious
/// message symbols whose masking combinations protect the source-relay links
/// when the wiretapped-link locations are unknown.
enum class Scheme { SBCJ, SCOJ, SBCJ_SNC, SCOJ_SNC };

const char* scheme_name(Scheme s);
std::optional<Scheme> scheme_from_name(const std::string& name);
bool is_snc(Scheme s);
bool is_coj(Scheme s);  // SCOJ family (tau = N); else SBCJ family (tau = M*N)

struct SchemeConfig {
    int M = 2;             // relays
    int N = 2;             // secure source-relay links
    double B = 2.0;        // fading gain bound
    double epsilon = 0.2;  // d.o.f. slack in the constellation scaling
    Scheme scheme = Scheme::SBCJ;
    std::vector<int> known_wiretapped;  // 0-based; empty = last W links (non-SNC only)

    int W() const { return M - N; }
    int tau() const { return is_coj(scheme) ? N : M * N; }
    std::vector<int> wiretapped_links() const;
    std::vector<int> secure_links() const;  // sorted complement of the above
    void validate() const;                  // throws std::invalid_argument
};

/// Index map of the symbols a scheme draws per channel use. Flat order:
/// messages (V), then noise (U), then fictitious messages (F).
struct SymbolLayout {
    int n_msg = 0;
    int n_noise = 0;
    int n_fict = 0;
    int total() const { return n_msg + n_noise + n_fict; }
    int msg(int i) const { return i; }
    int noise(int i) const { return n_msg + i; }
    int fict(int i) const { return n_msg + n_noise + i; }
};

/// Real-linear combination of the scheme's symbols.
struct LinearForm {
    std::vector<double> coef;

    explicit LinearForm(int n = 0) : coef(static_cast<std::size_t>(n), 0.0) {}
    double operator[](int i) const { return coef[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return coef[static_cast<std::size_t>(i)]; }
    int size() const { return static_cast<int>(coef.size()); }
};

/// One element sent over a source-relay link: an integer-coefficient
/// combination of symbols whose value lies in C(delta, halfwidth_units * Q).
struct PayloadElement {
    LinearForm form;
    long long halfwidth_units = 1;
};

/// Channel-free part of a scheme's wiring: the symbol layout and the link
/// payloads. mask_units is the alphabet halfwidth (in units of Q) of a pure
/// masking combination: W(M-1)(p-1) for SBCJ_SNC, 2W(p-1) for SCOJ_SNC,
/// 0 otherwise.
struct SchemeShape {
    SymbolLayout layout;
    std::vector<int> msg_relays;
    std::vector<std::vector<PayloadElement>> payload;
    long long mask_units = 0;
};
SchemeShape scheme_shape(const SchemeConfig& cfg, const GeneratorMatrix* gamma);

/// Per-channel-draw wiring: the relay inputs X_k as linear forms over the
/// symbols, the link payloads, and the precoding coefficients they were built
/// from. Immutable after construction.
struct PrecodingPlan {
    Scheme scheme = Scheme::SBCJ;
    int M = 0;
    int N = 0;
    SymbolLayout layout;
    std::vector<int> msg_relays;  // relays whose link carries message symbols
    ChannelDraw ch;               // the draw this wiring was built for
    long long mask_units = 0;

    std::vector<double> mu;  // SBCJ family: N x (M-1) row-major; else empty
    std::vector<double> nu;  // SBCJ family: N; else empty
    std::vector<double> rho;  // SNC relays: SBCJ_SNC W x (M-1) row-major; SCOJ_SNC 2M
    double rho_max = 0.0;     // max |rho|
    double sigma_residual = 0.0;  // worst relative residual of the column expansions

    std::vector<LinearForm> relay_input;               // X_k
    std::vector<std::vector<PayloadElement>> payload;  // S_k elements

    double mu_at(int k, int j) const { return mu[static_cast<std::size_t>(k) * (M - 1) + j]; }
};

/// Precoding randomness that a frozen-plan run draws once and reuses across
/// channel draws. Empty for the SCOJ family, whose wiring is channel-only.
struct PlanCoefficients {
    std::vector<double> mu;
    std::vector<double> nu;
};
PlanCoefficients sample_plan_coefficients(const SchemeConfig& cfg, Rng& rng);

/// The cyclic index [j]_i: j for j in [1:i], i for j = 0, and 1 for j = i+1.
int cyclic_index(int j, int i);

/// MDS generator with the shape the SNC variant of cfg.scheme needs
/// (W(M-1) x M(M-1) or 2W x 2M). rows = 0 when W = 0.
GeneratorMatrix scheme_generator(const SchemeConfig& cfg);

PrecodingPlan plan_sbcj(const SchemeConfig& cfg, const ChannelDraw& ch, Rng& rng);
PrecodingPlan plan_scoj(const SchemeConfig& cfg, const ChannelDraw& ch, Rng& rng);
PrecodingPlan plan_sbcj_snc(const SchemeConfig& cfg, const ChannelDraw& ch,
                            const GeneratorMatrix& gamma, Rng& rng);
PrecodingPlan plan_scoj_snc(const SchemeConfig& cfg, const ChannelDraw& ch,
                            const GeneratorMatrix& gamma, Rng& rng);

/// Shared assembly: dispatches on cfg.scheme; reuses frozen coefficients when
/// given instead of sampling fresh ones.
PrecodingPlan make_plan(const SchemeConfig& cfg, const ChannelDraw& ch,
                        const GeneratorMatrix* gamma, const PlanCoefficients* frozen,
                        Rng& rng);

/// The scheme's amplitude bound gamma_tilde: |X_k| <= gamma_tilde * delta * Q.
/// Plan-dependent for the SNC schemes through rho_max.
double amplitude_bound(const PrecodingPlan& plan, const SchemeConfig& cfg);

/// Y coefficient of every symbol at a receiver with the given gains:
/// sum_k gains_k * X_k.
LinearForm receive_form(const PrecodingPlan& plan, std::span<const double> gains);

/// One channel use: sampled symbols, link payloads, relay inputs, outputs.
struct Frame {
    std::vector<long long> msg;    // integer coordinates in [-Q, Q]
    std::vector<long long> noise;
    std::vector<long long> fict;
    std::vector<std::vector<long long>> payload_units;  // exact payload values / delta
    std::vector<std::vector<double>> payload;
    std::vector<double> x;  // realized relay inputs
    double y1 = 0.0;
    double y2 = 0.0;
};

/// Samples all symbols uniformly on C(delta, Q), assembles payloads and relay
/// inputs, and emits Y1, Y2. Checks the power bound |X_k| <= sqrt(P), payload
/// alphabet membership, and that spec.gamma_tilde covers the plan's amplitude
/// bound; violations throw (they mean a mis-scaled spec).
Frame encode_frame(const PrecodingPlan& plan, const SchemeConfig& cfg,
                   const ConstellationSpec& spec, Rng& rng, double noise_std = 1.0);

/// Secure d.o.f. d_s(alpha): min{alpha, (M-1)/M} for N = 1 and
/// min{N*alpha, (N*alpha + M - 1)/(M + 1), 1} for N >= 2.
double dof_formula(int M, int N, double alpha);

/// Per-relay, per-element alphabet cardinalities 2*halfwidth_units*Q + 1.
std::vector<std::vector<long long>> payload_alphabet_sizes(const PrecodingPlan& plan,
                                                           long long Q);

/// Link d.o.f. a frame consumes: max_k log2|alphabet(S_k)| / (0.5*log2 P).
double required_link_dof(const std::vector<std::vector<long long>>& alphabet_sizes,
                         double P);

}  // namespace sdof
