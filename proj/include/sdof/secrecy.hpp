#pragma once

#include <span>
#include <vector>

#include "sdof/decode.hpp"
#include "sdof/schemes.hpp"

namespace sdof {

/// Y1-coefficient residuals of the symbols that should vanish at the
/// destination, relative to the largest message coefficient.
struct CancellationResiduals {
    double fict = 0.0;   // max over F symbols
    double noise = 0.0;  // max over beamformed U symbols (SCOJ family; 0 for SBCJ family)
};
CancellationResiduals cancellation_residuals(const PrecodingPlan& plan, const ChannelDraw& ch);

/// Exact I(V; S_T) in bits by brute-force enumeration of the joint
/// distribution of the symbols and the induced link payloads on T.
/// Feasible only for small Q and M; throws past enum_cap enumerated states.
double exact_mi_links(const SchemeConfig& cfg, const GeneratorMatrix& gamma, long long Q,
                      std::span<const int> T, long long enum_cap = 10'000'000);

/// Exact marginal entropy H(S_T) in bits by the same enumeration.
double exact_entropy_links(const SchemeConfig& cfg, const GeneratorMatrix& gamma, long long Q,
                           std::span<const int> T, long long enum_cap = 10'000'000);

/// Closed-form masking bound on I(V; S_T) for the SNC schemes:
/// SBCJ_SNC: W(M-1) * log2((2(W(M-1)(p-1)+1)Q+1) / (2Q+1));
/// SCOJ_SNC: 2W * log2((4(W(p-1)+1)Q+1) / (2Q+1)).
double snc_mask_bound(const SchemeConfig& cfg, long long Q, long long p);

/// Reconstructs the fictitious symbols from the T-links' payloads given
/// (V, U): inverts the square T-submatrix of the generator. Returns
/// coordinates (units of delta); exact for MDS generators.
std::vector<double> recover_fictitious(const Frame& frame, const GeneratorMatrix& gamma,
                                       std::span<const int> T, const PrecodingPlan& plan);

/// Analytic Var[Y2]: symbols are zero-mean uniform with variance
/// delta^2 Q(Q+1)/3, plus the channel noise variance.
double analytic_var_y2(const PrecodingPlan& plan, const ChannelDraw& ch,
                       const ConstellationSpec& spec, double noise_var = 1.0);

/// Computable instantiation of the wireless-leakage proof chain, with
/// H(U | Y2_eff) replaced by its Fano bound from the measured eavesdropper
/// error rate:
///   max(0, 0.5*log2(varY2) - tau*log2(2Q+1) + 1 + p_e*tau*log2(2Q+1)).
/// Upper-bounds I(V; Y2 | S_T) in bits per use.
double fano_leak_bound(double p_e_eaves, const ConstellationSpec& spec, int tau,
                       double var_y2);

}  // namespace sdof
