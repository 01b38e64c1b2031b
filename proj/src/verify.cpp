#include "sdof/verify.hpp"

#include <chrono>
#include <cmath>
#include <vector>

#include "sdof/decode.hpp"
#include "sdof/harness.hpp"
#include "sdof/secrecy.hpp"

namespace sdof::verify {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<SchemeConfig> applicable_configs(int M) {
    std::vector<SchemeConfig> out;
    for (int N = 1; N <= M; ++N) {
        for (Scheme s : {Scheme::SBCJ, Scheme::SCOJ, Scheme::SBCJ_SNC, Scheme::SCOJ_SNC}) {
            if (is_coj(s) && N < 2) continue;
            SchemeConfig cfg;
            cfg.M = M;
            cfg.N = N;
            cfg.scheme = s;
            out.push_back(cfg);
        }
    }
    return out;
}

}  // namespace

bool suite_mds(std::ostream& out) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (int k = 1; k <= 12; ++k) {
        for (int j = 1; j <= k; ++j) {
            const GeneratorMatrix g = build_mds_generator(j, k);
            if (!verify_mds(g)) {
                out << "  mds FAILED at j=" << j << " k=" << k << "\n";
                ok = false;
            }
        }
    }
    const double dt = seconds_since(t0);
    out << "  mds: all 1<=j<=k<=12 generator matrices verified in " << dt << " s\n";
    if (dt >= 10.0) {
        out << "  mds: runtime bound 10 s exceeded\n";
        ok = false;
    }
    return ok;
}

bool suite_cancellation(std::ostream& out, long long draws) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (int M : {2, 3, 4}) {
        for (const auto& cfg : applicable_configs(M)) {
            GeneratorMatrix gamma;
            const GeneratorMatrix* gp = nullptr;
            if (is_snc(cfg.scheme)) {
                gamma = scheme_generator(cfg);
                gp = &gamma;
            }
            double worst_f = 0.0;
            double worst_u = 0.0;
            Rng rng(derive_seed(0xCA9CE1, static_cast<std::uint64_t>(M * 100 + cfg.N * 10 +
                                                                     static_cast<int>(cfg.scheme))));
            for (long long d = 0; d < draws; ++d) {
                const ChannelDraw ch = draw_state(cfg.M, cfg.B, rng);
                const PrecodingPlan plan = make_plan(cfg, ch, gp, nullptr, rng);
                const CancellationResiduals res = cancellation_residuals(plan, ch);
                worst_f = std::max(worst_f, res.fict);
                worst_u = std::max(worst_u, res.noise);
            }
            const bool pass = worst_f < 1e-9 && worst_u < 1e-9;
            out << "  cancel " << scheme_name(cfg.scheme) << " M=" << M << " N=" << cfg.N
                << ": max F residual " << worst_f << ", max U residual " << worst_u
                << (pass ? "" : "  <-- FAIL") << "\n";
            ok = ok && pass;
        }
    }
    const double dt = seconds_since(t0);
    out << "  cancel: " << draws << " draws per combination in " << dt << " s\n";
    if (dt >= 60.0) {
        out << "  cancel: runtime bound 60 s exceeded\n";
        ok = false;
    }
    return ok;
}

bool suite_mi(std::ostream& out) {
    bool ok = true;
    auto check = [&](bool cond, const std::string& what) {
        out << "  mi " << what << (cond ? "" : "  <-- FAIL") << "\n";
        ok = ok && cond;
    };

    SchemeConfig cfg;
    cfg.M = 2;
    cfg.N = 1;
    cfg.scheme = Scheme::SBCJ_SNC;
    const GeneratorMatrix g2 = scheme_generator(cfg);
    const int t0arr[] = {0};
    const int t1arr[] = {1};
    const double i0 = exact_mi_links(cfg, g2, 1, t0arr);
    const double i1 = exact_mi_links(cfg, g2, 1, t1arr);
    const double mask = snc_mask_bound(cfg, 1, g2.prime);
    check(std::fabs(i0 - 0.61220) < 1e-4,
          "M=2 N=1 T={1st}: I = " + format_sig(i0, 6) + " (expect 0.61220)");
    check(i0 <= mask + 1e-9, "I <= mask bound " + format_sig(mask, 6) + " (expect 0.73697)");
    check(std::fabs(mask - std::log2(5.0 / 3.0)) < 1e-9, "mask bound equals log2(5/3)");
    check(std::fabs(i1) < 1e-12, "M=2 N=1 T={2nd}: I = 0 exactly");

    // identity I(V; S_T) = H(S_T) - H(F) for every |T| = W at Q = 1, M <= 3
    for (int M : {2, 3}) {
        for (int N = 1; N < M; ++N) {
            SchemeConfig c;
            c.M = M;
            c.N = N;
            c.scheme = Scheme::SBCJ_SNC;
            const GeneratorMatrix g = scheme_generator(c);
            const double h_f = g.rows * std::log2(3.0);
            std::vector<int> T(static_cast<std::size_t>(c.W()));
            // enumerate W-subsets of [0, M)
            for (int i = 0; i < c.W(); ++i) T[static_cast<std::size_t>(i)] = i;
            while (true) {
                const double mi = exact_mi_links(c, g, 1, T);
                const double h_st = exact_entropy_links(c, g, 1, T);
                const bool pass = std::fabs(mi - (h_st - h_f)) < 1e-9;
                if (!pass) {
                    out << "  mi identity FAILED at M=" << M << " N=" << N << "\n";
                    ok = false;
                }
                int i = c.W() - 1;
                while (i >= 0 && T[static_cast<std::size_t>(i)] == M - c.W() + i) --i;
                if (i < 0) break;
                ++T[static_cast<std::size_t>(i)];
                for (int t = i + 1; t < c.W(); ++t)
                    T[static_cast<std::size_t>(t)] = T[static_cast<std::size_t>(t - 1)] + 1;
            }
        }
    }
    out << "  mi identity I = H(S_T) - H(F) held for all subsets, M <= 3, Q = 1\n";
    return ok;
}

bool suite_roundtrip(std::ostream& out, long long trials) {
    bool ok = true;
    TrialOptions opt;
    opt.noiseless = true;
    for (int M : {2, 3}) {
        for (const auto& base : applicable_configs(M)) {
            SchemeConfig cfg = base;
            const double P = 1e6;
            const SweepRecord rec = run_trials(cfg, P, trials, 0x0071D, opt);
            const bool pass = rec.p_e_dest == 0.0;
            const auto exact = static_cast<long long>(
                std::llround((1.0 - rec.p_e_dest) * static_cast<double>(trials)));
            out << "  roundtrip " << scheme_name(cfg.scheme) << " M=" << M << " N=" << cfg.N
                << ": " << exact << "/" << trials << " exact" << (pass ? "" : "  <-- FAIL")
                << "\n";
            ok = ok && pass;
        }
    }
    return ok;
}

}  // namespace sdof::verify
