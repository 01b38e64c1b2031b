#include "sdof/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "sdof/decode.hpp"

namespace sdof {

namespace {

struct TrialResult {
    bool dest_error = false;
    bool eaves_error = false;
    double var_y2 = 0.0;
    double delta = 0.0;
};

void parallel_for(long long n, int threads, const std::function<void(long long)>& body) {
    int hw = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    hw = static_cast<int>(std::min<long long>(hw, n));
    if (hw <= 1) {
        for (long long i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<long long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(hw));
    for (int t = 0; t < hw; ++t)
        pool.emplace_back([&] {
            while (true) {
                const long long i = next.fetch_add(1);
                if (i >= n) break;
                body(i);
            }
        });
    for (auto& th : pool) th.join();
}

}  // namespace

SweepRecord run_trials(const SchemeConfig& cfg, double P, long long trials,
                       std::uint64_t seed, const TrialOptions& opt) {
    cfg.validate();
    if (trials < 1) throw std::invalid_argument("run_trials: need trials >= 1");
    if (P <= 1.0) throw std::invalid_argument("run_trials: need P > 1");

    const bool snc = is_snc(cfg.scheme);
    GeneratorMatrix gamma;
    if (snc) gamma = scheme_generator(cfg);
    const GeneratorMatrix* gp = snc ? &gamma : nullptr;

    // stream 0 of the master seed feeds the frozen coefficient draw;
    // trial i uses stream i+1
    PlanCoefficients frozen;
    if (opt.freeze_plan) {
        Rng r0(derive_seed(seed, 0));
        frozen = sample_plan_coefficients(cfg, r0);
    }

    const double noise_std = opt.noiseless ? 0.0 : 1.0;
    std::vector<TrialResult> results(static_cast<std::size_t>(trials));
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mutex;

    parallel_for(trials, opt.threads, [&](long long i) {
        if (failed.load(std::memory_order_relaxed)) return;
        try {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i) + 1));
            const ChannelDraw ch = draw_state(cfg.M, cfg.B, rng, opt.density);
            const PrecodingPlan plan =
                make_plan(cfg, ch, gp, opt.freeze_plan ? &frozen : nullptr, rng);
            const ConstellationSpec spec =
                scale_params(P, cfg.tau(), cfg.epsilon, amplitude_bound(plan, cfg));
            const Frame frame = encode_frame(plan, cfg, spec, rng, noise_std);

            TrialResult tr;
            tr.dest_error = decode_destination(frame, plan, ch, spec).error;
            tr.eaves_error = decode_eaves_noise(frame, plan, ch, spec).error;
            tr.var_y2 = analytic_var_y2(plan, ch, spec, noise_std * noise_std);
            tr.delta = spec.delta;
            results[static_cast<std::size_t>(i)] = tr;
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            failure = e.what();
            failed.store(true, std::memory_order_relaxed);
        }
    });
    if (failed.load()) throw std::runtime_error("run_trials: " + failure);

    // sequential reduction keeps the aggregate independent of thread timing
    long long dest_errors = 0;
    long long eaves_errors = 0;
    double var_sum = 0.0;
    double delta_sum = 0.0;
    for (const auto& tr : results) {
        dest_errors += tr.dest_error ? 1 : 0;
        eaves_errors += tr.eaves_error ? 1 : 0;
        var_sum += tr.var_y2;
        delta_sum += tr.delta;
    }

    // Q and the payload alphabet descriptors do not depend on the draw;
    // rebuild them once from the trial-0 stream
    Rng rng0(derive_seed(seed, 1));
    const ChannelDraw ch0 = draw_state(cfg.M, cfg.B, rng0, opt.density);
    const PrecodingPlan plan0 = make_plan(cfg, ch0, gp, opt.freeze_plan ? &frozen : nullptr, rng0);
    const ConstellationSpec spec0 =
        scale_params(P, cfg.tau(), cfg.epsilon, amplitude_bound(plan0, cfg));

    SweepRecord rec;
    rec.scheme = cfg.scheme;
    rec.M = cfg.M;
    rec.N = cfg.N;
    rec.W = cfg.W();
    rec.epsilon = cfg.epsilon;
    rec.B = cfg.B;
    rec.P = P;
    rec.Q = spec0.Q;
    rec.delta = delta_sum / static_cast<double>(trials);
    rec.rate_bits = static_cast<double>(plan0.layout.n_msg) *
                    std::log2(static_cast<double>(2 * spec0.Q + 1));
    const double half_log_p = 0.5 * std::log2(P);
    rec.dof_est = rec.rate_bits / half_log_p;
    rec.alpha_used = required_link_dof(payload_alphabet_sizes(plan0, spec0.Q), P);
    rec.p_e_dest = static_cast<double>(dest_errors) / static_cast<double>(trials);
    rec.p_e_eaves = static_cast<double>(eaves_errors) / static_cast<double>(trials);
    const double mask = snc ? snc_mask_bound(cfg, spec0.Q, gamma.prime) : 0.0;
    const double fano = fano_leak_bound(rec.p_e_eaves, spec0, plan0.layout.n_noise,
                                        var_sum / static_cast<double>(trials));
    rec.leak_bits_bound = mask + fano;
    rec.leak_dof_bound = rec.leak_bits_bound / half_log_p;
    rec.trials = trials;
    rec.seed = seed;
    return rec;
}

std::vector<SweepRecord> sweep(const SchemeConfig& cfg, std::span<const double> P_list,
                               long long trials, std::uint64_t seed, const TrialOptions& opt,
                               bool parallel_points) {
    if (P_list.empty()) throw std::invalid_argument("sweep: empty P list");
    for (std::size_t i = 1; i < P_list.size(); ++i)
        if (P_list[i] <= P_list[i - 1])
            throw std::invalid_argument("sweep: P list must be ascending");

    std::vector<SweepRecord> records(P_list.size());
    auto point = [&](std::size_t i) {
        records[i] = run_trials(cfg, P_list[i], trials,
                                derive_seed(seed, 0x5eed0000ULL + i), opt);
    };
    if (parallel_points) {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < P_list.size(); ++i) pool.emplace_back(point, i);
        for (auto& th : pool) th.join();
    } else {
        for (std::size_t i = 0; i < P_list.size(); ++i) point(i);
    }
    return records;
}

DofFit fit_dof(std::span<const SweepRecord> records) {
    if (records.size() < 2) throw std::invalid_argument("fit_dof: need at least 2 records");
    for (const auto& r : records)
        if (r.scheme != records[0].scheme || r.M != records[0].M || r.N != records[0].N ||
            r.epsilon != records[0].epsilon || r.B != records[0].B)
            throw std::invalid_argument("fit_dof: records from mixed configs");

    const auto n = static_cast<double>(records.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& r : records) {
        const double x = 0.5 * std::log2(r.P);
        sx += x;
        sy += r.rate_bits;
        sxx += x * x;
        sxy += x * r.rate_bits;
    }
    const double denom = n * sxx - sx * sx;
    if (std::fabs(denom) < 1e-12 * n * sxx + 1e-300)
        throw std::invalid_argument("fit_dof: degenerate fit (all P equal)");

    DofFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (const auto& r : records) {
        const double x = 0.5 * std::log2(r.P);
        const double e = r.rate_bits - (fit.slope * x + fit.intercept);
        ss += e * e;
    }
    fit.residual_rms = std::sqrt(ss / n);
    return fit;
}

std::string format_sig(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

std::string csv_header() {
    return "scheme,M,N,W,epsilon,B,P,Q,delta,rate_bits,dof_est,alpha_used,"
           "p_e_dest,p_e_eaves,leak_bits_bound,leak_dof_bound,trials,seed";
}

std::string csv_row(const SweepRecord& r) {
    std::string row;
    row += scheme_name(r.scheme);
    row += ',' + std::to_string(r.M);
    row += ',' + std::to_string(r.N);
    row += ',' + std::to_string(r.W);
    row += ',' + format_sig(r.epsilon);
    row += ',' + format_sig(r.B);
    row += ',' + format_sig(r.P);
    row += ',' + std::to_string(r.Q);
    row += ',' + format_sig(r.delta);
    row += ',' + format_sig(r.rate_bits);
    row += ',' + format_sig(r.dof_est);
    row += ',' + format_sig(r.alpha_used);
    row += ',' + format_sig(r.p_e_dest);
    row += ',' + format_sig(r.p_e_eaves);
    row += ',' + format_sig(r.leak_bits_bound);
    row += ',' + format_sig(r.leak_dof_bound);
    row += ',' + std::to_string(r.trials);
    row += ',' + std::to_string(r.seed);
    return row;
}

void write_csv(const std::filesystem::path& path, std::span<const SweepRecord> records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path.string());
    out << csv_header() << '\n';
    for (const auto& r : records) out << csv_row(r) << '\n';
}

}  // namespace sdof
