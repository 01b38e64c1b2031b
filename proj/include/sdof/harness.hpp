#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sdof/secrecy.hpp"

namespace sdof {

struct TrialOptions {
    bool freeze_plan = true;  // draw mu, nu once per run (per-frame redraw off)
    bool noiseless = false;
    FadingDensity density = FadingDensity::UniformMagnitude;
    int threads = 0;  // 0 = hardware concurrency
};

/// One aggregated measurement point of a power sweep.
struct SweepRecord {
    Scheme scheme = Scheme::SBCJ;
    int M = 0;
    int N = 0;
    int W = 0;
    double epsilon = 0.0;
    double B = 0.0;
    double P = 0.0;
    long long Q = 0;
    double delta = 0.0;  // mean over trials (plan-dependent for SNC schemes)
    double rate_bits = 0.0;
    double dof_est = 0.0;
    double alpha_used = 0.0;
    double p_e_dest = 0.0;
    double p_e_eaves = 0.0;
    double leak_bits_bound = 0.0;
    double leak_dof_bound = 0.0;
    long long trials = 0;
    std::uint64_t seed = 0;
};

/// Runs `trials` independent channel uses (concurrently; per-trial seeds are
/// counter-derived from `seed`) and aggregates error rates and leakage
/// bounds. Deterministic given seed and config.
SweepRecord run_trials(const SchemeConfig& cfg, double P, long long trials,
                       std::uint64_t seed, const TrialOptions& opt = {});

/// One record per power point; independent sub-seeds per point. P_list must
/// be non-empty and ascending.
std::vector<SweepRecord> sweep(const SchemeConfig& cfg, std::span<const double> P_list,
                               long long trials, std::uint64_t seed,
                               const TrialOptions& opt = {}, bool parallel_points = false);

struct DofFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
};

/// Least-squares slope of rate_bits against 0.5*log2(P) over the records.
/// Throws on fewer than two records, mixed configs, or all-equal P.
DofFit fit_dof(std::span<const SweepRecord> records);

/// Floats serialized with 12 significant digits.
std::string format_sig(double v, int digits = 12);
std::string csv_header();
std::string csv_row(const SweepRecord& r);
void write_csv(const std::filesystem::path& path, std::span<const SweepRecord> records);

}  // namespace sdof
