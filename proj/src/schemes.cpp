#include "sdof/schemes.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdof {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::SBCJ: return "sbcj";
        case Scheme::SCOJ: return "scoj";
        case Scheme::SBCJ_SNC: return "sbcj-snc";
        case Scheme::SCOJ_SNC: return "scoj-snc";
    }
    return "?";
}

std::optional<Scheme> scheme_from_name(const std::string& name) {
    if (name == "sbcj") return Scheme::SBCJ;
    if (name == "scoj") return Scheme::SCOJ;
    if (name == "sbcj-snc") return Scheme::SBCJ_SNC;
    if (name == "scoj-snc") return Scheme::SCOJ_SNC;
    return std::nullopt;
}

bool is_snc(Scheme s) { return s == Scheme::SBCJ_SNC || s == Scheme::SCOJ_SNC; }
bool is_coj(Scheme s) { return s == Scheme::SCOJ || s == Scheme::SCOJ_SNC; }

void SchemeConfig::validate() const {
    if (M < 2) throw std::invalid_argument("SchemeConfig: need M >= 2");
    if (N < 1 || N > M) throw std::invalid_argument("SchemeConfig: need 1 <= N <= M");
    if (B <= 1.0) throw std::invalid_argument("SchemeConfig: need B > 1");
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw std::invalid_argument("SchemeConfig: need 0 < epsilon < 1");
    if (is_coj(scheme) && N < 2)
        throw std::invalid_argument("SchemeConfig: the SCOJ family needs N >= 2");
    if (!known_wiretapped.empty()) {
        if (is_snc(scheme))
            throw std::invalid_argument(
                "SchemeConfig: known wiretapped links apply to the non-SNC schemes only");
        if (static_cast<int>(known_wiretapped.size()) != W())
            throw std::invalid_argument("SchemeConfig: |known_wiretapped| must equal W");
        auto t = known_wiretapped;
        std::sort(t.begin(), t.end());
        if (std::unique(t.begin(), t.end()) != t.end() || t.front() < 0 || t.back() >= M)
            throw std::invalid_argument("SchemeConfig: bad wiretapped link indices");
    }
}

std::vector<int> SchemeConfig::wiretapped_links() const {
    if (!known_wiretapped.empty() && !is_snc(scheme)) {
        auto t = known_wiretapped;
        std::sort(t.begin(), t.end());
        return t;
    }
    std::vector<int> t;
    for (int k = N; k < M; ++k) t.push_back(k);
    return t;
}

std::vector<int> SchemeConfig::secure_links() const {
    const auto t = wiretapped_links();
    std::vector<int> s;
    for (int k = 0; k < M; ++k)
        if (std::find(t.begin(), t.end(), k) == t.end()) s.push_back(k);
    return s;
}

int cyclic_index(int j, int i) {
    if (i < 1 || j < 0 || j > i + 1) throw std::invalid_argument("cyclic_index: j out of range");
    if (j == 0) return i;
    if (j == i + 1) return 1;
    return j;
}

GeneratorMatrix scheme_generator(const SchemeConfig& cfg) {
    if (!is_snc(cfg.scheme)) throw std::invalid_argument("scheme_generator: SNC schemes only");
    const int cols = is_coj(cfg.scheme) ? 2 * cfg.M : cfg.M * (cfg.M - 1);
    const int rows = is_coj(cfg.scheme) ? 2 * cfg.W() : cfg.W() * (cfg.M - 1);
    if (rows == 0) {
        GeneratorMatrix g;
        g.rows = 0;
        g.cols = cols;
        g.prime = smallest_prime_geq(cols);
        return g;
    }
    return build_mds_generator(rows, cols);
}

SchemeShape scheme_shape(const SchemeConfig& cfg, const GeneratorMatrix* gamma) {
    cfg.validate();
    const int M = cfg.M;
    const int N = cfg.N;
    const int W = cfg.W();
    SchemeShape sh;
    sh.payload.resize(static_cast<std::size_t>(M));

    if (is_snc(cfg.scheme)) {
        if (gamma == nullptr)
            throw std::invalid_argument("scheme_shape: SNC schemes need a generator matrix");
        const int want_rows = is_coj(cfg.scheme) ? 2 * W : W * (M - 1);
        const int want_cols = is_coj(cfg.scheme) ? 2 * M : M * (M - 1);
        if (gamma->rows != want_rows || gamma->cols != want_cols)
            throw std::invalid_argument("scheme_shape: generator matrix has the wrong shape");
    }

    const long long pm1 = (gamma != nullptr) ? gamma->prime - 1 : 0;

    switch (cfg.scheme) {
        case Scheme::SBCJ: {
            sh.msg_relays = cfg.secure_links();
            sh.layout = {N * (M - 1), M * N, 0};
            for (int i = 0; i < N; ++i) {
                auto& pl = sh.payload[static_cast<std::size_t>(sh.msg_relays[static_cast<std::size_t>(i)])];
                for (int j = 0; j < M - 1; ++j) {
                    PayloadElement e{LinearForm(sh.layout.total()), 1};
                    e.form[sh.layout.msg(i * (M - 1) + j)] = 1.0;
                    pl.push_back(std::move(e));
                }
            }
            break;
        }
        case Scheme::SCOJ: {
            sh.msg_relays = cfg.secure_links();
            sh.layout = {N, N, 0};
            for (int i = 0; i < N; ++i) {
                auto& pl = sh.payload[static_cast<std::size_t>(sh.msg_relays[static_cast<std::size_t>(i)])];
                PayloadElement a{LinearForm(sh.layout.total()), 2};
                a.form[sh.layout.msg(i)] = 1.0;
                a.form[sh.layout.noise(i)] = 1.0;
                pl.push_back(std::move(a));
                PayloadElement b{LinearForm(sh.layout.total()), 1};
                b.form[sh.layout.noise((i + 1) % N)] = 1.0;
                pl.push_back(std::move(b));
            }
            break;
        }
        case Scheme::SBCJ_SNC: {
            for (int k = 0; k < N; ++k) sh.msg_relays.push_back(k);
            const int nF = W * (M - 1);
            sh.layout = {N * (M - 1), M * N, nF};
            sh.mask_units = static_cast<long long>(nF) * pm1;
            for (int k = 0; k < M; ++k) {
                auto& pl = sh.payload[static_cast<std::size_t>(k)];
                for (int j = 0; j < M - 1; ++j) {
                    const bool msg = k < N;
                    PayloadElement e{LinearForm(sh.layout.total()),
                                     sh.mask_units + (msg ? 1 : 0)};
                    if (msg) e.form[sh.layout.msg(k * (M - 1) + j)] = 1.0;
                    for (int m = 0; m < nF; ++m)
                        e.form[sh.layout.fict(m)] = gamma->at(m, k * (M - 1) + j);
                    pl.push_back(std::move(e));
                }
            }
            break;
        }
        case Scheme::SCOJ_SNC: {
            for (int k = 0; k < N; ++k) sh.msg_relays.push_back(k);
            const int nF = 2 * W;
            sh.layout = {N, N, nF};
            sh.mask_units = static_cast<long long>(nF) * pm1;
            for (int k = 0; k < M; ++k) {
                auto& pl = sh.payload[static_cast<std::size_t>(k)];
                PayloadElement a{LinearForm(sh.layout.total()),
                                 sh.mask_units + (k < N ? 2 : 0)};
                PayloadElement b{LinearForm(sh.layout.total()),
                                 sh.mask_units + (k < N ? 1 : 0)};
                if (k < N) {
                    a.form[sh.layout.msg(k)] = 1.0;
                    a.form[sh.layout.noise(k)] = 1.0;
                    b.form[sh.layout.noise((k + 1) % N)] = 1.0;
                }
                for (int m = 0; m < nF; ++m) {
                    a.form[sh.layout.fict(m)] += gamma->at(m, 2 * k);
                    b.form[sh.layout.fict(m)] += gamma->at(m, 2 * k + 1);
                }
                pl.push_back(std::move(a));
                pl.push_back(std::move(b));
            }
            break;
        }
    }
    return sh;
}

PlanCoefficients sample_plan_coefficients(const SchemeConfig& cfg, Rng& rng) {
    PlanCoefficients c;
    if (is_coj(cfg.scheme)) return c;
    auto draw = [&] {
        double v = 0.0;
        do {
            v = rng.uniform(-cfg.B, cfg.B);
        } while (std::fabs(v) < 1e-12 * cfg.B);
        return v;
    };
    c.mu.resize(static_cast<std::size_t>(cfg.N) * (cfg.M - 1));
    for (auto& v : c.mu) v = draw();
    c.nu.resize(static_cast<std::size_t>(cfg.N));
    for (auto& v : c.nu) v = draw();
    return c;
}

namespace {

struct Expansions {
    Eigen::MatrixXd sigma;  // w x n_masked: column j expands masked column j
    double worst_residual = 0.0;
};

/// Expands each masked generator column in the basis of the last `rows`
/// columns (solvable because any rows-subset of columns is independent). One
/// step of iterative refinement keeps residuals near machine precision for
/// the larger Vandermonde bases.
Expansions expand_masked_columns(const GeneratorMatrix& gamma, int n_masked) {
    const int w = gamma.rows;
    Expansions ex;
    ex.sigma.resize(w, n_masked);
    if (w == 0 || n_masked == 0) return ex;

    Eigen::MatrixXd basis(w, w);
    for (int r = 0; r < w; ++r)
        for (int c = 0; c < w; ++c) basis(r, c) = gamma.at(r, gamma.cols - w + c);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);

    for (int j = 0; j < n_masked; ++j) {
        Eigen::VectorXd col(w);
        for (int r = 0; r < w; ++r) col(r) = gamma.at(r, j);
        Eigen::VectorXd s = lu.solve(col);
        s += lu.solve(col - basis * s);
        const double res =
            (basis * s - col).lpNorm<Eigen::Infinity>() / col.lpNorm<Eigen::Infinity>();
        ex.worst_residual = std::max(ex.worst_residual, res);
        ex.sigma.col(j) = s;
    }
    if (!(ex.worst_residual < 1e-9))
        throw std::runtime_error("expand_masked_columns: singular basis submatrix");
    return ex;
}

PrecodingPlan start_plan(const SchemeConfig& cfg, const ChannelDraw& ch,
                         const GeneratorMatrix* gamma) {
    if (static_cast<int>(ch.h.size()) != cfg.M || static_cast<int>(ch.g.size()) != cfg.M)
        throw std::invalid_argument("plan: channel draw size mismatch");
    SchemeShape sh = scheme_shape(cfg, gamma);
    PrecodingPlan plan;
    plan.scheme = cfg.scheme;
    plan.M = cfg.M;
    plan.N = cfg.N;
    plan.layout = sh.layout;
    plan.msg_relays = std::move(sh.msg_relays);
    plan.payload = std::move(sh.payload);
    plan.mask_units = sh.mask_units;
    plan.ch = ch;
    plan.relay_input.assign(static_cast<std::size_t>(cfg.M), LinearForm(plan.layout.total()));
    return plan;
}

void add_noise_inputs_bcj(PrecodingPlan& plan, const SchemeConfig& cfg) {
    // relay k scales noise slot j by nu_j / h_k so the slot sums align at Y1
    for (int k = 0; k < cfg.M; ++k)
        for (int j = 0; j < cfg.N; ++j)
            plan.relay_input[static_cast<std::size_t>(k)][plan.layout.noise(k * cfg.N + j)] =
                plan.nu[static_cast<std::size_t>(j)] / plan.ch.h[static_cast<std::size_t>(k)];
}

}  // namespace

PrecodingPlan plan_sbcj(const SchemeConfig& cfg, const ChannelDraw& ch, Rng& rng) {
    if (cfg.scheme != Scheme::SBCJ) throw std::invalid_argument("plan_sbcj: wrong scheme");
    const PlanCoefficients c = sample_plan_coefficients(cfg, rng);
    return make_plan(cfg, ch, nullptr, &c, rng);
}

PrecodingPlan plan_scoj(const SchemeConfig& cfg, const ChannelDraw& ch, Rng& rng) {
    if (cfg.scheme != Scheme::SCOJ) throw std::invalid_argument("plan_scoj: wrong scheme");
    return make_plan(cfg, ch, nullptr, nullptr, rng);
}

PrecodingPlan plan_sbcj_snc(const SchemeConfig& cfg, const ChannelDraw& ch,
                            const GeneratorMatrix& gamma, Rng& rng) {
    if (cfg.scheme != Scheme::SBCJ_SNC) throw std::invalid_argument("plan_sbcj_snc: wrong scheme");
    const PlanCoefficients c = sample_plan_coefficients(cfg, rng);
    return make_plan(cfg, ch, &gamma, &c, rng);
}

PrecodingPlan plan_scoj_snc(const SchemeConfig& cfg, const ChannelDraw& ch,
                            const GeneratorMatrix& gamma, Rng& rng) {
    if (cfg.scheme != Scheme::SCOJ_SNC) throw std::invalid_argument("plan_scoj_snc: wrong scheme");
    return make_plan(cfg, ch, &gamma, nullptr, rng);
}

PrecodingPlan make_plan(const SchemeConfig& cfg, const ChannelDraw& ch,
                        const GeneratorMatrix* gamma, const PlanCoefficients* frozen,
                        Rng& rng) {
    cfg.validate();
    if (is_snc(cfg.scheme) && gamma == nullptr)
        throw std::invalid_argument("make_plan: SNC schemes need a generator matrix");

    PrecodingPlan plan = start_plan(cfg, ch, gamma);
    const int M = cfg.M;
    const int N = cfg.N;
    const int W = cfg.W();
    const auto& h = ch.h;

    PlanCoefficients local;
    if (!is_coj(cfg.scheme)) {
        local = (frozen != nullptr) ? *frozen : sample_plan_coefficients(cfg, rng);
        if (static_cast<int>(local.mu.size()) != N * (M - 1) ||
            static_cast<int>(local.nu.size()) != N)
            throw std::invalid_argument("make_plan: coefficient draw size mismatch");
        plan.mu = local.mu;
        plan.nu = local.nu;
    }

    switch (cfg.scheme) {
        case Scheme::SBCJ: {
            add_noise_inputs_bcj(plan, cfg);
            for (int i = 0; i < N; ++i) {
                const int r = plan.msg_relays[static_cast<std::size_t>(i)];
                for (int j = 0; j < M - 1; ++j)
                    plan.relay_input[static_cast<std::size_t>(r)][plan.layout.msg(i * (M - 1) + j)] =
                        plan.mu_at(i, j);
            }
            break;
        }
        case Scheme::SCOJ: {
            for (int i = 0; i < N; ++i) {
                const int r = plan.msg_relays[static_cast<std::size_t>(i)];
                const int rs = plan.msg_relays[static_cast<std::size_t>((i + 1) % N)];
                auto& x = plan.relay_input[static_cast<std::size_t>(r)];
                x[plan.layout.msg(i)] = 1.0;
                x[plan.layout.noise(i)] = 1.0;
                x[plan.layout.noise((i + 1) % N)] =
                    -h[static_cast<std::size_t>(rs)] / h[static_cast<std::size_t>(r)];
            }
            break;
        }
        case Scheme::SBCJ_SNC: {
            add_noise_inputs_bcj(plan, cfg);
            const int nF = W * (M - 1);
            const Expansions ex = expand_masked_columns(*gamma, N * (M - 1));
            plan.sigma_residual = ex.worst_residual;
            plan.rho.assign(static_cast<std::size_t>(W) * (M - 1), 0.0);
            for (int k = N; k < M; ++k) {
                for (int j = 0; j < M - 1; ++j) {
                    const int idx = (k - N) * (M - 1) + j;
                    double acc = 0.0;
                    for (int a = 0; a < N; ++a)
                        for (int b = 0; b < M - 1; ++b)
                            acc += h[static_cast<std::size_t>(a)] /
                                   h[static_cast<std::size_t>(k)] * plan.mu_at(a, b) *
                                   ex.sigma(idx, a * (M - 1) + b);
                    plan.rho[static_cast<std::size_t>(idx)] = -acc;
                }
            }
            for (int k = 0; k < M; ++k) {
                auto& x = plan.relay_input[static_cast<std::size_t>(k)];
                for (int j = 0; j < M - 1; ++j) {
                    const double w_kj = (k < N)
                                            ? plan.mu_at(k, j)
                                            : plan.rho[static_cast<std::size_t>((k - N) * (M - 1) + j)];
                    if (k < N) x[plan.layout.msg(k * (M - 1) + j)] = w_kj;
                    for (int m = 0; m < nF; ++m)
                        x[plan.layout.fict(m)] += w_kj * gamma->at(m, k * (M - 1) + j);
                }
            }
            break;
        }
        case Scheme::SCOJ_SNC: {
            const int nF = 2 * W;
            const Expansions ex = expand_masked_columns(*gamma, 2 * N);
            plan.sigma_residual = ex.worst_residual;
            plan.rho.assign(static_cast<std::size_t>(2) * M, 0.0);
            // The odd/even masked slots of relay k enter X_k with weights
            // +1 and -h_{[k+1]}/h_k, so the expansion coefficients of the
            // even slots flip sign in rho relative to the odd ones.
            for (int j = N; j < M; ++j) {
                for (int off = 0; off < 2; ++off) {
                    const int l = 2 * j + off;
                    const int idx = l - 2 * N;
                    double acc = 0.0;
                    for (int k = 0; k < N; ++k) {
                        acc -= h[static_cast<std::size_t>(k)] / h[static_cast<std::size_t>(j)] *
                               ex.sigma(idx, 2 * k);
                        acc += h[static_cast<std::size_t>((k + 1) % N)] /
                               h[static_cast<std::size_t>(j)] * ex.sigma(idx, 2 * k + 1);
                    }
                    plan.rho[static_cast<std::size_t>(l)] = acc;
                }
            }
            for (int k = 0; k < M; ++k) {
                auto& x = plan.relay_input[static_cast<std::size_t>(k)];
                double w_odd = 0.0;
                double w_even = 0.0;
                if (k < N) {
                    const double ratio = h[static_cast<std::size_t>((k + 1) % N)] /
                                         h[static_cast<std::size_t>(k)];
                    x[plan.layout.msg(k)] = 1.0;
                    x[plan.layout.noise(k)] = 1.0;
                    x[plan.layout.noise((k + 1) % N)] = -ratio;
                    w_odd = 1.0;
                    w_even = -ratio;
                } else {
                    w_odd = plan.rho[static_cast<std::size_t>(2 * k)];
                    w_even = plan.rho[static_cast<std::size_t>(2 * k + 1)];
                }
                for (int m = 0; m < nF; ++m)
                    x[plan.layout.fict(m)] +=
                        w_odd * gamma->at(m, 2 * k) + w_even * gamma->at(m, 2 * k + 1);
            }
            break;
        }
    }

    for (double r : plan.rho) plan.rho_max = std::max(plan.rho_max, std::fabs(r));
    return plan;
}

double amplitude_bound(const PrecodingPlan& plan, const SchemeConfig& cfg) {
    const double B = cfg.B;
    const int M = plan.M;
    const int N = plan.N;
    const auto mask = static_cast<double>(plan.mask_units);
    switch (plan.scheme) {
        case Scheme::SBCJ:
            return (M - 1 + N * B) * B;
        case Scheme::SCOJ:
            return 2.0 + B * B;
        case Scheme::SBCJ_SNC:
            return std::max((M - 1) * B * (mask + 1.0), (M - 1) * plan.rho_max * mask) +
                   N * B * B;
        case Scheme::SCOJ_SNC:
            return std::max(2.0 + mask + B * B * (1.0 + mask), 2.0 * plan.rho_max * mask);
    }
    return 0.0;
}

LinearForm receive_form(const PrecodingPlan& plan, std::span<const double> gains) {
    if (static_cast<int>(gains.size()) != plan.M)
        throw std::invalid_argument("receive_form: gain count mismatch");
    LinearForm y(plan.layout.total());
    for (int k = 0; k < plan.M; ++k)
        for (int s = 0; s < plan.layout.total(); ++s)
            y[s] += gains[static_cast<std::size_t>(k)] * plan.relay_input[static_cast<std::size_t>(k)][s];
    return y;
}

Frame encode_frame(const PrecodingPlan& plan, const SchemeConfig& cfg,
                   const ConstellationSpec& spec, Rng& rng, double noise_std) {
    const double bound = amplitude_bound(plan, cfg);
    if (spec.gamma_tilde < bound * (1.0 - 1e-9))
        throw std::runtime_error("encode_frame: spec gamma_tilde below the scheme amplitude bound");

    Frame f;
    const long long Q = spec.Q;
    f.msg.resize(static_cast<std::size_t>(plan.layout.n_msg));
    f.noise.resize(static_cast<std::size_t>(plan.layout.n_noise));
    f.fict.resize(static_cast<std::size_t>(plan.layout.n_fict));
    for (auto& v : f.msg) v = sample_coordinate(Q, rng);
    for (auto& v : f.noise) v = sample_coordinate(Q, rng);
    for (auto& v : f.fict) v = sample_coordinate(Q, rng);

    std::vector<long long> coord;
    coord.reserve(static_cast<std::size_t>(plan.layout.total()));
    coord.insert(coord.end(), f.msg.begin(), f.msg.end());
    coord.insert(coord.end(), f.noise.begin(), f.noise.end());
    coord.insert(coord.end(), f.fict.begin(), f.fict.end());

    f.payload_units.resize(static_cast<std::size_t>(plan.M));
    f.payload.resize(static_cast<std::size_t>(plan.M));
    for (int k = 0; k < plan.M; ++k) {
        for (const auto& e : plan.payload[static_cast<std::size_t>(k)]) {
            long long units = 0;
            for (int s = 0; s < e.form.size(); ++s)
                if (e.form[s] != 0.0) units += std::llround(e.form[s]) * coord[static_cast<std::size_t>(s)];
            if (std::llabs(units) > e.halfwidth_units * Q)
                throw std::runtime_error("encode_frame: payload element outside its link alphabet");
            f.payload_units[static_cast<std::size_t>(k)].push_back(units);
            f.payload[static_cast<std::size_t>(k)].push_back(spec.delta * static_cast<double>(units));
        }
    }

    const double power_cap = std::sqrt(spec.P) * (1.0 + 1e-9);
    f.x.resize(static_cast<std::size_t>(plan.M));
    for (int k = 0; k < plan.M; ++k) {
        double acc = 0.0;
        const auto& form = plan.relay_input[static_cast<std::size_t>(k)];
        for (int s = 0; s < form.size(); ++s)
            if (form[s] != 0.0) acc += form[s] * static_cast<double>(coord[static_cast<std::size_t>(s)]);
        f.x[static_cast<std::size_t>(k)] = spec.delta * acc;
        if (std::fabs(f.x[static_cast<std::size_t>(k)]) > power_cap)
            throw std::runtime_error("encode_frame: relay input exceeds the power constraint");
    }

    f.y1 = mac_output(f.x, plan.ch.h, noise_std, rng);
    f.y2 = mac_output(f.x, plan.ch.g, noise_std, rng);
    return f;
}

double dof_formula(int M, int N, double alpha) {
    if (M < 1 || N < 1 || N > M) throw std::invalid_argument("dof_formula: need 1 <= N <= M");
    if (alpha < 0.0) throw std::invalid_argument("dof_formula: need alpha >= 0");
    if (N == 1) return std::min(alpha, static_cast<double>(M - 1) / M);
    return std::min({N * alpha, (N * alpha + M - 1) / (M + 1), 1.0});
}

std::vector<std::vector<long long>> payload_alphabet_sizes(const PrecodingPlan& plan,
                                                           long long Q) {
    std::vector<std::vector<long long>> sizes(static_cast<std::size_t>(plan.M));
    for (int k = 0; k < plan.M; ++k)
        for (const auto& e : plan.payload[static_cast<std::size_t>(k)])
            sizes[static_cast<std::size_t>(k)].push_back(2 * e.halfwidth_units * Q + 1);
    return sizes;
}

double required_link_dof(const std::vector<std::vector<long long>>& alphabet_sizes,
                         double P) {
    if (P <= 1.0) throw std::invalid_argument("required_link_dof: need P > 1");
    double worst = 0.0;
    for (const auto& relay : alphabet_sizes) {
        double bits = 0.0;
        for (long long card : relay) bits += std::log2(static_cast<double>(card));
        worst = std::max(worst, bits);
    }
    return worst / (0.5 * std::log2(P));
}

}  // namespace sdof
