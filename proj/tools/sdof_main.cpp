// Command-line front end: `simulate` runs Monte-Carlo power sweeps to CSV,
// `dof-curve` tabulates the closed-form secure-d.o.f. curve, and `verify`
// runs the property suites.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "sdof/harness.hpp"
#include "sdof/verify.hpp"

namespace {

int cmd_simulate(const std::string& scheme_name, int M, int N, double epsilon, double B,
                 const std::vector<double>& P_list, long long trials, std::uint64_t seed,
                 const std::vector<int>& known_T, bool freeze_plan, bool noiseless,
                 const std::string& out_path) {
    const auto scheme = sdof::scheme_from_name(scheme_name);
    if (!scheme) {
        std::cerr << "unknown scheme: " << scheme_name << "\n";
        return 1;
    }
    sdof::SchemeConfig cfg;
    cfg.scheme = *scheme;
    cfg.M = M;
    cfg.N = N;
    cfg.epsilon = epsilon;
    cfg.B = B;
    cfg.known_wiretapped = known_T;
    cfg.validate();

    sdof::TrialOptions opt;
    opt.freeze_plan = freeze_plan;
    opt.noiseless = noiseless;

    const auto records = sdof::sweep(cfg, P_list, trials, seed, opt);
    sdof::write_csv(out_path, records);
    std::cout << "wrote " << records.size() << " record(s) to " << out_path << "\n";
    return 0;
}

int cmd_dof_curve(int M, int N, int grid, const std::string& out_path) {
    if (grid < 2) {
        std::cerr << "alpha-grid must be at least 2\n";
        return 1;
    }
    const double alpha_sat = (N == 1) ? static_cast<double>(M - 1) / M : 2.0 / N;
    const double alpha_max = 1.25 * alpha_sat;
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open " << out_path << "\n";
        return 1;
    }
    out << "alpha,dof\n";
    for (int i = 0; i < grid; ++i) {
        const double a = alpha_max * static_cast<double>(i) / (grid - 1);
        out << sdof::format_sig(a) << ',' << sdof::format_sig(sdof::dof_formula(M, N, a))
            << '\n';
    }
    std::cout << "wrote " << grid << " grid points to " << out_path << "\n";
    return 0;
}

int cmd_verify(const std::string& suite) {
    bool ok = false;
    if (suite == "mds")
        ok = sdof::verify::suite_mds(std::cout);
    else if (suite == "cancel")
        ok = sdof::verify::suite_cancellation(std::cout);
    else if (suite == "mi")
        ok = sdof::verify::suite_mi(std::cout);
    else if (suite == "roundtrip")
        ok = sdof::verify::suite_roundtrip(std::cout);
    else {
        std::cerr << "unknown suite: " << suite << "\n";
        return 1;
    }
    std::cout << (ok ? "suite passed" : "suite FAILED") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secure-d.o.f. simulator for the two-hop diamond relay network"};
    app.require_subcommand(1);
    app.set_config("--config");

    // simulate
    std::string scheme = "sbcj";
    int M = 2;
    int N = 2;
    double epsilon = 0.2;
    double B = 2.0;
    std::vector<double> P_list;
    long long trials = 1000;
    std::uint64_t seed = 1;
    std::vector<int> known_T;
    bool freeze_plan = true;
    bool noiseless = false;
    std::string out_path = "sweep.csv";

    auto* sim = app.add_subcommand("simulate", "Monte-Carlo sweep over transmit powers");
    sim->add_option("--scheme", scheme, "sbcj | scoj | sbcj-snc | scoj-snc")->required();
    sim->add_option("--M", M, "number of relays")->required();
    sim->add_option("--N", N, "number of secure source-relay links")->required();
    sim->add_option("--epsilon", epsilon, "d.o.f. slack in the constellation scaling");
    sim->add_option("--B", B, "fading gain bound");
    sim->add_option("--P", P_list, "transmit powers (ascending)")->required()->expected(-1);
    sim->add_option("--trials", trials, "channel uses per power point");
    sim->add_option("--seed", seed, "master seed");
    sim->add_option("--known-T", known_T, "wiretapped link indices (0-based, non-SNC schemes)")
        ->delimiter(',');
    sim->add_flag("--freeze-plan,!--no-freeze-plan", freeze_plan,
                  "draw precoding coefficients once per run (default on)");
    sim->add_flag("--noiseless", noiseless, "disable channel noise");
    sim->add_option("--out", out_path, "output CSV path")->required();

    // dof-curve
    int gm = 3;
    int gn = 2;
    int grid = 100;
    std::string curve_out = "dof_curve.csv";
    auto* curve = app.add_subcommand("dof-curve", "tabulate the closed-form d_s(alpha) curve");
    curve->add_option("--M", gm, "number of relays")->required();
    curve->add_option("--N", gn, "number of secure links")->required();
    curve->add_option("--alpha-grid", grid, "number of grid points");
    curve->add_option("--out", curve_out, "output CSV path")->required();

    // verify
    std::string suite;
    auto* ver = app.add_subcommand("verify", "run a property suite");
    ver->add_option("--suite", suite, "mds | cancel | mi | roundtrip")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed())
            return cmd_simulate(scheme, M, N, epsilon, B, P_list, trials, seed, known_T,
                                freeze_plan, noiseless, out_path);
        if (curve->parsed()) return cmd_dof_curve(gm, gn, grid, curve_out);
        if (ver->parsed()) return cmd_verify(suite);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
