// betaspec CLI: seeded ensemble experiments with CSV + JSON reports.
//
//   betaspec run <experiment> [--config file.json] [--beta ...] [--n ...]
//                [--realizations ...] [--seed ...] [--out dir] ...
//   betaspec verify-all --seed S --out dir
//
// Exit codes: 0 pass, 1 target miss, 2 usage/config error, 3 numeric failure.
#include <cstdio>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "betaspec/errors.hpp"
#include "betaspec/experiment.hpp"

namespace {

struct RunFlags {
    std::string experiment;
    std::optional<std::string> config_path;
    std::map<std::string, std::string> overrides;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tridiagonal beta-ensemble spectral experiments"};
    app.require_subcommand(1);

    RunFlags flags;
    std::string cfg_file;
    std::vector<double> betas;
    std::vector<std::uint64_t> checkpoints;
    std::uint64_t size_n = 0, realizations = 0, seed = 0, bins = 0;
    std::uint64_t fit_lo = 0, fit_hi = 0, threads = 0;
    double lambda = 0.0, central_fraction = 0.0, quantile_cut = 0.0;
    std::string out_dir;

    auto* run = app.add_subcommand("run", "run one experiment");
    run->add_option("experiment", flags.experiment,
                    "density|spacing|repulsion|lyapunov|transfer-growth|eigvec-decay|"
                    "mean-hamiltonian|n2-oracle|ipr-scan|goe-crosscheck")
        ->required();
    run->add_option("--config", cfg_file, "JSON config file (flags override it)");
    auto* opt_beta = run->add_option("--beta", betas, "beta value(s)");
    auto* opt_n = run->add_option("--n", size_n, "operator size / chain length");
    auto* opt_r = run->add_option("--realizations", realizations, "ensemble size");
    auto* opt_seed = run->add_option("--seed", seed, "master seed");
    auto* opt_lambda = run->add_option("--lambda", lambda, "spectral parameter");
    auto* opt_bins = run->add_option("--bins", bins, "histogram bins");
    auto* opt_cp = run->add_option("--checkpoints", checkpoints, "transfer checkpoints");
    auto* opt_flo = run->add_option("--fit-lo", fit_lo, "fit window lower edge");
    auto* opt_fhi = run->add_option("--fit-hi", fit_hi, "fit window upper edge");
    auto* opt_cf = run->add_option("--central-fraction", central_fraction,
                                   "central band fraction for spacings");
    auto* opt_qc = run->add_option("--quantile-cut", quantile_cut,
                                   "small-spacing quantile for the repulsion fit");
    auto* opt_th = run->add_option("--threads", threads, "worker threads (0 = auto)");
    auto* opt_out = run->add_option("--out", out_dir, "output directory");

    std::uint64_t va_seed = 1;
    std::string va_out = "verify-out";
    std::uint64_t va_threads = 0;
    auto* verify = app.add_subcommand("verify-all", "run the full acceptance suite");
    verify->add_option("--seed", va_seed, "master seed");
    verify->add_option("--out", va_out, "output directory");
    verify->add_option("--threads", va_threads, "worker threads (0 = auto)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            flags.overrides["experiment"] = flags.experiment;
            if (!cfg_file.empty()) flags.config_path = cfg_file;
            auto join = [](const auto& xs) {
                std::string s;
                for (const auto& x : xs) {
                    if (!s.empty()) s += ',';
                    s += std::to_string(x);
                }
                return s;
            };
            if (*opt_beta) flags.overrides["beta"] = join(betas);
            if (*opt_n) flags.overrides["n"] = std::to_string(size_n);
            if (*opt_r) flags.overrides["realizations"] = std::to_string(realizations);
            if (*opt_seed) flags.overrides["seed"] = std::to_string(seed);
            if (*opt_lambda) flags.overrides["lambda"] = std::to_string(lambda);
            if (*opt_bins) flags.overrides["bins"] = std::to_string(bins);
            if (*opt_cp) flags.overrides["checkpoints"] = join(checkpoints);
            if (*opt_flo) flags.overrides["fit_lo"] = std::to_string(fit_lo);
            if (*opt_fhi) flags.overrides["fit_hi"] = std::to_string(fit_hi);
            if (*opt_cf) flags.overrides["central_fraction"] = std::to_string(central_fraction);
            if (*opt_qc) flags.overrides["quantile_cut"] = std::to_string(quantile_cut);
            if (*opt_th) flags.overrides["threads"] = std::to_string(threads);
            if (*opt_out) flags.overrides["out"] = out_dir;

            const auto cfg = betaspec::parse_config(flags.config_path, flags.overrides);
            const auto bundle = betaspec::run_experiment(cfg);
            std::printf("%s %s\n", betaspec::experiment_name(cfg.experiment),
                        bundle.passed ? "PASS" : "FAIL");
            for (const auto& f : bundle.files) std::printf("  wrote %s\n", f.c_str());
            return bundle.passed ? 0 : 1;
        }
        if (verify->parsed()) {
            const int failures = betaspec::verify_all(va_seed, va_out, va_threads);
            return failures == 0 ? 0 : 1;
        }
    } catch (const betaspec::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    }
    return 2;
}
