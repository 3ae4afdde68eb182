// Experiment orchestration: validated flat-key configuration (JSON file
// mirrored 1:1 by CLI flags), seeded parallel ensemble runs, CSV + JSON
// report emission, and the all-criteria verification driver.
#ifndef BETASPEC_EXPERIMENT_HPP
#define BETASPEC_EXPERIMENT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace betaspec {

enum class ExperimentKind {
    density,
    spacing,
    repulsion,
    lyapunov,
    transfer_growth,
    eigvec_decay,
    mean_hamiltonian,
    n2_oracle,
    ipr_scan,
    goe_crosscheck,
};

const char* experiment_name(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_name(const std::string& name);

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::density;
    std::vector<double> betas;          // per-experiment default when empty
    std::size_t size_n = 0;             // 0 = experiment default
    std::size_t realizations = 0;       // 0 = experiment default
    std::uint64_t master_seed = 1;
    double lambda = 0.0;
    std::size_t bins = 0;               // 0 = experiment default
    std::vector<std::size_t> checkpoints;
    std::size_t fit_lo = 0;
    std::size_t fit_hi = 0;
    double central_fraction = 0.5;
    double quantile_cut = 0.02;
    std::size_t threads = 0;            // 0 = hardware concurrency
    std::string output_dir = ".";

    /// Fills zero/empty fields with the experiment's defaults and
    /// validates every numeric range.  Throws ConfigError.
    void finalize();
};

/// Parses the flat-key JSON config file.  Unknown keys and malformed
/// values raise ConfigError with the offending key or byte position.
ExperimentConfig parse_config_file(const std::string& path);

/// Applies flag overrides (same key names as the JSON file) on top of a
/// parsed or default-constructed config, then finalizes it.
ExperimentConfig parse_config(const std::optional<std::string>& config_path,
                              const std::map<std::string, std::string>& flag_overrides);

struct ReportBundle {
    bool passed = false;
    std::string summary_json;             // sorted keys, UTF-8
    std::vector<std::string> files;       // paths written, summary.json last
};

/// Runs the experiment, writes `<output_dir>/<experiment>/...` CSV data
/// plus summary.json (measured values, theory targets, tolerances,
/// pass/fail flags, wall time, full config echo), and returns the bundle.
ReportBundle run_experiment(const ExperimentConfig& config);

/// Runs every acceptance experiment off one master seed, printing one
/// PASS/FAIL line per criterion.  Returns the number of failures.
int verify_all(std::uint64_t master_seed, const std::string& output_dir,
               std::size_t threads = 0);

} // namespace betaspec

#endif // BETASPEC_EXPERIMENT_HPP
