#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dnls/config.hpp"
#include "dnls/observables.hpp"

namespace dnls {

struct EnsembleConfig {
    SimulationConfig base;
    int realizations = 200;
    std::uint64_t base_seed = 1;  // realization r uses seed base_seed + r
    int jobs = 0;                 // 0 = hardware concurrency

    std::string to_json() const;
    static EnsembleConfig from_json(const std::string& text);
};

struct FailureRecord {
    int realization = 0;
    std::uint64_t seed = 0;
    double time = 0.0;
    std::string message;
};

// Ensemble averages of m2 over disorder realizations. Means are reduced in
// realization-index order, so the result is independent of worker count.
struct EnsembleResult {
    std::vector<double> times;
    std::vector<double> mean_m2;
    std::vector<double> stderr_m2;
    std::vector<double> mean_log_m2;  // NaN where any run has m2 <= 0
    int completed = 0;
    int requested = 0;
    std::vector<FailureRecord> failures;
    std::string meta_json;

    std::string to_csv() const;  // t, mean_m2, stderr_m2, mean_log_m2
};

struct EnsembleOptions {
    std::string checkpoint_path;   // written atomically when set
    int checkpoint_every = 0;      // completions between periodic saves (0 = end only)
    std::string resume_from;       // start from this checkpoint
    int stop_after = -1;           // process at most this many pending realizations
    std::function<void(int done, int total)> progress;
};

// Runs the pending realizations, excludes guard failures from the averages
// (more than 1% failures invalidates the ensemble), and reduces in index
// order. With stop_after set the returned result covers only the completed
// prefix of work; resuming from the checkpoint finishes it.
EnsembleResult run_ensemble(const EnsembleConfig& cfg, const EnsembleOptions& opts = {});

struct SweepPoint {
    int p_index = 0;
    int beta_index = 0;
    double p = 0.0;
    double beta = 0.0;
    std::uint64_t seed = 0;
    std::optional<EnsembleResult> result;
    std::string error;  // set when the point failed
};

struct SweepResult {
    std::vector<SweepPoint> points;
};

// One ensemble per (p, beta) grid point. dt re-resolves from the beta table
// at each point unless the template pins it. Per-point failures are
// recorded and the sweep continues.
SweepResult sweep(const std::vector<double>& p_values, const std::vector<double>& beta_values,
                  const EnsembleConfig& tmpl, bool dt_from_table = true,
                  const EnsembleOptions& opts = {});

}  // namespace dnls
