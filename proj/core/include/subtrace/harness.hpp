#pragma once

#include <filesystem>
#include <vector>

#include "subtrace/metrics.hpp"

namespace subtrace {

/// One Monte-Carlo experiment: scenario, tracker, trial count and the spark
/// detector settings.
struct ExperimentSpec {
    ScenarioConfig scenario;
    TrackerConfig tracker;
    std::size_t n_runs = 100;
    std::size_t burn_in = 1000;
    std::size_t spark_window = 500;
    double spark_threshold_db = 10.0;
    std::filesystem::path output_path;

    void validate() const;

    SparkParams spark_params() const {
        return {burn_in, spark_window, spark_threshold_db, scenario.break_step};
    }
};

/// Result of a single run. snapshot_hash fingerprints the input stream so
/// paired arms can prove they consumed bitwise-identical snapshots.
struct TrialResult {
    std::vector<MetricSample> samples;
    std::uint64_t snapshot_hash = 0;
    std::size_t skipped_updates = 0;
    std::size_t clamped_steps = 0;  // steps where beta_eff != beta_nominal
};

/// Paired original-vs-amended comparison on identical input streams.
struct ComparisonReport {
    AggregateSeries series_original;
    AggregateSeries series_amended;
    std::vector<SparkEvent> sparks_original;
    std::vector<SparkEvent> sparks_amended;
    double steady_state_db_original = 0.0;  // mean ep over the 1000 steps before the break
    double steady_state_db_amended = 0.0;
    std::vector<std::uint64_t> snapshot_hashes_original;
    std::vector<std::uint64_t> snapshot_hashes_amended;
    std::size_t clamped_steps_amended = 0;
    std::optional<std::size_t> break_step;
};

/// One seeded trial. The snapshot stream is a function of (scenario.seed,
/// run_index) only, never of the tracker configuration. At the break step
/// the perturbation is applied first and the recorded sample reflects the
/// perturbed, pre-update basis, so the error jump is visible in the curve.
TrialResult run_trial(const ExperimentSpec& spec, std::size_t run_index);

/// All runs of one arm, parallelized across a bounded worker pool
/// (SUBTRACE_THREADS, default: available parallelism). Output order is by
/// run index regardless of scheduling.
std::vector<TrialResult> run_trials(const ExperimentSpec& spec);

/// Runs every trial under clamp Off (original) and under `amended_policy`,
/// reusing identical per-run input streams, then aggregates and runs spark
/// detection on the per-run ep sequences.
ComparisonReport run_comparison(const ExperimentSpec& spec,
                                ClampPolicy amended_policy = ClampPolicy::Generic);

/// Mean ep_avg of the 1000 steps preceding the break (or the final 1000
/// steps when there is no break), in dB.
double steady_state_db(const AggregateSeries& series, std::optional<std::size_t> break_step);

/// CSV schema: header `step,ep_avg_db,ep_max_db,eta_avg,eta_max`, one row
/// per step, 17 significant digits, LF line endings. ep columns are dB with
/// values below 1e-300 floored to -3000.0; eta columns stay linear.
void export_csv(const AggregateSeries& series, const std::filesystem::path& path);

/// Fig.3-style SVG: four curves (avg/max x original/amended) of ep in dB
/// over steps, with legend and a break-step marker. Exactly four polyline
/// elements; y range is [min-3, max+3] dB of the plotted data.
void export_plot(const ComparisonReport& report, const std::filesystem::path& path);

/// Two-curve variant (avg/max) for a single configuration.
void export_plot(const AggregateSeries& series, std::optional<std::size_t> break_step,
                 const std::filesystem::path& path);

}  // namespace subtrace
