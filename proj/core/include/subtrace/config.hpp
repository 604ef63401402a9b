#pragma once

#include <filesystem>

#include "subtrace/harness.hpp"

namespace subtrace {

/// Loads an experiment from a flat `key = value` file (comma-separated
/// lists, `#` comments). Scenario keys: n_sensors, subspace_rank,
/// signal_powers, noise_variance, n_steps, seed (required); break_step,
/// break_variance, manifold (optional). Tracker/harness keys (optional,
/// defaulting to the reference protocol): algo_class, mode, beta, clamp,
/// n_runs, burn_in, spark_window, spark_threshold_db.
ExperimentSpec load_experiment(const std::filesystem::path& path);

ClampPolicy parse_clamp_policy(const std::string& name);
AlgoClass parse_algo_class(const std::string& name);
TrackingMode parse_tracking_mode(const std::string& name);

}  // namespace subtrace
