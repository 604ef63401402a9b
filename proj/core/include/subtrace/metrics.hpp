#pragma once

#include <optional>
#include <vector>

#include "subtrace/model.hpp"
#include "subtrace/tracker.hpp"

namespace subtrace {

/// Per-step evaluation quantities.
struct MetricSample {
    std::size_t step = 0;      // k, 1-based
    double ep = 0.0;           // projection error power
    double eta = 0.0;          // orthonormality error
    double coord_power = 0.0;  // ||W^H x||^2
    double resid_power = 0.0;  // ||x - P_W x||^2
};

/// Per-step mean and max across Monte-Carlo runs, linear domain.
struct AggregateSeries {
    std::vector<double> ep_avg;
    std::vector<double> ep_max;
    std::vector<double> eta_avg;
    std::vector<double> eta_max;
    std::size_t n_runs = 0;

    std::size_t size() const { return ep_avg.size(); }
    bool operator==(const AggregateSeries&) const = default;
};

/// A transient excess of projection error power over its trailing baseline.
struct SparkEvent {
    std::size_t run_index = 0;
    std::size_t step = 0;       // 1-based
    double magnitude_db = 0.0;  // excess over trailing-median baseline

    bool operator==(const SparkEvent&) const = default;
};

struct SparkParams {
    std::size_t burn_in = 1000;
    std::size_t window = 500;
    double threshold_db = 10.0;
    std::optional<std::size_t> break_step;  // [break, break+window] exempt
};

/// ||P_ref - P_W||_F^2 where P_ref projects onto the signal subspace
/// (Signal mode) or its complement (Noise mode). Trace form
/// L_ref + ||W^H W||_F^2 - 2 ||ref^H W||_F^2, exact for non-orthonormal W
/// since P_W = W W^H by definition.
double projection_error(const CMatrix& w, const TrueBases& truth, TrackingMode mode);

/// eta = ||W^H W - I_L||_F^2.
double orthonormality_error(const CMatrix& w);

/// Full per-step sample for a (possibly perturbed) basis and snapshot.
MetricSample make_sample(std::size_t step, const CMatrix& w, const TrueBases& truth,
                         TrackingMode mode, const CVector& x);

/// Steps whose ep exceeds the trailing-median baseline by threshold_db.
/// Baseline at step k is the median of ep over [k-window, k-1]; steps at or
/// before max(burn_in, window) and inside the break exemption are not tested.
std::vector<SparkEvent> detect_sparks(const std::vector<double>& ep, const SparkParams& params,
                                      std::size_t run_index);

/// Pointwise mean and max over runs. All runs must have equal length.
AggregateSeries aggregate(const std::vector<std::vector<MetricSample>>& runs);

/// 10*log10(v) with values below 1e-300 floored to -3000 dB.
double to_db(double linear);

}  // namespace subtrace
