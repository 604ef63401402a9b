#pragma once

#include <optional>

#include "subtrace/numkit.hpp"
#include "subtrace/rng.hpp"

namespace subtrace {

enum class AlgoClass { DPM, OJA };
enum class TrackingMode { Signal, Noise };
enum class ClampPolicy { Off, Generic, ClassSpecific };

struct TrackerConfig {
    AlgoClass algo_class = AlgoClass::OJA;
    TrackingMode mode = TrackingMode::Noise;
    double beta_nominal = 0.08;
    ClampPolicy clamp_policy = ClampPolicy::Generic;

    void validate() const;
};

struct TrackerState {
    CMatrix basis;         // W(k), N x L
    std::size_t step = 0;  // k
};

/// Per-step intermediates of one update. `skipped` marks steps where the
/// basis was left untouched (degenerate input or rank failure).
struct StepRecord {
    CVector q;        // W^H x
    CVector y;        // W q
    CVector p;        // x - y
    double beta_eff = 0.0;
    CMatrix t_pre;    // T(k) before orthonormalization
    bool skipped = false;
};

TrackerState init_tracker(const TrackerConfig& cfg, std::size_t n, std::size_t l, Rng& rng);

/// Effective stepsize under the configured clamp. Empty result is the
/// skip-update signal: the norm the active rule divides by is degenerate.
/// Bounds: Generic uses 1/||x||^2; ClassSpecific uses 1/||x||^2 for
/// DPM/Noise, 1/||p||^2 for OJA/Noise, 1/||y||^2 for OJA/Signal, and no
/// bound for DPM/Signal, where any positive stepsize stays inside the cone.
std::optional<double> clamp_beta(const TrackerConfig& cfg, const CVector& x, const CVector& y,
                                 const CVector& p);

/// One streaming update: q = W^H x, y = W q, p = x - y,
/// T = W + sign * beta_eff * d * q^H (d = x for DPM, p for OJA; sign +1 for
/// signal tracking, -1 for noise tracking), then full reorthonormalization.
/// Degenerate inputs or a rank failure skip the update (basis kept, step
/// advanced, record flagged); a run is never aborted.
std::pair<TrackerState, StepRecord> update(const TrackerState& state, const TrackerConfig& cfg,
                                           const CVector& x);

/// Companion vector t = y - x (x^H y)/(x^H x); orthogonal to x.
CVector companion_t(const CVector& x, const CVector& y);

/// Closed-form rotation angle of the DPM/noise update:
/// tan(gamma) = b sin(theta) / (1 - b cos(theta)) with b = beta ||x|| ||y||
/// and theta the angle between x and y. Throws GeometryError when the
/// denominator is not positive (the update has rotated past the companion
/// boundary, i.e. the clamp was violated).
double gamma_angle(const CVector& x, const CVector& y, double beta);

/// The (h, COM) basis of the newly estimated subspace: COM is the part of
/// the old basis orthogonal to y and provably untouched by the update;
/// h = y/||y|| +- beta_eff * d * ||q||. Spans the same subspace as rec.t_pre.
CMatrix rotated_update_basis(const TrackerState& state_prev, const StepRecord& rec,
                             const TrackerConfig& cfg);

}  // namespace subtrace
