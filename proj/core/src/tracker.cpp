#include "subtrace/tracker.hpp"

#include <cmath>
#include <utility>

namespace subtrace {

void TrackerConfig::validate() const {
    if (!(beta_nominal > 0.0) || !std::isfinite(beta_nominal))
        throw ConfigError("beta_nominal must be positive");
}

TrackerState init_tracker(const TrackerConfig& cfg, std::size_t n, std::size_t l, Rng& rng) {
    cfg.validate();
    if (l > n) throw DimensionError("init_tracker: l must not exceed n", n, l);
    TrackerState s;
    s.basis = orthonormalize(rng.cgaussian_matrix(n, l, 1.0));
    s.step = 0;
    return s;
}

std::optional<double> clamp_beta(const TrackerConfig& cfg, const CVector& x, const CVector& y,
                                 const CVector& p) {
    if (x.norm() < tol::norm_floor) return std::nullopt;
    const double beta = cfg.beta_nominal;

    switch (cfg.clamp_policy) {
        case ClampPolicy::Off:
            return beta;
        case ClampPolicy::Generic:
            return std::min(beta, 1.0 / x.squared_norm());
        case ClampPolicy::ClassSpecific:
            if (cfg.algo_class == AlgoClass::DPM) {
                if (cfg.mode == TrackingMode::Signal) return beta;  // no bound needed
                return std::min(beta, 1.0 / x.squared_norm());
            }
            if (cfg.mode == TrackingMode::Noise) {
                if (p.norm() < tol::norm_floor) return std::nullopt;
                return std::min(beta, 1.0 / p.squared_norm());
            }
            if (y.norm() < tol::norm_floor) return std::nullopt;
            return std::min(beta, 1.0 / y.squared_norm());
    }
    return beta;
}

std::pair<TrackerState, StepRecord> update(const TrackerState& state, const TrackerConfig& cfg,
                                           const CVector& x) {
    const CMatrix& w = state.basis;
    if (x.size() != w.rows()) throw DimensionError("update: snapshot length", w.rows(), x.size());
    if (!x.is_finite()) throw Error("update: non-finite snapshot");

    StepRecord rec;
    rec.q = hermitian_apply(w, x);
    rec.y = apply(w, rec.q);
    rec.p = x - rec.y;

    TrackerState next;
    next.step = state.step + 1;

    const std::optional<double> beta = clamp_beta(cfg, x, rec.y, rec.p);
    if (!beta) {
        rec.skipped = true;
        rec.t_pre = w;
        next.basis = w;
        return {std::move(next), std::move(rec)};
    }
    rec.beta_eff = *beta;

    const CVector& d = (cfg.algo_class == AlgoClass::DPM) ? x : rec.p;
    const double sign = (cfg.mode == TrackingMode::Signal) ? 1.0 : -1.0;
    rec.t_pre = add_rank_one(w, sign * rec.beta_eff, d, rec.q);

    try {
        next.basis = orthonormalize(rec.t_pre);
    } catch (const RankError&) {
        rec.skipped = true;
        next.basis = w;
    }
    return {std::move(next), std::move(rec)};
}

CVector companion_t(const CVector& x, const CVector& y) {
    const double nx2 = x.squared_norm();
    if (std::sqrt(nx2) < tol::norm_floor) throw SpanError("companion_t: degenerate x");
    return y - (hdot(x, y) / nx2) * x;
}

double gamma_angle(const CVector& x, const CVector& y, double beta) {
    const double nx = x.norm();
    const double ny = y.norm();
    if (nx < tol::norm_floor || ny < tol::norm_floor)
        throw SpanError("gamma_angle: degenerate vector");
    const double theta = angle_between(x, y);
    const double b = beta * nx * ny;
    const double denom = 1.0 - b * std::cos(theta);
    if (denom <= 0.0)
        throw GeometryError("gamma_angle: update rotated past the companion vector (denominator " +
                            std::to_string(denom) + ")");
    return std::atan(b * std::sin(theta) / denom);
}

CMatrix rotated_update_basis(const TrackerState& state_prev, const StepRecord& rec,
                             const TrackerConfig& cfg) {
    const CMatrix& w = state_prev.basis;
    if (rec.y.norm() < tol::norm_floor) throw SpanError("rotated_update_basis: degenerate y");

    CMatrix basis = complete_basis(w, rec.y);
    const CVector x = rec.y + rec.p;
    const CVector& d = (cfg.algo_class == AlgoClass::DPM) ? x : rec.p;
    const double sign = (cfg.mode == TrackingMode::Signal) ? 1.0 : -1.0;
    const double nq = rec.q.norm();

    CVector h = basis.col(0);
    const double scale = sign * rec.beta_eff * nq;
    for (std::size_t i = 0; i < h.size(); ++i) h[i] += scale * d[i];
    basis.set_col(0, h);
    return basis;
}

}  // namespace subtrace
