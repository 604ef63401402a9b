#include "subtrace/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace subtrace {

double projection_error(const CMatrix& w, const TrueBases& truth, TrackingMode mode) {
    const CMatrix& ref = (mode == TrackingMode::Signal) ? truth.signal_basis : truth.noise_basis;
    if (ref.rows() != w.rows()) throw DimensionError("projection_error rows", ref.rows(), w.rows());

    const double l_ref = static_cast<double>(ref.cols());
    const double gram = hermitian_product(w, w).frobenius_norm_sq();     // ||P_W||_F^2
    const double cross = hermitian_product(ref, w).frobenius_norm_sq();  // tr(P_ref P_W)
    return std::max(0.0, l_ref + gram - 2.0 * cross);
}

double orthonormality_error(const CMatrix& w) {
    const CMatrix gram = hermitian_product(w, w);
    double s = 0.0;
    for (std::size_t i = 0; i < gram.rows(); ++i)
        for (std::size_t j = 0; j < gram.cols(); ++j) {
            const cplx d = gram(i, j) - (i == j ? cplx(1.0) : cplx(0.0));
            s += std::norm(d);
        }
    return s;
}

MetricSample make_sample(std::size_t step, const CMatrix& w, const TrueBases& truth,
                         TrackingMode mode, const CVector& x) {
    MetricSample s;
    s.step = step;
    s.ep = projection_error(w, truth, mode);
    s.eta = orthonormality_error(w);
    const CVector q = hermitian_apply(w, x);
    s.coord_power = q.squared_norm();
    s.resid_power = (x - apply(w, q)).squared_norm();
    return s;
}

std::vector<SparkEvent> detect_sparks(const std::vector<double>& ep, const SparkParams& params,
                                      std::size_t run_index) {
    std::vector<SparkEvent> events;
    if (params.window < 16) throw ConfigError("spark window must be at least 16");
    if (params.burn_in >= ep.size()) return events;

    const std::size_t first = std::max(params.burn_in, params.window) + 1;  // 1-based step
    std::vector<double> scratch(params.window);
    for (std::size_t k = first; k <= ep.size(); ++k) {
        if (params.break_step && k >= *params.break_step &&
            k <= *params.break_step + params.window)
            continue;
        // trailing median over steps [k-window, k-1]
        const std::size_t lo = k - params.window - 1;  // 0-based index of step k-window
        scratch.assign(ep.begin() + lo, ep.begin() + (k - 1));
        const std::size_t mid = scratch.size() / 2;
        std::nth_element(scratch.begin(), scratch.begin() + mid, scratch.end());
        double baseline = scratch[mid];
        if (scratch.size() % 2 == 0) {
            const double upper = scratch[mid];
            std::nth_element(scratch.begin(), scratch.begin() + mid - 1, scratch.begin() + mid);
            baseline = 0.5 * (scratch[mid - 1] + upper);
        }
        baseline = std::max(baseline, 1e-300);
        const double excess_db = 10.0 * std::log10(std::max(ep[k - 1], 1e-300) / baseline);
        if (excess_db >= params.threshold_db) events.push_back({run_index, k, excess_db});
    }
    return events;
}

AggregateSeries aggregate(const std::vector<std::vector<MetricSample>>& runs) {
    if (runs.empty()) throw ConfigError("aggregate: no runs");
    const std::size_t steps = runs.front().size();
    for (const auto& r : runs)
        if (r.size() != steps) throw ConfigError("aggregate: ragged run lengths");

    AggregateSeries agg;
    agg.n_runs = runs.size();
    agg.ep_avg.assign(steps, 0.0);
    agg.ep_max.assign(steps, 0.0);
    agg.eta_avg.assign(steps, 0.0);
    agg.eta_max.assign(steps, 0.0);
    for (std::size_t k = 0; k < steps; ++k) {
        double ep_sum = 0.0, ep_max = 0.0, eta_sum = 0.0, eta_max = 0.0;
        for (const auto& r : runs) {
            ep_sum += r[k].ep;
            eta_sum += r[k].eta;
            ep_max = std::max(ep_max, r[k].ep);
            eta_max = std::max(eta_max, r[k].eta);
        }
        agg.ep_avg[k] = ep_sum / static_cast<double>(runs.size());
        agg.ep_max[k] = ep_max;
        agg.eta_avg[k] = eta_sum / static_cast<double>(runs.size());
        agg.eta_max[k] = eta_max;
    }
    return agg;
}

double to_db(double linear) {
    if (linear < 1e-300) return -3000.0;
    return 10.0 * std::log10(linear);
}

}  // namespace subtrace
