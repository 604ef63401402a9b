#include "subtrace/model.hpp"

#include <cmath>
#include <string>

namespace subtrace {

void ScenarioConfig::validate() const {
    if (n_sensors < 1) throw ConfigError("n_sensors must be positive");
    if (subspace_rank < 1) throw ConfigError("subspace_rank must be positive");
    if (subspace_rank > n_sensors)
        throw ConfigError("subspace_rank " + std::to_string(subspace_rank) +
                          " exceeds n_sensors " + std::to_string(n_sensors));
    if (signal_powers.size() != subspace_rank)
        throw ConfigError("signal_powers must list exactly subspace_rank values, got " +
                          std::to_string(signal_powers.size()));
    for (double p : signal_powers)
        if (!(p > 0.0) || !std::isfinite(p)) throw ConfigError("signal_powers must all be positive");
    if (!(noise_variance > 0.0) || !std::isfinite(noise_variance))
        throw ConfigError("noise_variance must be positive");
    if (n_steps < 1) throw ConfigError("n_steps must be positive");
    if (break_step && (*break_step < 1 || *break_step > n_steps))
        throw ConfigError("break_step must lie in [1, n_steps]");
    if (break_variance < 0.0 || !std::isfinite(break_variance))
        throw ConfigError("break_variance must be nonnegative");
}

TrueBases generate_true_bases(const ScenarioConfig& cfg, Rng& rng) {
    cfg.validate();
    const std::size_t n = cfg.n_sensors;
    const std::size_t l = cfg.subspace_rank;

    TrueBases out;
    if (cfg.manifold == ManifoldKind::Canonical) {
        out.manifold = CMatrix::identity(n, l);
        out.signal_basis = out.manifold;
        CMatrix comp(n, n - l);
        for (std::size_t j = l; j < n; ++j) comp(j, j - l) = 1.0;
        out.noise_basis = comp;
        return out;
    }

    out.manifold = orthonormalize(rng.cgaussian_matrix(n, l, 1.0));
    out.signal_basis = out.manifold;

    if (n > l) {
        // Complete to a unitary N x N frame: Gram-Schmidt fresh Gaussian
        // columns against the manifold, keeping the trailing N-L.
        CMatrix frame(n, n);
        for (std::size_t j = 0; j < l; ++j)
            for (std::size_t i = 0; i < n; ++i) frame(i, j) = out.manifold(i, j);
        const CMatrix fill = rng.cgaussian_matrix(n, n - l, 1.0);
        for (std::size_t j = l; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) frame(i, j) = fill(i, j - l);
        const CMatrix q = orthonormalize(frame);
        CMatrix comp(n, n - l);
        for (std::size_t j = l; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) comp(i, j - l) = q(i, j);
        out.noise_basis = comp;
    } else {
        out.noise_basis = CMatrix(n, 0);
    }
    return out;
}

CVector snapshot(const TrueBases& bases, const ScenarioConfig& cfg, Rng& rng) {
    const std::size_t n = cfg.n_sensors;
    const std::size_t l = cfg.subspace_rank;
    if (bases.manifold.rows() != n || bases.manifold.cols() != l)
        throw DimensionError("snapshot: manifold rows", n, bases.manifold.rows());

    CVector x(n);
    for (std::size_t i = 0; i < l; ++i) {
        const cplx s = rng.cgaussian(cfg.signal_powers[i]);
        for (std::size_t r = 0; r < n; ++r) x[r] += bases.manifold(r, i) * s;
    }
    for (std::size_t r = 0; r < n; ++r) x[r] += rng.cgaussian(cfg.noise_variance);
    return x;
}

CMatrix perturb_basis(const CMatrix& w, double break_variance, Rng& rng) {
    if (break_variance < 0.0) throw ConfigError("break_variance must be nonnegative");
    if (break_variance == 0.0) return w;
    CMatrix out = w;
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j) out(i, j) += rng.cgaussian(break_variance);
    return out;
}

}  // namespace subtrace
