#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "subtrace/numkit.hpp"
#include "subtrace/rng.hpp"

namespace subtrace {

enum class ManifoldKind { Random, Canonical };

/// Synthetic sensor-array scenario: N sensors observing L independent
/// sources with given powers in white complex Gaussian noise, plus an
/// optional mid-run basis break.
struct ScenarioConfig {
    std::size_t n_sensors = 8;
    std::size_t subspace_rank = 4;
    std::vector<double> signal_powers = {10.0, 1.0, 0.1, 0.1};
    double noise_variance = 1e-3;
    std::size_t n_steps = 6000;
    std::optional<std::size_t> break_step = 3000;
    double break_variance = 0.1;
    std::uint64_t seed = 0;
    ManifoldKind manifold = ManifoldKind::Random;

    void validate() const;
};

/// Ground-truth frames: the array manifold, the signal basis it spans and
/// the orthonormal complement (noise basis).
struct TrueBases {
    CMatrix manifold;     // N x L, orthonormal columns a_i
    CMatrix signal_basis; // V, N x L
    CMatrix noise_basis;  // N x (N-L), spans V-perp
};

TrueBases generate_true_bases(const ScenarioConfig& cfg, Rng& rng);

/// One observation x = sum_i a_i s_i + n with s_i ~ CN(0, power_i) and
/// n entries ~ CN(0, noise_variance).
CVector snapshot(const TrueBases& bases, const ScenarioConfig& cfg, Rng& rng);

/// W + E with E entries ~ CN(0, break_variance). Deliberately not
/// re-orthonormalized: the break is meant to destroy orthonormality.
CMatrix perturb_basis(const CMatrix& w, double break_variance, Rng& rng);

}  // namespace subtrace
