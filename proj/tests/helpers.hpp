#pragma once

// Shared generators and independent oracles for the test suites. The oracles
// here deliberately use the naive O(N^2) projector formulas so they stay
// independent of the library's trace-form fast paths.

#include <cstdint>

#include "subtrace/model.hpp"
#include "subtrace/numkit.hpp"
#include "subtrace/rng.hpp"

namespace subtrace::testing {

inline CMatrix random_orthonormal(std::size_t n, std::size_t l, Rng& rng) {
    return orthonormalize(rng.cgaussian_matrix(n, l, 1.0));
}

// P = W W^H, formed entrywise.
inline CMatrix explicit_projector(const CMatrix& w) {
    CMatrix p(w.rows(), w.rows());
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t j = 0; j < w.rows(); ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < w.cols(); ++k) s += w(i, k) * std::conj(w(j, k));
            p(i, j) = s;
        }
    return p;
}

// ||P_ref - P_W||_F^2 by explicit projector difference; ref is taken
// orthonormal, W is used as-is (P_W = W W^H).
inline double explicit_projection_error(const CMatrix& ref, const CMatrix& w) {
    const CMatrix diff = explicit_projector(ref) - explicit_projector(w);
    return diff.frobenius_norm_sq();
}

// Random unitary L x L matrix.
inline CMatrix random_unitary(std::size_t l, Rng& rng) {
    return orthonormalize(rng.cgaussian_matrix(l, l, 1.0));
}

}  // namespace subtrace::testing
