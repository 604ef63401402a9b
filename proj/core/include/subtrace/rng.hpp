#pragma once

#include <cstdint>
#include <utility>

#include "subtrace/numkit.hpp"

namespace subtrace {

/// Philox4x32-10 counter-based generator. Output is a pure function of
/// (seed, stream, counter), so independent streams never collide and a
/// stream can be replayed from its key alone. Draw order is fixed:
/// each 128-bit block yields two 64-bit words.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    std::uint64_t next_u64();

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform();

    /// Uniform on (0, 1]; safe under log().
    double uniform_pos();

    /// Circularly-symmetric complex Gaussian with E|z|^2 = variance
    /// (real and imaginary parts each carry variance/2).
    cplx cgaussian(double variance);

    CVector cgaussian_vector(std::size_t n, double variance);
    CMatrix cgaussian_matrix(std::size_t rows, std::size_t cols, double variance);

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::uint64_t out_[2] = {0, 0};
    int avail_ = 0;
};

}  // namespace subtrace
