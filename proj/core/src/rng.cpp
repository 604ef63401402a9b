#include "subtrace/rng.hpp"

#include <cmath>
#include <numbers>

namespace subtrace {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

struct Block {
    std::uint32_t c[4];
};

Block philox4x32_10(std::uint32_t k0, std::uint32_t k1, Block ctr) {
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr.c[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr.c[2];
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        Block next;
        next.c[0] = hi1 ^ ctr.c[1] ^ k0;
        next.c[1] = lo1;
        next.c[2] = hi0 ^ ctr.c[3] ^ k1;
        next.c[3] = lo0;
        ctr = next;
        k0 += kPhiloxW0;
        k1 += kPhiloxW1;
    }
    return ctr;
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

void Rng::refill() {
    Block ctr;
    ctr.c[0] = static_cast<std::uint32_t>(block_);
    ctr.c[1] = static_cast<std::uint32_t>(block_ >> 32);
    ctr.c[2] = static_cast<std::uint32_t>(stream_);
    ctr.c[3] = static_cast<std::uint32_t>(stream_ >> 32);
    const Block out = philox4x32_10(static_cast<std::uint32_t>(seed_),
                                    static_cast<std::uint32_t>(seed_ >> 32), ctr);
    out_[0] = (static_cast<std::uint64_t>(out.c[1]) << 32) | out.c[0];
    out_[1] = (static_cast<std::uint64_t>(out.c[3]) << 32) | out.c[2];
    avail_ = 2;
    ++block_;
}

std::uint64_t Rng::next_u64() {
    if (avail_ == 0) refill();
    return out_[--avail_];
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

cplx Rng::cgaussian(double variance) {
    // Box-Muller in polar form: |z|^2 ~ Exp(variance), phase uniform.
    const double u1 = uniform_pos();
    const double u2 = uniform();
    const double r = std::sqrt(-variance * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

CVector Rng::cgaussian_vector(std::size_t n, double variance) {
    CVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = cgaussian(variance);
    return v;
}

CMatrix Rng::cgaussian_matrix(std::size_t rows, std::size_t cols, double variance) {
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = cgaussian(variance);
    return m;
}

}  // namespace subtrace
