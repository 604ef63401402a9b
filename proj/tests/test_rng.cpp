#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "subtrace/rng.hpp"

using namespace subtrace;

TEST_CASE("identical (seed, stream) pairs replay identical sequences") {
    Rng a(42, 7), b(42, 7);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different streams of one seed do not collide") {
    Rng a(42, 0), b(42, 1);
    int equal = 0;
    for (int i = 0; i < 1000; ++i) equal += (a.next_u64() == b.next_u64());
    CHECK(equal == 0);
}

TEST_CASE("uniform stays in [0,1) and uniform_pos in (0,1]") {
    Rng rng(3);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        const double v = rng.uniform_pos();
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
}

TEST_CASE("complex gaussian moments") {
    Rng rng(4);
    const double variance = 2.5;
    const int n = 200000;
    cplx mean = 0.0;
    double power = 0.0, re_var = 0.0, im_var = 0.0;
    for (int i = 0; i < n; ++i) {
        const cplx z = rng.cgaussian(variance);
        mean += z;
        power += std::norm(z);
        re_var += z.real() * z.real();
        im_var += z.imag() * z.imag();
    }
    mean /= static_cast<double>(n);
    power /= n;
    re_var /= n;
    im_var /= n;
    CHECK(std::abs(mean) < 0.02);
    CHECK(power == doctest::Approx(variance).epsilon(0.02));
    // circular symmetry: each part carries half the variance
    CHECK(re_var == doctest::Approx(variance / 2).epsilon(0.03));
    CHECK(im_var == doctest::Approx(variance / 2).epsilon(0.03));
}

TEST_CASE("matrix and vector draws are row-major ordered and reproducible") {
    Rng a(9, 1);
    const CMatrix m = a.cgaussian_matrix(3, 2, 1.0);
    Rng b(9, 1);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(m(i, j) == b.cgaussian(1.0));
}
