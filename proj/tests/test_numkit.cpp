#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "subtrace/numkit.hpp"

using namespace subtrace;
using subtrace::testing::random_orthonormal;
using subtrace::testing::random_unitary;

TEST_CASE("hermitian_apply matches the elementwise definition") {
    SUBCASE("identity leaves the vector unchanged") {
        const CMatrix id = CMatrix::identity(3, 3);
        const CVector v = {cplx(1, 0), cplx(0, 2), cplx(-1, 0)};
        const CVector r = hermitian_apply(id, v);
        for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(r[i] - v[i]) == 0.0);
    }
    SUBCASE("zero matrix maps everything to zero") {
        const CMatrix z(3, 2);
        const CVector r = hermitian_apply(z, {cplx(1, 1), cplx(2, 0), cplx(0, 3)});
        REQUIRE(r.size() == 2);
        CHECK(r[0] == cplx(0, 0));
        CHECK(r[1] == cplx(0, 0));
    }
    SUBCASE("unit column against ones gives sqrt(2)") {
        CMatrix m(2, 1);
        m(0, 0) = 1.0 / std::sqrt(2.0);
        m(1, 0) = 1.0 / std::sqrt(2.0);
        const CVector r = hermitian_apply(m, {cplx(1, 0), cplx(1, 0)});
        REQUIRE(r.size() == 1);
        CHECK(std::abs(r[0] - cplx(std::sqrt(2.0), 0)) < 1e-15);

        // independent oracle: elementwise conjugated sum
        cplx s = 0.0;
        s += std::conj(m(0, 0)) * cplx(1, 0);
        s += std::conj(m(1, 0)) * cplx(1, 0);
        CHECK(std::abs(r[0] - s) == 0.0);
    }
    SUBCASE("dimension mismatch is reported with both dims") {
        const CMatrix m(3, 2);
        CHECK_THROWS_AS(hermitian_apply(m, CVector(4)), DimensionError);
    }
}

TEST_CASE("orthonormalize") {
    SUBCASE("orthonormal input is a fixed point") {
        Rng rng(11);
        const CMatrix q = random_orthonormal(4, 2, rng);
        const CMatrix w = orthonormalize(q);
        CHECK((w - q).frobenius_norm_sq() < 1e-28);
    }
    SUBCASE("single column is normalized") {
        CMatrix t(4, 1);
        t(0, 0) = 3.0;
        t(1, 0) = 4.0;
        const CMatrix w = orthonormalize(t);
        CHECK(std::abs(w(0, 0) - cplx(0.6)) < 1e-15);
        CHECK(std::abs(w(1, 0) - cplx(0.8)) < 1e-15);
        CHECK(std::abs(w(2, 0)) == 0.0);
        CHECK(std::abs(w(3, 0)) == 0.0);
    }
    SUBCASE("duplicated column raises a rank error naming the column") {
        Rng rng(12);
        CMatrix t(4, 2);
        const CVector c = rng.cgaussian_vector(4, 1.0);
        t.set_col(0, c);
        t.set_col(1, c);
        CHECK_THROWS_WITH_AS(orthonormalize(t), doctest::Contains("column 1"), RankError);
    }
    SUBCASE("random full-rank: orthonormality and span preservation") {
        Rng rng(13);
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 15);  // 2..16
            const std::size_t l = 1 + static_cast<std::size_t>(rng.uniform() * n);
            const CMatrix t = rng.cgaussian_matrix(n, std::min(l, n), 1.0);
            const CMatrix w = orthonormalize(t);
            const CMatrix gram = hermitian_product(w, w);
            double eta = 0.0;
            for (std::size_t i = 0; i < gram.rows(); ++i)
                for (std::size_t j = 0; j < gram.cols(); ++j)
                    eta += std::norm(gram(i, j) - (i == j ? cplx(1) : cplx(0)));
            CHECK(eta <= 1e-24);
            CHECK(span_distance(w, t) <= 1e-20);
        }
    }
}

TEST_CASE("span_distance") {
    Rng rng(21);
    SUBCASE("identical spans give zero") {
        const CMatrix a = random_orthonormal(5, 2, rng);
        CHECK(span_distance(a, a) <= 1e-28);
    }
    SUBCASE("orthogonal spans give 2L") {
        // first two vs last two standard basis columns of C^5
        const CMatrix a = CMatrix::identity(5, 2);
        CMatrix b(5, 2);
        b(3, 0) = 1.0;
        b(4, 1) = 1.0;
        CHECK(span_distance(a, b) == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("rotation invariance of the span") {
        const CMatrix a = random_orthonormal(6, 3, rng);
        const CMatrix b = product(a, random_unitary(3, rng));
        CHECK(span_distance(a, b) <= tol::span);
    }
    SUBCASE("symmetry") {
        for (int trial = 0; trial < 20; ++trial) {
            const CMatrix a = rng.cgaussian_matrix(6, 2, 1.0);
            const CMatrix b = rng.cgaussian_matrix(6, 2, 1.0);
            CHECK(std::abs(span_distance(a, b) - span_distance(b, a)) <= 1e-12);
        }
    }
    SUBCASE("unitary invariance on both sides") {
        for (int trial = 0; trial < 20; ++trial) {
            const CMatrix a = rng.cgaussian_matrix(7, 3, 1.0);
            const CMatrix b = rng.cgaussian_matrix(7, 3, 1.0);
            const double base = span_distance(a, b);
            const double rotated =
                span_distance(product(a, random_unitary(3, rng)), product(b, random_unitary(3, rng)));
            CHECK(std::abs(base - rotated) <= 1e-10);
        }
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(span_distance(CMatrix(4, 2), CMatrix(5, 2)), DimensionError);
    }
}

TEST_CASE("complete_basis") {
    Rng rng(31);
    SUBCASE("L=1 returns the normalized vector") {
        CMatrix w(3, 1);
        w(0, 0) = cplx(0, 1);  // unit norm, complex phase
        const CVector y = {cplx(0, 2), cplx(0, 0), cplx(0, 0)};
        const CMatrix r = complete_basis(w, y);
        REQUIRE(r.cols() == 1);
        CHECK(std::abs(r(0, 0) - cplx(0, 1)) < 1e-12);
    }
    SUBCASE("standard basis example") {
        const CMatrix w = CMatrix::identity(4, 2);
        CVector y(4);
        y[0] = 1.0;
        const CMatrix r = complete_basis(w, y);
        CHECK(std::abs(r(0, 0) - cplx(1)) < 1e-12);
        CHECK(std::abs(r(1, 1)) == doctest::Approx(1.0).epsilon(1e-12));  // e2 up to phase
    }
    SUBCASE("y outside span is rejected") {
        const CMatrix w = CMatrix::identity(4, 2);
        CVector y(4);
        y[0] = 1.0;
        y[3] = 0.5;  // component outside span(e1, e2)
        CHECK_THROWS_AS(complete_basis(w, y), SpanError);
    }
    SUBCASE("numerically zero y is rejected") {
        const CMatrix w = CMatrix::identity(4, 2);
        CHECK_THROWS_AS(complete_basis(w, CVector(4)), SpanError);
    }
    SUBCASE("properties on random instances") {
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t n = 3 + static_cast<std::size_t>(rng.uniform() * 8);
            const std::size_t l = 1 + static_cast<std::size_t>(rng.uniform() * (n - 1));
            const CMatrix w = random_orthonormal(n, l, rng);
            const CVector coeff = rng.cgaussian_vector(l, 1.0);
            const CVector y = apply(w, coeff);
            if (y.norm() < 1e-6) continue;
            const CMatrix r = complete_basis(w, y);

            const CVector y_hat = (1.0 / y.norm()) * y;
            CHECK((r.col(0) - y_hat).norm() <= 1e-12);
            for (std::size_t j = 1; j < r.cols(); ++j)
                CHECK(std::abs(hdot(y, r.col(j))) <= 1e-10 * y.norm());
            CHECK(span_distance(r, w) <= 1e-18);

            const CMatrix gram = hermitian_product(r, r);
            double eta = 0.0;
            for (std::size_t i = 0; i < gram.rows(); ++i)
                for (std::size_t j = 0; j < gram.cols(); ++j)
                    eta += std::norm(gram(i, j) - (i == j ? cplx(1) : cplx(0)));
            CHECK(eta <= 1e-24);
        }
    }
}

TEST_CASE("angle_between") {
    SUBCASE("orthogonal vectors") {
        const CVector a = {cplx(1), cplx(0)};
        const CVector b = {cplx(0), cplx(1)};
        CHECK(angle_between(a, b) == doctest::Approx(std::acos(0.0)).epsilon(1e-14));
    }
    SUBCASE("collinear complex vectors have zero angle") {
        const CVector a = {cplx(1, 2), cplx(3, -1)};
        const CVector b = cplx(0, 2.5) * a;
        CHECK(angle_between(a, b) <= 1e-12);
    }
    SUBCASE("45 degrees, accurate for small perturbations too") {
        const CVector a = {cplx(1), cplx(1)};
        const CVector b = {cplx(1), cplx(0)};
        CHECK(angle_between(a, b) == doctest::Approx(std::atan(1.0)).epsilon(1e-14));

        const CVector c = {cplx(1), cplx(1e-9)};
        CHECK(angle_between(c, b) == doctest::Approx(1e-9).epsilon(1e-6));
    }
}
