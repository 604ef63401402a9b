#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "subtrace/errors.hpp"

namespace subtrace {

using cplx = std::complex<double>;

/// Numeric tolerances shared across the library.
namespace tol {
inline constexpr double ortho = 1e-10;       // on eta = ||W^H W - I||_F^2
inline constexpr double span = 1e-8;         // span-equality / containment
inline constexpr double rank_rel = 1e-12;    // rank pivot, relative to largest column norm
inline constexpr double norm_floor = 1e-150; // smallest norm whose square stays normal
}  // namespace tol

/// Dense complex vector.
class CVector {
public:
    CVector() = default;
    explicit CVector(std::size_t n) : e_(n) {}
    CVector(std::initializer_list<cplx> init) : e_(init) {}

    std::size_t size() const { return e_.size(); }
    cplx& operator[](std::size_t i) { return e_[i]; }
    const cplx& operator[](std::size_t i) const { return e_[i]; }

    double norm() const;
    double squared_norm() const;
    bool is_finite() const;

    const std::vector<cplx>& entries() const { return e_; }

private:
    std::vector<cplx> e_;
};

CVector operator+(const CVector& a, const CVector& b);
CVector operator-(const CVector& a, const CVector& b);
CVector operator*(const cplx& s, const CVector& v);
CVector operator*(double s, const CVector& v);

/// Hermitian inner product a^H b (conjugate-linear in the first argument).
cplx hdot(const CVector& a, const CVector& b);

/// Dense complex matrix, row-major.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

    /// First `cols` columns of the n x n identity.
    static CMatrix identity(std::size_t n, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    CVector col(std::size_t j) const;
    void set_col(std::size_t j, const CVector& v);

    double frobenius_norm_sq() const;
    bool is_finite() const;

    const std::vector<cplx>& entries() const { return e_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> e_;
};

CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);

/// M^H v.
CVector hermitian_apply(const CMatrix& m, const CVector& v);

/// M v.
CVector apply(const CMatrix& m, const CVector& v);

/// A^H B.
CMatrix hermitian_product(const CMatrix& a, const CMatrix& b);

/// A B.
CMatrix product(const CMatrix& a, const CMatrix& b);

/// A + s * u v^H.
CMatrix add_rank_one(const CMatrix& a, const cplx& s, const CVector& u, const CVector& v);

/// Modified Gram-Schmidt with one reorthogonalization pass. Column j of the
/// result depends only on columns 0..j of the input; the implied triangular
/// factor has real positive diagonal, so the result is deterministic.
/// Throws RankError when a pivot falls below rank_rel times the largest
/// input column norm.
CMatrix orthonormalize(const CMatrix& t);

/// Squared Frobenius distance ||P_A - P_B||_F^2 between the spans of A and B
/// (each orthonormalized internally). Computed from the explicit projector
/// difference, which keeps the result meaningful down to ~1e-27 for equal
/// spans; the trace shortcut loses that to cancellation.
double span_distance(const CMatrix& a, const CMatrix& b);

/// Orthonormal basis of span(W) whose first column is y/||y|| and whose
/// remaining columns (the COM block) are orthogonal to y. Requires y to lie
/// in span(W) within tol::span; the first column is built from the projection
/// of y so that the returned span matches span(W) to machine precision.
CMatrix complete_basis(const CMatrix& w, const CVector& y);

/// Angle in [0, pi/2] between the lines spanned by a and b,
/// atan2(orthogonal component, |<b,a>|/||b||); accurate for small angles.
double angle_between(const CVector& a, const CVector& b);

}  // namespace subtrace
