#include "subtrace/numkit.hpp"

#include <algorithm>
#include <cmath>

namespace subtrace {

namespace {

void require_same_size(const char* context, std::size_t expected, std::size_t actual) {
    if (expected != actual) throw DimensionError(context, expected, actual);
}

}  // namespace

double CVector::squared_norm() const {
    double s = 0.0;
    for (const cplx& z : e_) s += std::norm(z);
    return s;
}

double CVector::norm() const { return std::sqrt(squared_norm()); }

bool CVector::is_finite() const {
    for (const cplx& z : e_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

CVector operator+(const CVector& a, const CVector& b) {
    require_same_size("vector add", a.size(), b.size());
    CVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

CVector operator-(const CVector& a, const CVector& b) {
    require_same_size("vector subtract", a.size(), b.size());
    CVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

CVector operator*(const cplx& s, const CVector& v) {
    CVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
    return r;
}

CVector operator*(double s, const CVector& v) { return cplx(s, 0.0) * v; }

cplx hdot(const CVector& a, const CVector& b) {
    require_same_size("hdot", a.size(), b.size());
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

CMatrix CMatrix::identity(std::size_t n, std::size_t cols) {
    CMatrix m(n, cols);
    for (std::size_t j = 0; j < std::min(n, cols); ++j) m(j, j) = 1.0;
    return m;
}

CVector CMatrix::col(std::size_t j) const {
    CVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = e_[i * cols_ + j];
    return v;
}

void CMatrix::set_col(std::size_t j, const CVector& v) {
    require_same_size("set_col", rows_, v.size());
    for (std::size_t i = 0; i < rows_; ++i) e_[i * cols_ + j] = v[i];
}

double CMatrix::frobenius_norm_sq() const {
    double s = 0.0;
    for (const cplx& z : e_) s += std::norm(z);
    return s;
}

bool CMatrix::is_finite() const {
    for (const cplx& z : e_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    require_same_size("matrix add rows", a.rows(), b.rows());
    require_same_size("matrix add cols", a.cols(), b.cols());
    CMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    require_same_size("matrix subtract rows", a.rows(), b.rows());
    require_same_size("matrix subtract cols", a.cols(), b.cols());
    CMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

CVector hermitian_apply(const CMatrix& m, const CVector& v) {
    require_same_size("hermitian_apply", m.rows(), v.size());
    CVector r(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) s += std::conj(m(i, j)) * v[i];
        r[j] = s;
    }
    return r;
}

CVector apply(const CMatrix& m, const CVector& v) {
    require_same_size("apply", m.cols(), v.size());
    CVector r(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

CMatrix hermitian_product(const CMatrix& a, const CMatrix& b) {
    require_same_size("hermitian_product", a.rows(), b.rows());
    CMatrix r(a.cols(), b.cols());
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < a.rows(); ++k) s += std::conj(a(k, i)) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

CMatrix product(const CMatrix& a, const CMatrix& b) {
    require_same_size("product", a.cols(), b.rows());
    CMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

CMatrix add_rank_one(const CMatrix& a, const cplx& s, const CVector& u, const CVector& v) {
    require_same_size("add_rank_one rows", a.rows(), u.size());
    require_same_size("add_rank_one cols", a.cols(), v.size());
    CMatrix r = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) += s * u[i] * std::conj(v[j]);
    return r;
}

namespace {

// Column-major scratch for Gram-Schmidt loops.
struct ColBuffer {
    std::size_t n;
    std::vector<std::vector<cplx>> cols;

    explicit ColBuffer(const CMatrix& m) : n(m.rows()), cols(m.cols()) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            cols[j].resize(n);
            for (std::size_t i = 0; i < n; ++i) cols[j][i] = m(i, j);
        }
    }

    static double norm(const std::vector<cplx>& v) {
        double s = 0.0;
        for (const cplx& z : v) s += std::norm(z);
        return std::sqrt(s);
    }

    // v -= (u^H v) u
    static void project_out(const std::vector<cplx>& u, std::vector<cplx>& v) {
        cplx c = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) c += std::conj(u[i]) * v[i];
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
    }
};

}  // namespace

CMatrix orthonormalize(const CMatrix& t) {
    const std::size_t n = t.rows();
    const std::size_t l = t.cols();
    if (l < 1) throw Error("orthonormalize: matrix has no columns");
    if (n < l) throw DimensionError("orthonormalize: rows must be at least cols", l, n);
    if (!t.is_finite()) throw Error("orthonormalize: non-finite input");

    ColBuffer buf(t);
    double max_colnorm = 0.0;
    for (std::size_t j = 0; j < l; ++j)
        max_colnorm = std::max(max_colnorm, ColBuffer::norm(buf.cols[j]));
    const double pivot_tol = tol::rank_rel * max_colnorm;

    for (std::size_t j = 0; j < l; ++j) {
        auto& v = buf.cols[j];
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t i = 0; i < j; ++i) ColBuffer::project_out(buf.cols[i], v);
        const double nv = ColBuffer::norm(v);
        if (nv <= pivot_tol) throw RankError(j, nv);
        for (cplx& z : v) z /= nv;
    }

    CMatrix w(n, l);
    for (std::size_t j = 0; j < l; ++j)
        for (std::size_t i = 0; i < n; ++i) w(i, j) = buf.cols[j][i];
    return w;
}

double span_distance(const CMatrix& a, const CMatrix& b) {
    require_same_size("span_distance rows", a.rows(), b.rows());
    require_same_size("span_distance cols", a.cols(), b.cols());
    const CMatrix qa = orthonormalize(a);
    const CMatrix qb = orthonormalize(b);

    const std::size_t n = a.rows();
    const std::size_t l = a.cols();
    double dist = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx d = 0.0;
            for (std::size_t k = 0; k < l; ++k)
                d += qa(i, k) * std::conj(qa(j, k)) - qb(i, k) * std::conj(qb(j, k));
            dist += std::norm(d);
        }
    return dist;
}

CMatrix complete_basis(const CMatrix& w, const CVector& y) {
    require_same_size("complete_basis", w.rows(), y.size());
    const std::size_t n = w.rows();
    const std::size_t l = w.cols();

    const double ny = y.norm();
    if (ny < tol::norm_floor) throw SpanError("complete_basis: y numerically zero");

    const CVector y_in = apply(w, hermitian_apply(w, y));
    const double resid = (y - y_in).norm();
    if (resid > tol::span * ny)
        throw SpanError("complete_basis: y outside span(W), residual " + std::to_string(resid / ny));

    CMatrix result(n, l);
    std::vector<std::vector<cplx>> accepted;
    {
        std::vector<cplx> u0(n);
        const double n_in = y_in.norm();
        for (std::size_t i = 0; i < n; ++i) u0[i] = y_in[i] / n_in;
        accepted.push_back(std::move(u0));
    }

    // Pivoted Gram-Schmidt over W's columns: at each slot take the candidate
    // with the largest residual, so the one column made redundant by y is the
    // one left behind (at ~eps, not at the drop threshold).
    ColBuffer cand(w);
    std::vector<bool> used(l, false);
    for (std::size_t j = 0; j < l; ++j) ColBuffer::project_out(accepted[0], cand.cols[j]);

    while (accepted.size() < l) {
        std::size_t best = l;
        double best_norm = -1.0;
        for (std::size_t j = 0; j < l; ++j) {
            if (used[j]) continue;
            const double nj = ColBuffer::norm(cand.cols[j]);
            if (nj > best_norm) {
                best_norm = nj;
                best = j;
            }
        }
        if (best == l || best_norm < tol::rank_rel)
            throw RankError(best == l ? l : best, best_norm);
        used[best] = true;
        auto v = cand.cols[best];
        for (const auto& u : accepted) ColBuffer::project_out(u, v);  // reorth pass
        const double nv = ColBuffer::norm(v);
        for (cplx& z : v) z /= nv;
        for (std::size_t j = 0; j < l; ++j)
            if (!used[j]) ColBuffer::project_out(v, cand.cols[j]);
        accepted.push_back(std::move(v));
    }

    for (std::size_t j = 0; j < l; ++j)
        for (std::size_t i = 0; i < n; ++i) result(i, j) = accepted[j][i];
    return result;
}

double angle_between(const CVector& a, const CVector& b) {
    require_same_size("angle_between", a.size(), b.size());
    const double nb2 = b.squared_norm();
    const double nb = std::sqrt(nb2);
    if (nb < tol::norm_floor || a.norm() < tol::norm_floor)
        throw SpanError("angle_between: degenerate vector");
    const cplx c = hdot(b, a);
    const CVector a_perp = a - (c / nb2) * b;
    return std::atan2(a_perp.norm(), std::abs(c) / nb);
}

}  // namespace subtrace
