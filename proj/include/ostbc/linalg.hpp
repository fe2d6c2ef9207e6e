#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "ostbc/errors.hpp"

namespace ostbc {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;
using RVec = std::vector<double>;

inline double sq(double x) { return x * x; }

inline double norm2(const RVec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

inline double norm2(const CVec& v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return s;
}

inline double dist2(const RVec& a, const RVec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += sq(a[i] - b[i]);
    return s;
}

inline double dist2(const CVec& a, const CVec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return s;
}

/// Real embedding of a complex vector: (re z1, im z1, re z2, im z2, ...).
inline RVec embed_real(const CVec& z) {
    RVec out;
    out.reserve(2 * z.size());
    for (const cplx& c : z) {
        out.push_back(c.real());
        out.push_back(c.imag());
    }
    return out;
}

/// Inverse of embed_real. Requires even length.
inline CVec embed_complex(const RVec& x) {
    if (x.size() % 2 != 0)
        throw ValidationError("embed_complex: odd-length real vector");
    CVec out;
    out.reserve(x.size() / 2);
    for (std::size_t i = 0; i < x.size(); i += 2)
        out.emplace_back(x[i], x[i + 1]);
    return out;
}

/// Dense real matrix, row-major. Small sizes only (codes live in <= 8-D).
struct RMat {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    RMat() = default;
    RMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static RMat identity(std::size_t n) {
        RMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    RVec apply(const RVec& x) const {
        RVec y(rows, 0.0);
        for (std::size_t i = 0; i < rows; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < cols; ++j) s += a[i * cols + j] * x[j];
            y[i] = s;
        }
        return y;
    }
};

/// Max |(A^T A - I)_{ij}|: deviation of A from orthogonality.
inline double orthogonality_deviation(const RMat& m) {
    if (m.rows != m.cols) return 1.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < m.cols; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < m.rows; ++k) s += m(k, i) * m(k, j);
            if (i == j) s -= 1.0;
            worst = std::max(worst, std::abs(s));
        }
    }
    return worst;
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
/// Adequate for the tiny Gram matrices that arise here (n <= 16 or so).
inline std::vector<double> symmetric_eigenvalues(RMat m) {
    const std::size_t n = m.rows;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += sq(m(p, q));
        if (off < 1e-30) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(m(p, q)) < 1e-300) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = m(i, i);
    return ev;
}

/// Numerical rank of a set of vectors: number of singular values above
/// rel_tol times the largest one. Singular values come from the Gram matrix.
inline std::size_t numerical_rank(const std::vector<RVec>& vectors,
                                  double rel_tol = 1e-8) {
    if (vectors.empty()) return 0;
    const std::size_t n = vectors.front().size();
    RMat gram(n, n);
    for (const RVec& v : vectors)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) gram(i, j) += v[i] * v[j];
    std::vector<double> ev = symmetric_eigenvalues(gram);
    double max_sigma2 = 0.0;
    for (double e : ev) max_sigma2 = std::max(max_sigma2, e);
    if (max_sigma2 <= 0.0) return 0;
    const double thresh = sq(rel_tol) * max_sigma2;  // sigma > tol*sigma_max
    std::size_t rank = 0;
    for (double e : ev)
        if (e > thresh) ++rank;
    return rank;
}

} // namespace ostbc
